#include "fwl/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace fwl {

namespace {

// 8-point Gauss-Legendre on [-1,1].
constexpr double kX[8] = {-0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
                          -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
                          0.7966664774136267,  0.9602898564975363};
constexpr double kW[8] = {0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
                          0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
                          0.2223810344533745, 0.1012285362903763};

double adaptive(const Fn1& f, double a, double b, double whole, double tol, int depth) {
    double m = 0.5 * (a + b);
    double left = gl8(f, a, m);
    double right = gl8(f, m, b);
    double err = std::abs(left + right - whole);
    if (err <= tol || depth >= 32) return left + right;
    return adaptive(f, a, m, left, 0.5 * tol, depth + 1) +
           adaptive(f, m, b, right, 0.5 * tol, depth + 1);
}

}  // namespace

double gl8(const Fn1& f, double a, double b) {
    double c = 0.5 * (a + b);
    double h = 0.5 * (b - a);
    double s = 0.0;
    for (int i = 0; i < 8; ++i) s += kW[i] * f(c + h * kX[i]);
    return s * h;
}

double integrate(const Fn1& f, double a, double b, double rel_tol) {
    if (a == b) return 0.0;
    double whole = gl8(f, a, b);
    double tol = rel_tol * (std::abs(whole) + 1e-300) + 1e-300;
    return adaptive(f, a, b, whole, tol, 0);
}

double integrate_power_weight(const Fn1& f, double q, double b, double rel_tol) {
    if (q <= 0) throw std::invalid_argument("integrate_power_weight: q <= 0");
    if (b <= 0) return 0.0;
    if (q >= 1.0) {
        return integrate([&](double x) { return f(x) * std::pow(x, q - 1.0); }, 0.0, b, rel_tol);
    }
    // x = u^(1/q), dx = (1/q) u^(1/q - 1) du; f(x) x^(q-1) dx = f(u^(1/q)) du / q
    return integrate([&](double u) { return f(std::pow(u, 1.0 / q)) / q; }, 0.0,
                     std::pow(b, q), rel_tol);
}

double exp_segment(double s, double c, double q, double a, double b) {
    if (a < 0 || b < a) throw std::invalid_argument("exp_segment: need 0 <= a <= b");
    if (a == b) return 0.0;
    double amp = std::exp(-c);
    if (q == 1.0) {
        if (s == 0.0) return amp * (b - a);
        return amp * (std::exp(-s * a) - std::exp(-s * b)) / s;
    }
    if (s == 0.0) return amp * (std::pow(b, q) - std::pow(a, q)) / q;
    auto tail = [&](double lo, double hi) {
        if (lo >= hi) return 0.0;
        return integrate([&](double x) { return std::exp(-s * x) * std::pow(x, q - 1.0); }, lo,
                         hi, 1e-14) * amp;
    };
    if (a > 0) return tail(a, b);
    // Series leg keeps |s|x <= 1, so no cancellation.
    double x0 = std::min(b, 1.0 / std::abs(s));
    double z = -s * x0;
    double term = 1.0, series = 1.0 / q;
    for (int k = 1; k < 60; ++k) {
        term *= z / k;
        double add = term / (q + k);
        series += add;
        if (std::abs(add) < 1e-18 * std::abs(series)) break;
    }
    return amp * std::pow(x0, q) * series + tail(x0, b);
}

}  // namespace fwl
