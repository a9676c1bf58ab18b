#pragma once

#include <functional>

namespace fwl {

using Fn1 = std::function<double(double)>;

// Composite Gauss-Legendre, order 8, on a single panel.
double gl8(const Fn1& f, double a, double b);

// Adaptive bisection on [a,b]; terminates at the given relative tolerance.
double integrate(const Fn1& f, double a, double b, double rel_tol = 1e-12);

// int_0^b f(x) x^(q-1) dx for q > 0; the substitution x = u^(1/q) removes
// the endpoint singularity before the adaptive pass.
double integrate_power_weight(const Fn1& f, double q, double b, double rel_tol = 1e-12);

// int_a^b e^(-(s x + c)) x^(q-1) dx for 0 <= a < b, q > 0.
// Near-machine precision: closed form when available, else a series leg at
// the origin plus adaptive quadrature.
double exp_segment(double s, double c, double q, double a, double b);

}  // namespace fwl
