#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

namespace fwl {

// Extended reals: +inf is a first-class value, (+inf) - (+inf) is an error.
inline constexpr double kInf = std::numeric_limits<double>::infinity();

inline bool is_finite(double v) { return std::isfinite(v); }

inline double ext_add(double a, double b) {
    if (a == kInf && b == -kInf) throw std::domain_error("inf - inf");
    if (a == -kInf && b == kInf) throw std::domain_error("inf - inf");
    return a + b;
}

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    bool contains(double x) const { return x >= lo && x <= hi; }
    double length() const { return hi - lo; }
};

}  // namespace fwl
