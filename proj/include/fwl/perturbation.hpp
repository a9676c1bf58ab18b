#pragma once

#include <array>
#include <memory>
#include <vector>

#include "fwl/pwl.hpp"

namespace fwl {

// A perturbation datum: an evaluation rule together with its recession
// function. Built from atoms so that the recession is analytic whenever
// every atom provides one; a radius-ladder estimator is available as a
// cross-check.
class Perturbation {
public:
    enum class Kind { Support, Norm, Constant, SoftNorm, Sum };

    // Support function of the convex hull of a finite point set in the plane
    // (1D usage reads only the first coordinate).
    static Perturbation support(std::vector<std::array<double, 2>> points);
    static Perturbation support(double lo, double hi);  // interval [lo, hi]
    static Perturbation norm(double coeff);             // c * |x|
    static Perturbation constant(double value);
    static Perturbation soft_norm();                    // sqrt(1 + |x|^2)
    static Perturbation sum(std::vector<Perturbation> terms);

    double operator()(double x, double y = 0.0) const;

    // Analytic recession function rho(x); positively 1-homogeneous.
    double recession(double x, double y = 0.0) const;

    // rho estimated as zeta(R nu)/R over R in {10, 10^2, 10^3, 10^4} with a
    // convergence diagnostic; geometric extrapolation of the last two rungs.
    double recession_ladder(double x, double y = 0.0) const;

    // Certified sup |rho - zeta|.
    double recession_gap_bound() const;

    Kind kind() const { return kind_; }
    const std::vector<Perturbation>& terms() const { return terms_; }
    double value() const { return c_; }
    const std::vector<std::array<double, 2>>& points() const { return pts_; }

    // Piecewise-linear form on the line. Exact for support/norm/constant
    // atoms; soft_norm is replaced by the upper envelope of `nodes` tangent
    // lines touching on [-radius, radius].
    PwlFn pwl(double radius = 64.0, int nodes = 2001) const;
    bool pwl_exact() const;

private:
    Perturbation() = default;
    Kind kind_ = Kind::Constant;
    double c_ = 0.0;
    std::vector<std::array<double, 2>> pts_;
    std::vector<Perturbation> terms_;
};

}  // namespace fwl
