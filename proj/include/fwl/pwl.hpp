#pragma once

#include <vector>

#include "fwl/polyhedral.hpp"

namespace fwl {

struct Line {
    double a;  // slope
    double b;  // intercept, value a*y + b
};

// Piecewise-linear function finite on all of R: kink abscissas with values,
// plus the two tail slopes. Not necessarily convex (scaling by t < 0 is allowed),
// conjugation convexifies implicitly.
class PwlFn {
public:
    static PwlFn affine(double slope, double value_at_0);
    // Upper envelope max_i(a_i y + b_i) of a nonempty line set (convex).
    static PwlFn from_lines(std::vector<Line> lines);

    double operator()(double y) const;

    PwlFn& operator+=(const PwlFn& other);
    friend PwlFn operator+(PwlFn a, const PwlFn& b) { a += b; return a; }
    PwlFn scaled(double t) const;  // pointwise t*f

    double slope_left() const { return sl_; }
    double slope_right() const { return sr_; }
    const std::vector<double>& kinks() const { return kx_; }
    const std::vector<double>& kink_values() const { return kv_; }

    // Fenchel conjugate; the result has compact domain [slope_left, slope_right].
    // Throws when slope_left > slope_right (conjugate improper).
    PolyhedralFn conjugate() const;

    bool is_convex(double tol = 1e-10) const;

private:
    PwlFn() = default;
    std::vector<double> kx_, kv_;
    double sl_ = 0.0, sr_ = 0.0;
};

// u* for polyhedral u: finite everywhere, max-of-affine over the generators.
PwlFn legendre(const PolyhedralFn& u);

// (u*)* — identity on canonical polyhedral functions.
PolyhedralFn biconjugate(const PolyhedralFn& u);

// Infimal convolution via (u* + v*)*.
PolyhedralFn inf_conv(const PolyhedralFn& u, const PolyhedralFn& v);

// Epi-multiplication: t>0 scales the epigraph, t=0 gives the indicator of the origin.
PolyhedralFn epi_scale(double t, const PolyhedralFn& u);

}  // namespace fwl
