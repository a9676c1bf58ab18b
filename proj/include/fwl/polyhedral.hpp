#pragma once

#include <optional>
#include <vector>

#include "fwl/ext.hpp"

namespace fwl {

// Piecewise-linear convex function on a compact interval of the line,
// stored as the breakpoints of the lower convex envelope of its generators.
// Canonical form: breakpoints sorted by x, slopes strictly increasing.
class PolyhedralFn {
public:
    struct Generator {
        double x;
        double z;
        bool operator==(const Generator&) const = default;
    };

    // Lower convex envelope of a nonempty generator set. Idempotent.
    static PolyhedralFn canonicalize(std::vector<Generator> points);

    // Indicator of an interval (value c on [lo,hi], +inf outside).
    static PolyhedralFn indicator(double lo, double hi, double c = 0.0);

    // Dense polyhedral sampling of a convex callable on [lo,hi].
    template <class F>
    static PolyhedralFn sample(F&& f, double lo, double hi, int nodes) {
        std::vector<Generator> g;
        g.reserve(static_cast<size_t>(nodes));
        for (int i = 0; i < nodes; ++i) {
            double x = lo + (hi - lo) * i / (nodes - 1);
            g.push_back({x, f(x)});
        }
        return canonicalize(std::move(g));
    }

    double operator()(double x) const;  // +inf outside the domain

    const std::vector<Generator>& generators() const { return gen_; }
    Interval domain() const { return {gen_.front().x, gen_.back().x}; }
    bool is_point() const { return gen_.size() == 1; }

    double min_value() const;
    double max_value() const;  // max over the domain (attained at an endpoint)

    // Slope of the piece [gen_[i], gen_[i+1]].
    double slope(size_t i) const;
    size_t piece_count() const { return gen_.size() > 1 ? gen_.size() - 1 : 0; }

    // {u <= t}, empty when t < min u.
    std::optional<Interval> sublevel(double t) const;

    PolyhedralFn shifted(double c) const;       // u + c
    PolyhedralFn translated(double dx) const;   // u(. - dx)

    bool operator==(const PolyhedralFn&) const = default;

private:
    PolyhedralFn() = default;
    std::vector<Generator> gen_;
};

}  // namespace fwl
