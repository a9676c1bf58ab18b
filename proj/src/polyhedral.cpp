#include "fwl/polyhedral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fwl {

namespace {
// Relative collinearity tolerance for hull retention.
constexpr double kHullTol = 1e-12;
}

PolyhedralFn PolyhedralFn::canonicalize(std::vector<Generator> pts) {
    if (pts.empty()) throw std::invalid_argument("empty generator set");
    for (const auto& p : pts) {
        if (!is_finite(p.x) || !is_finite(p.z))
            throw std::invalid_argument("non-finite generator");
    }
    std::sort(pts.begin(), pts.end(), [](const Generator& a, const Generator& b) {
        return a.x < b.x || (a.x == b.x && a.z < b.z);
    });
    // Collapse duplicate abscissas, keeping the lowest value.
    std::vector<Generator> uniq;
    for (const auto& p : pts) {
        if (!uniq.empty() && p.x == uniq.back().x) continue;
        uniq.push_back(p);
    }
    // Lower hull, monotone chain. A middle point on or above the chord is dropped.
    std::vector<Generator> hull;
    for (const auto& p : uniq) {
        while (hull.size() >= 2) {
            const auto& a = hull[hull.size() - 2];
            const auto& b = hull[hull.size() - 1];
            double cross = (b.x - a.x) * (p.z - a.z) - (b.z - a.z) * (p.x - a.x);
            double scale = (p.x - a.x) * (std::abs(p.z - a.z) + std::abs(b.z - a.z) + 1.0);
            if (cross <= kHullTol * scale)
                hull.pop_back();
            else
                break;
        }
        hull.push_back(p);
    }
    PolyhedralFn f;
    f.gen_ = std::move(hull);
    return f;
}

PolyhedralFn PolyhedralFn::indicator(double lo, double hi, double c) {
    if (lo > hi) throw std::invalid_argument("indicator: empty interval");
    if (lo == hi) return canonicalize({{lo, c}});
    return canonicalize({{lo, c}, {hi, c}});
}

double PolyhedralFn::operator()(double x) const {
    if (x < gen_.front().x || x > gen_.back().x) return kInf;
    if (gen_.size() == 1) return gen_.front().z;
    auto it = std::lower_bound(gen_.begin(), gen_.end(), x,
                               [](const Generator& g, double v) { return g.x < v; });
    if (it == gen_.begin()) return it->z;
    const auto& b = *it;
    const auto& a = *(it - 1);
    if (b.x == a.x) return std::min(a.z, b.z);
    double t = (x - a.x) / (b.x - a.x);
    return a.z + t * (b.z - a.z);
}

double PolyhedralFn::min_value() const {
    double m = kInf;
    for (const auto& g : gen_) m = std::min(m, g.z);
    return m;
}

double PolyhedralFn::max_value() const {
    // Convexity: the max over a compact interval sits at an endpoint.
    return std::max(gen_.front().z, gen_.back().z);
}

double PolyhedralFn::slope(size_t i) const {
    const auto& a = gen_[i];
    const auto& b = gen_[i + 1];
    return (b.z - a.z) / (b.x - a.x);
}

std::optional<Interval> PolyhedralFn::sublevel(double t) const {
    if (t < min_value()) return std::nullopt;
    if (gen_.size() == 1) return Interval{gen_.front().x, gen_.front().x};
    double lo = gen_.back().x, hi = gen_.front().x;
    // Walk the pieces; convexity gives a single interval.
    for (size_t i = 0; i + 1 < gen_.size(); ++i) {
        const auto& a = gen_[i];
        const auto& b = gen_[i + 1];
        if (a.z <= t) {
            lo = std::min(lo, a.x);
            hi = std::max(hi, a.x);
        }
        if (b.z <= t) {
            lo = std::min(lo, b.x);
            hi = std::max(hi, b.x);
        }
        if ((a.z - t) * (b.z - t) < 0) {
            double x = a.x + (t - a.z) / (b.z - a.z) * (b.x - a.x);
            lo = std::min(lo, x);
            hi = std::max(hi, x);
        }
    }
    return Interval{lo, hi};
}

PolyhedralFn PolyhedralFn::shifted(double c) const {
    std::vector<Generator> g = gen_;
    for (auto& p : g) p.z += c;
    return canonicalize(std::move(g));
}

PolyhedralFn PolyhedralFn::translated(double dx) const {
    std::vector<Generator> g = gen_;
    for (auto& p : g) p.x += dx;
    return canonicalize(std::move(g));
}

}  // namespace fwl
