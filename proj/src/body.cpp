#include "fwl/body.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fwl {

double Vec2::norm() const { return std::hypot(x, z); }

namespace {

double cross(Vec2 o, Vec2 a, Vec2 b) {
    return (a.x - o.x) * (b.z - o.z) - (a.z - o.z) * (b.x - o.x);
}

double seg_dist(Vec2 p, Vec2 a, Vec2 b) {
    Vec2 d = b - a;
    double len2 = d.dot(d);
    if (len2 == 0.0) return (p - a).norm();
    double t = std::clamp((p - a).dot(d) / len2, 0.0, 1.0);
    return (p - (a + d * t)).norm();
}

}  // namespace

EpigraphBody EpigraphBody::hull(std::vector<Vec2> pts) {
    if (pts.empty()) throw std::invalid_argument("hull: empty point set");
    std::sort(pts.begin(), pts.end(), [](Vec2 a, Vec2 b) {
        return a.x < b.x || (a.x == b.x && a.z < b.z);
    });
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](Vec2 a, Vec2 b) { return a.x == b.x && a.z == b.z; }),
              pts.end());
    double scale = 0.0;
    for (auto p : pts) scale = std::max({scale, std::abs(p.x), std::abs(p.z)});
    double tol = 1e-12 * (scale * scale + 1.0);
    auto build = [&](auto begin, auto end) {
        std::vector<Vec2> h;
        for (auto it = begin; it != end; ++it) {
            while (h.size() >= 2 && cross(h[h.size() - 2], h.back(), *it) <= tol) h.pop_back();
            h.push_back(*it);
        }
        return h;
    };
    auto lower = build(pts.begin(), pts.end());
    auto upper = build(pts.rbegin(), pts.rend());
    EpigraphBody k;
    k.v_.assign(lower.begin(), lower.end() - (lower.size() > 1 ? 1 : 0));
    if (upper.size() > 1) k.v_.insert(k.v_.end(), upper.begin(), upper.end() - 1);
    if (k.v_.empty()) k.v_.push_back(pts.front());
    return k;
}

EpigraphBody EpigraphBody::from_ccw(std::vector<Vec2> verts) {
    if (verts.empty()) throw std::invalid_argument("from_ccw: empty");
    std::vector<Vec2> v;
    for (auto p : verts) {
        if (!v.empty() && (p - v.back()).norm() < 1e-14) continue;
        v.push_back(p);
    }
    if (v.size() > 1 && (v.front() - v.back()).norm() < 1e-14) v.pop_back();
    EpigraphBody k;
    k.v_ = std::move(v);
    return k;
}

double EpigraphBody::area() const {
    if (degenerate()) return 0.0;
    double s = 0.0;
    for (size_t i = 0; i < v_.size(); ++i) {
        const Vec2& a = v_[i];
        const Vec2& b = v_[(i + 1) % v_.size()];
        s += a.x * b.z - b.x * a.z;
    }
    return 0.5 * s;
}

double EpigraphBody::support(Vec2 dir) const {
    double m = -kInf;
    for (auto p : v_) m = std::max(m, p.dot(dir));
    return m;
}

bool EpigraphBody::contains(Vec2 p, double tol) const {
    if (v_.size() == 1) return (p - v_[0]).norm() <= tol;
    if (v_.size() == 2) return seg_dist(p, v_[0], v_[1]) <= tol;
    for (size_t i = 0; i < v_.size(); ++i) {
        const Vec2& a = v_[i];
        const Vec2& b = v_[(i + 1) % v_.size()];
        if (cross(a, b, p) < -tol * ((b - a).norm() + 1.0)) return false;
    }
    return true;
}

double EpigraphBody::radial(Vec2 dir) const {
    if (degenerate()) throw std::domain_error("radial: degenerate body");
    double r = kInf;
    for (const auto& f : facets()) {
        double c = f.normal.dot(f.a);
        if (c <= 0) throw std::domain_error("radial: origin not interior");
        double d = f.normal.dot(dir);
        if (d > 0) r = std::min(r, c / d);
    }
    return r;
}

std::vector<EpigraphBody::Facet> EpigraphBody::facets() const {
    if (degenerate()) throw std::domain_error("facets: degenerate body");
    std::vector<Facet> fs;
    fs.reserve(v_.size());
    for (size_t i = 0; i < v_.size(); ++i) {
        Vec2 a = v_[i];
        Vec2 b = v_[(i + 1) % v_.size()];
        Vec2 d = b - a;
        double len = d.norm();
        if (len <= 0) throw std::domain_error("facets: zero-length edge");
        fs.push_back({{d.z / len, -d.x / len}, len, a, b});
    }
    return fs;
}

EpigraphBody EpigraphBody::translated(Vec2 y) const {
    EpigraphBody k = *this;
    for (auto& p : k.v_) p = p + y;
    return k;
}

EpigraphBody EpigraphBody::reflected_h() const {
    std::vector<Vec2> pts = v_;
    for (auto& p : pts) p.z = -p.z;
    return hull(std::move(pts));
}

Interval EpigraphBody::x_range() const {
    double lo = kInf, hi = -kInf;
    for (auto p : v_) {
        lo = std::min(lo, p.x);
        hi = std::max(hi, p.x);
    }
    return {lo, hi};
}

EpigraphBody lift_body(const PolyhedralFn& u) {
    double m = u.max_value();
    std::vector<Vec2> pts;
    for (const auto& g : u.generators()) {
        pts.push_back({g.x, g.z});
        pts.push_back({g.x, 2 * m - g.z});  // reflected chain, shifted back up
    }
    return EpigraphBody::hull(std::move(pts));
}

PolyhedralFn floor_body(const EpigraphBody& k) {
    std::vector<PolyhedralFn::Generator> g;
    for (auto p : k.vertices()) g.push_back({p.x, p.z});
    return PolyhedralFn::canonicalize(std::move(g));
}

ConcaveChain ceil_body(const EpigraphBody& k) {
    std::vector<PolyhedralFn::Generator> g;
    for (auto p : k.vertices()) g.push_back({p.x, -p.z});
    return {PolyhedralFn::canonicalize(std::move(g))};
}

double hausdorff_distance(const EpigraphBody& a, const EpigraphBody& b) {
    // Convexity: the sup over one body of the distance to the other is
    // attained at a vertex.
    auto dist_to = [](Vec2 p, const EpigraphBody& k) {
        if (k.contains(p, 1e-12)) return 0.0;
        const auto& v = k.vertices();
        if (v.size() == 1) return (p - v[0]).norm();
        double d = kInf;
        for (size_t i = 0; i < v.size(); ++i)
            d = std::min(d, seg_dist(p, v[i], v[(i + 1) % v.size()]));
        return d;
    };
    double h = 0.0;
    for (auto p : a.vertices()) h = std::max(h, dist_to(p, b));
    for (auto p : b.vertices()) h = std::max(h, dist_to(p, a));
    return h;
}

}  // namespace fwl
