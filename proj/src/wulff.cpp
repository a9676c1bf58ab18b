#include "fwl/wulff.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

namespace fwl {

namespace {

double cross(Vec2 a, Vec2 b) { return a.x * b.z - a.z * b.x; }

struct HalfPlane {
    Vec2 p;  // point on the boundary line
    Vec2 d;  // direction along the line; interior on the left
};

Vec2 line_isect(const HalfPlane& a, const HalfPlane& b) {
    double t = cross(b.d, a.p - b.p) / cross(a.d, b.d);
    return a.p + a.d * t;
}

bool outside(const HalfPlane& h, Vec2 q, double eps) {
    return cross(h.d, q - h.p) < -eps;
}

}  // namespace

std::vector<Vec2> circle_directions(int count) {
    if (count < 3) throw std::invalid_argument("circle_directions: count < 3");
    std::vector<Vec2> out;
    out.reserve(static_cast<size_t>(count));
    for (int i = 0; i < count; ++i) {
        double a = 2.0 * M_PI * i / count;
        out.push_back({std::cos(a), std::sin(a)});
    }
    return out;
}

std::optional<EpigraphBody> wulff_shape(const SphericalFn& f, int directions) {
    auto dirs = circle_directions(directions);
    std::vector<HalfPlane> hps;
    hps.reserve(dirs.size());
    double scale = 1.0;
    for (Vec2 nu : dirs) {
        double h = f(nu);
        scale = std::max(scale, std::abs(h));
        // interior {x . nu <= h} lies on the left of d = rot90(nu)
        hps.push_back({nu * h, Vec2{-nu.z, nu.x}});
    }
    double eps = 1e-9 * scale;

    std::deque<HalfPlane> dq;
    for (const auto& hp : hps) {
        while (dq.size() >= 2 && outside(hp, line_isect(dq[dq.size() - 2], dq.back()), eps))
            dq.pop_back();
        while (dq.size() >= 2 && outside(hp, line_isect(dq[0], dq[1]), eps)) dq.pop_front();
        dq.push_back(hp);
    }
    while (dq.size() > 2 && outside(dq.front(), line_isect(dq[dq.size() - 2], dq.back()), eps))
        dq.pop_back();
    while (dq.size() > 2 && outside(dq.back(), line_isect(dq[0], dq[1]), eps)) dq.pop_front();
    if (dq.size() < 3) return std::nullopt;

    std::vector<Vec2> verts;
    verts.reserve(dq.size());
    for (size_t i = 0; i < dq.size(); ++i) {
        Vec2 v = line_isect(dq[i], dq[(i + 1) % dq.size()]);
        // Near-parallel constraints tangent at a common corner reproduce that
        // corner with ~1e-16 jitter; collapse such runs so the hull sees one
        // representative per corner.
        if (!verts.empty() && (v - verts.back()).norm() <= eps) continue;
        verts.push_back(v);
    }
    while (verts.size() > 1 && (verts.front() - verts.back()).norm() <= eps) verts.pop_back();
    if (verts.size() < 3) return std::nullopt;

    // Feasibility spot check against a constraint subsample: an infeasible
    // system leaves the deque with vertices violating skipped constraints.
    double tol = 1e-7 * scale;
    size_t stride = std::max<size_t>(1, hps.size() / 256);
    for (size_t i = 0; i < hps.size(); i += stride)
        for (const Vec2& v : verts)
            if (outside(hps[i], v, tol)) return std::nullopt;
    return EpigraphBody::hull(std::move(verts));
}

std::optional<EpigraphBody> wulff_flow(const EpigraphBody& k, const SphericalFn& f, double t,
                                       int directions) {
    return wulff_shape([&](Vec2 nu) { return k.support(nu) + t * f(nu); }, directions);
}

double zeta_bar_eval(const Perturbation& zeta, Vec2 nu) {
    double b = std::abs(nu.z);
    if (b == 0.0) return zeta.recession(nu.x);
    // g((p,-1)/sqrt(1+p^2)) = p under the sign convention fixed here.
    return b * zeta(nu.x / b);
}

Interval domain_evolution(const PolyhedralFn& u, const Perturbation& zeta, double t) {
    Interval d = u.domain();
    double lo = d.lo - t * zeta.recession(-1.0);
    double hi = d.hi + t * zeta.recession(1.0);
    if (lo > hi) throw std::runtime_error("domain collapsed");
    return {lo, hi};
}

double default_wulff_T(const PolyhedralFn& u, const Perturbation& zeta, double eps) {
    double sup_bar = 0.0;
    for (Vec2 nu : circle_directions(256))
        sup_bar = std::max(sup_bar, std::abs(zeta_bar_eval(zeta, nu)));
    return (u.max_value() - u.min_value()) + eps * sup_bar + 1.0;
}

PolyhedralFn functional_wulff(const PolyhedralFn& u, const Perturbation& zeta, double t,
                              std::optional<double> T, int directions) {
    double TT = T ? *T : default_wulff_T(u, zeta, std::max(t, 0.1));
    EpigraphBody k = lift_body(u);
    auto shape = wulff_shape(
        [&](Vec2 nu) {
            return k.support(nu) + TT * std::max(nu.z, 0.0) + t * zeta_bar_eval(zeta, nu);
        },
        directions);
    if (!shape) throw std::runtime_error("functional Wulff shape empty; increase T");
    return floor_body(*shape);
}

}  // namespace fwl
