#pragma once

#include <optional>
#include <vector>

#include "fwl/polyhedral.hpp"

namespace fwl {

struct Vec2 {
    double x = 0.0;
    double z = 0.0;
    Vec2 operator+(Vec2 o) const { return {x + o.x, z + o.z}; }
    Vec2 operator-(Vec2 o) const { return {x - o.x, z - o.z}; }
    Vec2 operator*(double s) const { return {s * x, s * z}; }
    double dot(Vec2 o) const { return x * o.x + z * o.z; }
    double norm() const;
};

// Compact convex set in the plane, stored as a CCW vertex chain.
// Degenerate bodies (point, segment) are allowed; they arise as epigraph
// lifts of indicator functions.
class EpigraphBody {
public:
    // Convex hull of a nonempty point set.
    static EpigraphBody hull(std::vector<Vec2> points);
    // Vertices already forming a CCW convex chain (trusted, e.g. from clipping).
    static EpigraphBody from_ccw(std::vector<Vec2> verts);

    const std::vector<Vec2>& vertices() const { return v_; }
    bool degenerate() const { return v_.size() < 3; }

    double area() const;
    double support(Vec2 dir) const;
    bool contains(Vec2 p, double tol = 1e-9) const;
    // Radial function; requires the origin in the interior.
    double radial(Vec2 dir) const;

    struct Facet {
        Vec2 normal;   // outer unit normal
        double length; // 1-dim Hausdorff measure
        Vec2 a, b;     // endpoints
    };
    std::vector<Facet> facets() const;

    EpigraphBody translated(Vec2 y) const;
    EpigraphBody reflected_h() const;  // reflection z -> -z

    Interval x_range() const;

private:
    EpigraphBody() = default;
    std::vector<Vec2> v_;
};

// K^u = epi(u - M) cap R_H(epi(u - M)) + M e_2 with M = max u.
EpigraphBody lift_body(const PolyhedralFn& u);

// Lowest point of K over each vertical line (+inf where the line misses K).
PolyhedralFn floor_body(const EpigraphBody& k);

// Highest point over each vertical line; concave, returned through its negative.
struct ConcaveChain {
    PolyhedralFn neg;  // -ceil
    double operator()(double x) const {
        double v = neg(x);
        return v == kInf ? -kInf : -v;
    }
};
ConcaveChain ceil_body(const EpigraphBody& k);

double hausdorff_distance(const EpigraphBody& a, const EpigraphBody& b);

}  // namespace fwl
