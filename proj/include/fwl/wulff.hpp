#pragma once

#include <functional>
#include <optional>

#include "fwl/body.hpp"
#include "fwl/perturbation.hpp"
#include "fwl/polyhedral.hpp"

namespace fwl {

// Continuous data on the unit circle, evaluated at unit vectors.
using SphericalFn = std::function<double(Vec2)>;

// Uniform angular grid on the circle, sorted by angle starting at angle 0.
std::vector<Vec2> circle_directions(int count);

// Wulff shape [f]: intersection of the half-planes {x . nu <= f(nu)} over a
// uniformly spread direction set. Empty intersections are values (nullopt),
// not errors; degenerate (point/segment) shapes are returned as such.
std::optional<EpigraphBody> wulff_shape(const SphericalFn& f, int directions = 4096);

// F_t K = [h_K + t f].
std::optional<EpigraphBody> wulff_flow(const EpigraphBody& k, const SphericalFn& f, double t,
                                       int directions = 4096);

// The lift of zeta to the circle: |nu_z| * zeta(g(nu)) below the equator with
// g(nu) = -(nu - (e.nu)e)/(e.nu), rho_zeta on the equator, reflected above.
double zeta_bar_eval(const Perturbation& zeta, Vec2 nu);

// dom(u_t) = [h_dom(u) + t rho_zeta] on the line; throws "domain collapsed"
// when the interval becomes empty.
Interval domain_evolution(const PolyhedralFn& u, const Perturbation& zeta, double t);

// T large enough for the epigraph-lift route: (max u - min u) plus slack for
// the sampled sup of |zeta_bar| over [0, eps].
double default_wulff_T(const PolyhedralFn& u, const Perturbation& zeta, double eps);

// u_t computed through the ambient Wulff shape of the lifted epigraph body:
// u_t = floor([h_{K^u + l_T} + t zeta_bar]) where l_T is the vertical segment
// [0, T e_2]. Cross-validated against the conjugate route in tests.
PolyhedralFn functional_wulff(const PolyhedralFn& u, const Perturbation& zeta, double t,
                              std::optional<double> T = std::nullopt, int directions = 4096);

}  // namespace fwl
