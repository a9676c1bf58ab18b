#pragma once

#include <array>
#include <functional>
#include <optional>

#include "fwl/body.hpp"
#include "fwl/gridfn.hpp"
#include "fwl/perturbation.hpp"
#include "fwl/polyhedral.hpp"
#include "fwl/weights.hpp"

namespace fwl {

struct Atom {
    std::array<double, 2> where;
    double weight;
};

// Atomic measure on R^n or on the sphere, with total-mass accounting.
class DiscreteMeasure {
public:
    explicit DiscreteMeasure(std::vector<Atom> atoms);

    const std::vector<Atom>& atoms() const { return atoms_; }
    double total_mass() const { return mass_; }
    double integrate(const std::function<double(std::array<double, 2>)>& f) const;

private:
    std::vector<Atom> atoms_;
    double mass_ = 0.0;
};

// mu(u) = int_{dom u} Phi(u) psi |x|^{q-n} dx.
// Exact track: closed form per linear piece for phi = exp, psi = one;
// adaptive quadrature otherwise, with the radial singularity removed by
// substitution when q < 1.
double epigraph_measure(const PolyhedralFn& u, const WeightSpec& w);

// Grid track. The optional clip region restricts the integral to the true
// domain (the conjugate-route u_t is finite on the whole primal box, growing
// linearly outside dom(u_t); without clipping the tail mass would pollute the
// measure). 1D: interval; 2D: convex polygon. When q is present and not equal
// to n = 2, the 2D integral runs in polar coordinates and requires a polygon
// with the origin in its interior.
double epigraph_measure(const GridFn& u, const WeightSpec& w,
                        const std::optional<Interval>& clip1 = std::nullopt,
                        const EpigraphBody* clip2 = nullptr);

// One atom per facet at its outer normal, weight = facet length.
DiscreteMeasure surface_area_measure(const EpigraphBody& k);

using Density2 = std::function<double(double, double)>;  // Psi(x, z)

// Facet atoms with weight = int_facet Psi(X) |x(X)|^{q-1} dH^1 (ambient n=1;
// the radial factor acts on the first coordinate).
DiscreteMeasure weighted_surface_area_measure(const EpigraphBody& k, const Density2& density,
                                              std::optional<double> q = std::nullopt);

// Push-forward of phi(u) psi |x|^{q-n} dx under the gradient map. Exact atoms
// at the piece slopes on the polyhedral track; binned on the grid track.
DiscreteMeasure moment_measure(const PolyhedralFn& u, const WeightSpec& w);
DiscreteMeasure moment_measure(const GridFn& u, const WeightSpec& w, int bins = 256);

// Boundary push-forward under the Gauss map of dom(u): atoms at the outer
// normals. Phi variant weights by phi(u(y)) (the Rotem form), Survival by
// Phi(u(y)) (the bulk+boundary first-variation form).
enum class BoundaryDensity { Phi, Survival };
DiscreteMeasure surface_measure_fn(const PolyhedralFn& u, const WeightSpec& w,
                                   BoundaryDensity kind = BoundaryDensity::Phi);

// int_{dom u} zeta(grad u) phi(u) psi |x|^{q-n} dx.
double bulk_integral(const PolyhedralFn& u, const Perturbation& zeta, const WeightSpec& w);

// int_{bd dom u} rho_zeta(N) Phi(u) psi |y|^{q-n} dH^{n-1}.
double boundary_integral(const PolyhedralFn& u, const Perturbation& zeta, const WeightSpec& w);

// Grid-track (2D) bulk/boundary against an explicit domain polygon; boundary
// values of u recovered by linear extrapolation from two interior samples.
double bulk_integral(const GridFn& u, const Perturbation& zeta, const WeightSpec& w,
                     const EpigraphBody& domain);
double boundary_integral(const GridFn& u, const Perturbation& zeta, const WeightSpec& w,
                         const EpigraphBody& domain);

// mu(K) = int_K Psi(x,z) |x|^{q-1} dx dz over a planar convex body
// (ambient n = 1), by vertical-slab decomposition between the floor and
// ceiling chains.
double polygon_measure(const EpigraphBody& k, const Density2& density,
                       std::optional<double> q = std::nullopt);

}  // namespace fwl
