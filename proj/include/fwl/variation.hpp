#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "fwl/measures.hpp"
#include "fwl/transform.hpp"
#include "fwl/wulff.hpp"

namespace fwl {

struct LadderPoint {
    double h;
    double estimate;
};

struct VariationReport {
    std::string scenario;
    std::string mode;  // "two_sided" | "one_sided"
    std::vector<LadderPoint> ladder;
    double lhs = 0.0;
    double rhs_bulk = 0.0;
    double rhs_boundary = 0.0;
    double rhs_total = 0.0;
    double abs_err = 0.0;
    double rel_err = 0.0;
    double order = 0.0;  // observed FD convergence order (NaN when indeterminate)
    bool pass = false;
    double runtime_ms = 0.0;
};

enum class DerivativeMode { TwoSided, OneSided };
enum class TolKind { Abs, Rel };

struct FdLadder {
    double h0 = 1e-2;
    int halvings = 4;  // rungs h0/2^k, k = 0..halvings; Richardson on the last 3
};

struct FdResult {
    double value = 0.0;
    std::vector<LadderPoint> ladder;
    double order = 0.0;
    std::string mode;
};

// Richardson-extrapolated finite-difference derivative of mu at t = 0.
// Two-sided mode silently degrades to one-sided (and records it) when mu
// throws at a negative step.
FdResult fd_derivative(const std::function<double(double)>& mu, DerivativeMode mode,
                       FdLadder ladder = {});

// RHS of the first-variation identity: (bulk, boundary).
std::pair<double, double> analytic_first_variation(const PolyhedralFn& u,
                                                   const Perturbation& zeta,
                                                   const WeightSpec& w);

// LHS: derivative of t -> mu((u* + t zeta)*) on the exact track.
FdResult numeric_first_variation(const PolyhedralFn& u, const Perturbation& zeta,
                                 const WeightSpec& w, DerivativeMode mode, FdLadder ladder = {});

VariationReport first_variation_report(std::string name, const PolyhedralFn& u,
                                       const Perturbation& zeta, const WeightSpec& w,
                                       DerivativeMode mode, double tol,
                                       TolKind tol_kind = TolKind::Abs, FdLadder ladder = {});

// Classical Aleksandrov lemma on polygons: d/dt Area(F_t K) = int f dS_K.
VariationReport aleksandrov_polytope(std::string name, const EpigraphBody& k,
                                     const SphericalFn& f, double tol = 1e-4,
                                     int directions = 4096, FdLadder ladder = {});

// Weighted version: d/dt mu(F_t K) = int f dS_{mu,K}.
VariationReport kryvonos_langharst(std::string name, const EpigraphBody& k,
                                   const SphericalFn& f, const Density2& density,
                                   std::optional<double> q, double tol,
                                   TolKind tol_kind = TolKind::Rel, int directions = 4096,
                                   FdLadder ladder = {});

// One-sided derivative of mu_n(u box (t box v)) against the v*-form RHS.
VariationReport rotem_check(std::string name, const PolyhedralFn& u, const PolyhedralFn& v,
                            double tol = 1e-8, FdLadder ladder = {});

// Same with the radial weight |x|^{q-1} (mu_q family).
VariationReport dual_check(std::string name, const PolyhedralFn& u, const PolyhedralFn& v,
                           double q, double tol = 1e-8, FdLadder ladder = {});

// 2D grid-track verification: dom0 is the domain polygon of u; domains at
// t != 0 follow the evolution law dom(u_t) = [h_dom(u) + t rho_zeta].
VariationReport grid_first_variation(std::string name, const GridFn& u,
                                     const Perturbation& zeta, const WeightSpec& w,
                                     const EpigraphBody& dom0,
                                     std::array<Interval, 2> primal_box,
                                     std::array<int, 2> primal_shape, double tol,
                                     int domain_directions = 1024, FdLadder ladder = {});

}  // namespace fwl
