#include "fwl/variation.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace fwl {

namespace {

double now_ms() {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

void finish(VariationReport& r, double tol, TolKind kind, double t0) {
    r.rhs_total = r.rhs_bulk + r.rhs_boundary;
    r.abs_err = std::abs(r.lhs - r.rhs_total);
    double denom = std::max(std::abs(r.rhs_total), 1e-300);
    r.rel_err = r.abs_err / denom;
    r.pass = (kind == TolKind::Abs ? r.abs_err : r.rel_err) <= tol;
    r.runtime_ms = now_ms() - t0;
}

// bulk/boundary for the inf-convolution family, where zeta = v* and
// rho_zeta = h_dom(v). The bulk term is int v*(grad u) phi(u) psi |x|^{q-1},
// exactly the moment-measure pairing since grad u is constant per piece.
std::pair<double, double> conv_variation_rhs(const PolyhedralFn& u, const PolyhedralFn& v,
                                             const WeightSpec& w) {
    PwlFn vstar = legendre(v);
    double bulk =
        moment_measure(u, w).integrate([&](std::array<double, 2> y) { return vstar(y[0]); });
    Perturbation rho = Perturbation::support(v.domain().lo, v.domain().hi);
    double boundary = boundary_integral(u, rho, w);
    return {bulk, boundary};
}

}  // namespace

FdResult fd_derivative(const std::function<double(double)>& mu, DerivativeMode mode,
                       FdLadder ladder) {
    FdResult out;
    std::vector<double> d;
    bool two_sided = mode == DerivativeMode::TwoSided;
    double mu0 = 0.0;
    if (!two_sided) mu0 = mu(0.0);

    double h = ladder.h0;
    for (int k = 0; k <= ladder.halvings; ++k, h *= 0.5) {
        double est;
        if (two_sided) {
            try {
                est = (mu(h) - mu(-h)) / (2.0 * h);
            } catch (const std::exception&) {
                // negative step left the validity window: restart one-sided
                two_sided = false;
                mu0 = mu(0.0);
                d.clear();
                out.ladder.clear();
                h = ladder.h0;
                k = -1;
                continue;
            }
        } else {
            est = (mu(h) - mu0) / h;
        }
        d.push_back(est);
        out.ladder.push_back({h, est});
    }
    out.mode = two_sided ? "two_sided" : "one_sided";

    size_t n = d.size();
    if (n >= 3) {
        double a = d[n - 3], b = d[n - 2], c = d[n - 1];
        // Eliminate O(h) then O(h^2). Even in central mode the O(h) term can
        // be present: piecewise-analytic measures have mismatched one-sided
        // second derivatives at t = 0, which central differences feel at
        // first order.
        double r1 = 2.0 * b - a;
        double r2 = 2.0 * c - b;
        out.value = (4.0 * r2 - r1) / 3.0;
        double d1 = std::abs(a - b), d2 = std::abs(b - c);
        double scale = 1e-13 * (1.0 + std::abs(c));
        out.order = (d1 > scale && d2 > scale) ? std::log2(d1 / d2)
                                               : std::numeric_limits<double>::quiet_NaN();
    } else {
        out.value = d.empty() ? 0.0 : d.back();
        out.order = std::numeric_limits<double>::quiet_NaN();
    }
    return out;
}

std::pair<double, double> analytic_first_variation(const PolyhedralFn& u,
                                                   const Perturbation& zeta,
                                                   const WeightSpec& w) {
    return {bulk_integral(u, zeta, w), boundary_integral(u, zeta, w)};
}

FdResult numeric_first_variation(const PolyhedralFn& u, const Perturbation& zeta,
                                 const WeightSpec& w, DerivativeMode mode, FdLadder ladder) {
    auto mu = [&](double t) { return epigraph_measure(perturb(u, zeta, t), w); };
    return fd_derivative(mu, mode, ladder);
}

VariationReport first_variation_report(std::string name, const PolyhedralFn& u,
                                       const Perturbation& zeta, const WeightSpec& w,
                                       DerivativeMode mode, double tol, TolKind tol_kind,
                                       FdLadder ladder) {
    double t0 = now_ms();
    VariationReport r;
    r.scenario = std::move(name);
    auto [bulk, boundary] = analytic_first_variation(u, zeta, w);
    FdResult fd = numeric_first_variation(u, zeta, w, mode, ladder);
    r.mode = fd.mode;
    r.ladder = fd.ladder;
    r.lhs = fd.value;
    r.order = fd.order;
    r.rhs_bulk = bulk;
    r.rhs_boundary = boundary;
    finish(r, tol, tol_kind, t0);
    return r;
}

VariationReport aleksandrov_polytope(std::string name, const EpigraphBody& k,
                                     const SphericalFn& f, double tol, int directions,
                                     FdLadder ladder) {
    double t0 = now_ms();
    VariationReport r;
    r.scenario = std::move(name);
    DiscreteMeasure sk = surface_area_measure(k);
    r.rhs_bulk = 0.0;
    r.rhs_boundary = sk.integrate([&](std::array<double, 2> nu) {
        return f(Vec2{nu[0], nu[1]});
    });
    auto mu = [&](double t) {
        auto ft = wulff_flow(k, f, t, directions);
        if (!ft) throw std::runtime_error("Wulff flow emptied the body");
        return ft->area();
    };
    FdResult fd = fd_derivative(mu, DerivativeMode::TwoSided, ladder);
    r.mode = fd.mode;
    r.ladder = fd.ladder;
    r.lhs = fd.value;
    r.order = fd.order;
    finish(r, tol, TolKind::Abs, t0);
    return r;
}

VariationReport kryvonos_langharst(std::string name, const EpigraphBody& k,
                                   const SphericalFn& f, const Density2& density,
                                   std::optional<double> q, double tol, TolKind tol_kind,
                                   int directions, FdLadder ladder) {
    double t0 = now_ms();
    VariationReport r;
    r.scenario = std::move(name);
    DiscreteMeasure smu = weighted_surface_area_measure(k, density, q);
    r.rhs_bulk = 0.0;
    r.rhs_boundary = smu.integrate([&](std::array<double, 2> nu) {
        return f(Vec2{nu[0], nu[1]});
    });
    auto mu = [&](double t) {
        auto ft = wulff_flow(k, f, t, directions);
        if (!ft) throw std::runtime_error("Wulff flow emptied the body");
        return polygon_measure(*ft, density, q);
    };
    FdResult fd = fd_derivative(mu, DerivativeMode::TwoSided, ladder);
    r.mode = fd.mode;
    r.ladder = fd.ladder;
    r.lhs = fd.value;
    r.order = fd.order;
    finish(r, tol, tol_kind, t0);
    return r;
}

VariationReport rotem_check(std::string name, const PolyhedralFn& u, const PolyhedralFn& v,
                            double tol, FdLadder ladder) {
    double t0 = now_ms();
    VariationReport r;
    r.scenario = std::move(name);
    WeightSpec w = WeightSpec::exp_weight();
    auto [bulk, boundary] = conv_variation_rhs(u, v, w);
    r.rhs_bulk = bulk;
    r.rhs_boundary = boundary;
    auto mu = [&](double t) { return epigraph_measure(inf_conv(u, epi_scale(t, v)), w); };
    FdResult fd = fd_derivative(mu, DerivativeMode::OneSided, ladder);
    r.mode = fd.mode;
    r.ladder = fd.ladder;
    r.lhs = fd.value;
    r.order = fd.order;
    finish(r, tol, TolKind::Abs, t0);
    return r;
}

VariationReport dual_check(std::string name, const PolyhedralFn& u, const PolyhedralFn& v,
                           double q, double tol, FdLadder ladder) {
    double t0 = now_ms();
    VariationReport r;
    r.scenario = std::move(name);
    WeightSpec w = WeightSpec::exp_weight(WeightSpec::PsiKind::One, q);
    auto [bulk, boundary] = conv_variation_rhs(u, v, w);
    r.rhs_bulk = bulk;
    r.rhs_boundary = boundary;
    auto mu = [&](double t) { return epigraph_measure(inf_conv(u, epi_scale(t, v)), w); };
    FdResult fd = fd_derivative(mu, DerivativeMode::OneSided, ladder);
    r.mode = fd.mode;
    r.ladder = fd.ladder;
    r.lhs = fd.value;
    r.order = fd.order;
    finish(r, tol, TolKind::Abs, t0);
    return r;
}

VariationReport grid_first_variation(std::string name, const GridFn& u,
                                     const Perturbation& zeta, const WeightSpec& w,
                                     const EpigraphBody& dom0,
                                     std::array<Interval, 2> primal_box,
                                     std::array<int, 2> primal_shape, double tol,
                                     int domain_directions, FdLadder ladder) {
    double t0 = now_ms();
    VariationReport r;
    r.scenario = std::move(name);

    auto domain_at = [&](double t) {
        auto d = wulff_shape(
            [&](Vec2 nu) { return dom0.support(nu) + t * zeta.recession(nu.x, nu.z); },
            domain_directions);
        if (!d) throw std::runtime_error("domain collapsed");
        return *d;
    };
    auto mu = [&](double t) {
        GridFn ut = perturb_grid(u, zeta, t, primal_box, primal_shape);
        EpigraphBody dt = domain_at(t);
        return epigraph_measure(ut, w, std::nullopt, &dt);
    };

    GridFn u0 = perturb_grid(u, zeta, 0.0, primal_box, primal_shape);
    r.rhs_bulk = bulk_integral(u0, zeta, w, dom0);
    r.rhs_boundary = boundary_integral(u0, zeta, w, dom0);

    FdResult fd = fd_derivative(mu, DerivativeMode::TwoSided, ladder);
    r.mode = fd.mode;
    r.ladder = fd.ladder;
    r.lhs = fd.value;
    r.order = fd.order;
    finish(r, tol, TolKind::Rel, t0);
    return r;
}

}  // namespace fwl
