// Acceptance gate: one line per criterion, nonzero exit on any failure.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>

#include "fwl/scenario.hpp"
#include "property_suites.hpp"

using namespace fwl;

namespace {

int g_failures = 0;

double now_ms() {
    using clk = std::chrono::steady_clock;
    return std::chrono::duration<double, std::milli>(clk::now().time_since_epoch()).count();
}

void report(int criterion, bool pass, const std::string& what) {
    std::printf("criterion %d: %s — %s\n", criterion, pass ? "PASS" : "FAIL", what.c_str());
    if (!pass) ++g_failures;
}

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

PolyhedralFn quad_cap() {
    return PolyhedralFn::sample([](double x) { return x * x; }, -1.0, 1.0, 2001);
}

EpigraphBody unit_square() { return EpigraphBody::hull({{0, 0}, {1, 0}, {1, 1}, {0, 1}}); }

// 1. Exact 1D identity suite: three closed-form scenarios, abs <= 1e-9, < 1 s.
void criterion1() {
    double t0 = now_ms();
    WeightSpec w = WeightSpec::exp_weight();
    double e1 = std::exp(-1.0);
    bool ok = true;

    VariationReport a = first_variation_report("ind_norm", PolyhedralFn::indicator(-1, 1),
                                               Perturbation::norm(1.0), w,
                                               DerivativeMode::TwoSided, 1e-9);
    ok &= a.pass && near(a.lhs, 2.0, 1e-9) && near(a.rhs_bulk, 0.0, 1e-9) &&
          near(a.rhs_boundary, 2.0, 1e-9);

    VariationReport b = first_variation_report("ind_const", PolyhedralFn::indicator(-1, 1),
                                               Perturbation::constant(1.0), w,
                                               DerivativeMode::TwoSided, 1e-9);
    ok &= b.pass && near(b.lhs, 2.0, 1e-9) && near(b.rhs_bulk, 2.0, 1e-9) &&
          near(b.rhs_boundary, 0.0, 1e-9);

    VariationReport c = first_variation_report("quad_norm", quad_cap(), Perturbation::norm(1.0),
                                               WeightSpec::exp_weight(),
                                               DerivativeMode::OneSided, 1e-9, TolKind::Abs,
                                               {0.04, 4});
    ok &= c.pass && near(c.lhs, 2.0, 1e-9) && near(c.rhs_bulk, 2.0 - 2.0 * e1, 1e-6) &&
          near(c.rhs_boundary, 2.0 * e1, 1e-9);

    double ms = now_ms() - t0;
    ok &= ms < 1000.0;
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "exact 1D identities, worst abs err %.2e, %.0f ms",
                  std::max({a.abs_err, b.abs_err, c.abs_err}), ms);
    report(1, ok, buf);
}

// 2. The boundary-free formula misses the derivative by exactly the boundary term.
void criterion2() {
    WeightSpec w = WeightSpec::exp_weight();
    VariationReport a = first_variation_report("ind_norm", PolyhedralFn::indicator(-1, 1),
                                               Perturbation::norm(1.0), w,
                                               DerivativeMode::TwoSided, 1e-9);
    bool ok = near(a.rhs_bulk, 0.0, 1e-12) && near(a.lhs, 2.0, 1e-9) &&
              std::abs(a.lhs - a.rhs_bulk - a.rhs_boundary) <= 1e-9;
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "boundary-term necessity: bulk %.1e, lhs-bulk-boundary %.2e",
                  a.rhs_bulk, a.lhs - a.rhs_bulk - a.rhs_boundary);
    report(2, ok, buf);
}

// 3. Radially weighted family, q in {0.5, 1, 2}; singular path at relative 1e-6.
void criterion3() {
    PolyhedralFn ind = PolyhedralFn::indicator(-1, 1);
    bool ok = true;
    double worst = 0.0;
    for (double q : {0.5, 1.0, 2.0}) {
        VariationReport r = dual_check("muq", ind, ind, q);
        ok &= r.pass && near(r.lhs, 2.0, 1e-8) && near(r.rhs_total, 2.0, 1e-8);
        if (q == 0.5) ok &= r.rel_err <= 1e-6;  // singular-quadrature path
        worst = std::max(worst, r.abs_err);
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "mu_q family, worst abs err %.2e", worst);
    report(3, ok, buf);
}

// 4. Classical Aleksandrov on the unit square, 4096 directions, < 5 s.
void criterion4() {
    double t0 = now_ms();
    EpigraphBody k = unit_square();
    VariationReport a = aleksandrov_polytope("sq_one", k, [](Vec2) { return 1.0; }, 1e-4);
    VariationReport b =
        aleksandrov_polytope("sq_self", k, [&](Vec2 nu) { return k.support(nu); }, 1e-4);
    double ms = now_ms() - t0;
    bool ok = a.pass && near(a.lhs, 4.0, 1e-4) && near(a.rhs_total, 4.0, 1e-9) && b.pass &&
              near(b.lhs, 2.0, 1e-4) && near(b.rhs_total, 2.0, 1e-9) && ms < 5000.0;
    char buf[160];
    std::snprintf(buf, sizeof buf, "polygon lemma, errs %.2e / %.2e, %.0f ms", a.abs_err,
                  b.abs_err, ms);
    report(4, ok, buf);
}

// 5. Weighted polygon lemma with density e^{-z}, plus translation recheck.
void criterion5() {
    auto expz = [](double, double z) { return std::exp(-z); };
    double expect = 3.0 - std::exp(-1.0);
    VariationReport a = kryvonos_langharst("sq_expz", unit_square(), [](Vec2) { return 1.0; },
                                           expz, std::nullopt, 1e-3, TolKind::Rel);
    EpigraphBody moved = unit_square().translated({5, 5});
    auto expz_moved = [](double, double z) { return std::exp(-(z - 5.0)); };
    VariationReport b = kryvonos_langharst("sq_expz_moved", moved, [](Vec2) { return 1.0; },
                                           expz_moved, std::nullopt, 1e-3, TolKind::Rel);
    bool ok = a.pass && near(a.rhs_total, expect, 1e-9) && a.rel_err <= 1e-3 && b.pass &&
              near(b.rhs_total, expect, 1e-8) && b.rel_err <= 1e-3;
    char buf[160];
    std::snprintf(buf, sizeof buf, "weighted lemma, rhs %.9f (expect %.9f), rel err %.2e",
                  a.rhs_total, expect, a.rel_err);
    report(5, ok, buf);
}

// 6. 2D grid convergence on {64,128,256,512}: monotone, <=2% at 256, <=1% at 512.
void criterion6() {
    double t0 = now_ms();
    const Scenario* grid = nullptr;
    auto suite = standard_suite();
    for (const auto& s : suite)
        if (s.name == "grid2d_quadratic") grid = &s;
    bool ok = grid != nullptr;
    double r256 = 1.0, r512 = 1.0;
    if (ok) {
        ConvergenceTable t = convergence_study(*grid, {64, 128, 256, 512});
        ok = t.rows.size() == 4;
        for (size_t i = 1; ok && i < t.rows.size(); ++i)
            ok &= t.rows[i].rel_err <= t.rows[i - 1].rel_err;
        if (ok) {
            r256 = t.rows[2].rel_err;
            r512 = t.rows[3].rel_err;
            ok = r256 <= 0.02 && r512 <= 0.01;
        }
    }
    double ms = now_ms() - t0;
    ok &= ms < 120000.0;
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "grid convergence, rel err %.4f at 256, %.4f at 512, %.0f ms", r256, r512, ms);
    report(6, ok, buf);
}

// 7. Randomized property suites, >= 100 cases each.
void criterion7() {
    const std::uint64_t seed = 20240901;
    struct Entry {
        const char* name;
        int fails;
    } entries[] = {
        {"biconjugation", props::biconjugation_idempotence(seed)},
        {"dual-sum", props::dual_sum_identity(seed)},
        {"erosion route", props::perturbation_is_erosion(seed)},
        {"Wulff covariance", props::wulff_flow_covariance(seed)},
        {"lift factorization", props::lift_factorization(seed)},
        {"mass conservation", props::moment_mass_conservation(seed)},
        {"push-forward pairing", props::pushforward_pairing(seed)},
        {"surface-vs-graph", props::graph_surface_consistency(seed)},
    };
    bool ok = true;
    std::string bad;
    for (const auto& e : entries)
        if (e.fails != 0) {
            ok = false;
            bad += std::string(bad.empty() ? "" : ", ") + e.name;
        }
    report(7, ok, ok ? "8 property suites, >=100 cases each, 0 failures"
                     : "failing suites: " + bad);
}

// 8. Hopf-Lax residual decays at least first order for the smooth 2D scenario.
void criterion8() {
    Perturbation z = Perturbation::norm(1.0);
    std::array<Interval, 2> box{Interval{-1.5, 1.5}, Interval{-1.5, 1.5}};
    std::array<Interval, 2> ev{Interval{-0.9, 0.9}, Interval{-0.9, 0.9}};
    double prev = kInf;
    bool ok = true;
    std::string trail;
    for (int n : {65, 129, 257}) {
        std::array<int, 2> shape{n, n};
        GridFn u = GridFn::sample(2, box, shape,
                                  [](double x, double y) { return x * x + y * y; });
        double h = 3.0 / (n - 1);
        auto r = hopf_lax_residual(u, z, 0.05, h, box, shape, ev);
        if (prev < kInf) ok &= r.max_abs <= 0.62 * prev;
        char piece[32];
        std::snprintf(piece, sizeof piece, "%s%.3e", trail.empty() ? "" : " -> ", r.max_abs);
        trail += piece;
        prev = r.max_abs;
    }
    report(8, ok, "Hopf-Lax residual " + trail);
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    if (g_failures) std::printf("acceptance: %d criterion(s) failed\n", g_failures);
    else std::printf("acceptance: all criteria passed\n");
    return g_failures == 0 ? 0 : 1;
}
