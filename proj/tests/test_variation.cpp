// Both sides of the first-variation identities: finite-difference LHS with
// Richardson extrapolation vs independently computed bulk/boundary RHS.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fwl/variation.hpp"

using namespace fwl;

namespace {

PolyhedralFn quad_cap(int nodes = 2001) {
    return PolyhedralFn::sample([](double x) { return x * x; }, -1.0, 1.0, nodes);
}

EpigraphBody unit_square() { return EpigraphBody::hull({{0, 0}, {1, 0}, {1, 1}, {0, 1}}); }

}  // namespace

TEST_CASE("finite differences with extrapolation on smooth test curves") {
    // mu(t) = 2 e^t: derivative 2
    auto mu = [](double t) { return 2.0 * std::exp(t); };
    FdResult two = fd_derivative(mu, DerivativeMode::TwoSided);
    CHECK(two.mode == "two_sided");
    CHECK(two.value == doctest::Approx(2.0).epsilon(1e-10));
    REQUIRE(two.ladder.size() == 5);
    CHECK(two.ladder.front().h == doctest::Approx(1e-2));

    FdResult one = fd_derivative(mu, DerivativeMode::OneSided);
    CHECK(one.mode == "one_sided");
    CHECK(one.value == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("finite differences degrade to one-sided when negative steps throw") {
    auto mu = [](double t) {
        if (t < 0.0) throw std::runtime_error("domain collapsed");
        return 3.0 * t + 1.0;
    };
    FdResult r = fd_derivative(mu, DerivativeMode::TwoSided);
    CHECK(r.mode == "one_sided");
    CHECK(r.value == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("analytic first variation closed forms") {
    WeightSpec w = WeightSpec::exp_weight();
    auto [b1, s1] = analytic_first_variation(PolyhedralFn::indicator(-1, 1),
                                             Perturbation::norm(1.0), w);
    CHECK(b1 == doctest::Approx(0.0));
    CHECK(s1 == doctest::Approx(2.0));

    auto [b2, s2] = analytic_first_variation(PolyhedralFn::indicator(-1, 1),
                                             Perturbation::constant(1.0), w);
    CHECK(b2 == doctest::Approx(2.0));
    CHECK(s2 == doctest::Approx(0.0));

    double e1 = std::exp(-1.0);
    auto [b3, s3] = analytic_first_variation(quad_cap(), Perturbation::norm(1.0), w);
    CHECK(b3 == doctest::Approx(2.0 - 2.0 * e1).epsilon(1e-6));
    CHECK(s3 == doctest::Approx(2.0 * e1).epsilon(1e-9));
    CHECK(b3 + s3 == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("numeric first variation on the exact track") {
    WeightSpec w = WeightSpec::exp_weight();
    // mu(u_t) = 2(1+t): every rung equals 2 exactly
    FdResult r1 = numeric_first_variation(PolyhedralFn::indicator(-1, 1),
                                          Perturbation::norm(1.0), w, DerivativeMode::TwoSided);
    CHECK(r1.value == doctest::Approx(2.0).epsilon(1e-12));
    for (const auto& p : r1.ladder) CHECK(p.estimate == doctest::Approx(2.0).epsilon(1e-11));

    // mu(u_t) = 2 e^t: central differences converge at second order
    FdResult r2 = numeric_first_variation(PolyhedralFn::indicator(-1, 1),
                                          Perturbation::constant(1.0), w,
                                          DerivativeMode::TwoSided);
    CHECK(r2.value == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(r2.order == doctest::Approx(2.0).epsilon(0.1));

    FdResult r3 = numeric_first_variation(quad_cap(), Perturbation::norm(1.0), w,
                                          DerivativeMode::OneSided, {0.04, 4});
    CHECK(r3.value == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("first variation report and boundary-term necessity") {
    WeightSpec w = WeightSpec::exp_weight();
    VariationReport r =
        first_variation_report("interval_norm", PolyhedralFn::indicator(-1, 1),
                               Perturbation::norm(1.0), w, DerivativeMode::TwoSided, 1e-9);
    CHECK(r.pass);
    CHECK(r.rhs_total == r.rhs_bulk + r.rhs_boundary);
    CHECK(r.abs_err <= 1e-9);
    // the bulk-only formula misses the derivative by exactly the boundary term
    CHECK(r.rhs_bulk == doctest::Approx(0.0));
    CHECK(std::abs(r.lhs - r.rhs_bulk - r.rhs_boundary) <= 1e-9);
    CHECK(std::abs(r.lhs - 2.0) <= 1e-9);
}

TEST_CASE("first variation is antisymmetric in the perturbation") {
    WeightSpec w = WeightSpec::exp_weight();
    PolyhedralFn u = quad_cap();
    VariationReport plus =
        first_variation_report("p", u, Perturbation::norm(0.5), w, DerivativeMode::TwoSided, 1e-8);
    VariationReport minus =
        first_variation_report("m", u, Perturbation::norm(-0.5), w, DerivativeMode::TwoSided, 1e-8);
    CHECK(plus.lhs == doctest::Approx(-minus.lhs).epsilon(1e-7));
    CHECK(plus.rhs_total == doctest::Approx(-minus.rhs_total).epsilon(1e-9));
    CHECK(plus.pass);
    CHECK(minus.pass);
}

TEST_CASE("Aleksandrov lemma on the unit square") {
    VariationReport c1 = aleksandrov_polytope("sq_const", unit_square(),
                                              [](Vec2) { return 1.0; }, 1e-4);
    CHECK(c1.pass);
    CHECK(c1.rhs_total == doctest::Approx(4.0));
    CHECK(std::abs(c1.lhs - 4.0) <= 1e-4);

    EpigraphBody k = unit_square();
    VariationReport c2 = aleksandrov_polytope("sq_self", k,
                                              [&](Vec2 nu) { return k.support(nu); }, 1e-4);
    CHECK(c2.pass);
    CHECK(c2.rhs_total == doctest::Approx(2.0));
    CHECK(std::abs(c2.lhs - 2.0) <= 1e-4);
}

TEST_CASE("Aleksandrov lemma on a triangle with tilted data") {
    EpigraphBody tri = EpigraphBody::hull({{0, 0}, {1, 0}, {0, 1}});
    SphericalFn f = [](Vec2 nu) { return 1.0 + 0.25 * nu.x; };
    VariationReport r = aleksandrov_polytope("tri", tri, f, 1e-4);
    CHECK(r.pass);
    // RHS oracle: sum of f(normal) * edge length
    double expect = f({0, -1}) * 1.0 + f({-1, 0}) * 1.0 +
                    f({1 / std::sqrt(2.0), 1 / std::sqrt(2.0)}) * std::sqrt(2.0);
    CHECK(r.rhs_total == doctest::Approx(expect).epsilon(1e-12));
    CHECK(std::abs(r.lhs - expect) <= 1e-4);
}

TEST_CASE("weighted Aleksandrov on the square") {
    auto one = [](double, double) { return 1.0; };
    VariationReport plain = kryvonos_langharst("sq_one", unit_square(),
                                               [](Vec2) { return 1.0; }, one, std::nullopt,
                                               1e-4, TolKind::Abs);
    CHECK(plain.pass);
    CHECK(plain.rhs_total == doctest::Approx(4.0).epsilon(1e-10));

    auto expz = [](double, double z) { return std::exp(-z); };
    VariationReport weighted = kryvonos_langharst("sq_expz", unit_square(),
                                                  [](Vec2) { return 1.0; }, expz, std::nullopt,
                                                  1e-3, TolKind::Rel);
    CHECK(weighted.pass);
    CHECK(weighted.rhs_total == doctest::Approx(3.0 - std::exp(-1.0)).epsilon(1e-10));

    // translating the body while shifting the density leaves both sides alone
    EpigraphBody moved = unit_square().translated({5, 5});
    auto expz_moved = [](double, double z) { return std::exp(-(z - 5.0)); };
    VariationReport rel = kryvonos_langharst("sq_expz_moved", moved,
                                             [](Vec2) { return 1.0; }, expz_moved, std::nullopt,
                                             1e-3, TolKind::Rel);
    CHECK(rel.pass);
    CHECK(rel.rhs_total == doctest::Approx(weighted.rhs_total).epsilon(1e-9));
}

TEST_CASE("inf-convolution variation against the dual-pairing form") {
    PolyhedralFn ind = PolyhedralFn::indicator(-1, 1);
    VariationReport r1 = rotem_check("ind_ind", ind, ind);
    CHECK(r1.pass);
    CHECK(r1.lhs == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(r1.rhs_total == doctest::Approx(2.0).epsilon(1e-12));

    VariationReport r2 = rotem_check("quad_ind", quad_cap(), ind);
    CHECK(r2.pass);
    CHECK(r2.rhs_total == doctest::Approx(2.0).epsilon(1e-9));

    // v = |x| + I_[-1,1]: v*(y) = max(|y|-1, 0) vanishes at every slope of u,
    // so the bulk term dies and the boundary carries everything.
    PolyhedralFn v = PolyhedralFn::canonicalize({{-1, 1}, {0, 0}, {1, 1}});
    VariationReport r3 = rotem_check("ind_vshape", ind, v);
    CHECK(r3.pass);
    CHECK(r3.rhs_bulk == doctest::Approx(0.0));
    CHECK(r3.rhs_boundary == doctest::Approx(2.0));
    CHECK(r3.lhs == doctest::Approx(2.0).epsilon(1e-8));
}

TEST_CASE("radially weighted variation for the mu_q family") {
    PolyhedralFn ind = PolyhedralFn::indicator(-1, 1);
    // closed form mu_q(u_t) = 2 (1+t)^q / q: derivative 2 for every q
    for (double q : {0.5, 1.0, 2.0}) {
        VariationReport r = dual_check("muq", ind, ind, q);
        CHECK(r.pass);
        CHECK(r.lhs == doctest::Approx(2.0).epsilon(1e-8));
        CHECK(r.rhs_total == doctest::Approx(2.0).epsilon(1e-10));
    }
    // q = n = 1 coincides with the unweighted form
    VariationReport rq1 = dual_check("muq_quad", quad_cap(), ind, 1.0);
    VariationReport rn = rotem_check("rot_quad", quad_cap(), ind);
    CHECK(rq1.rhs_total == doctest::Approx(rn.rhs_total).epsilon(1e-12));
    CHECK(rq1.lhs == doctest::Approx(rn.lhs).epsilon(1e-10));
}

TEST_CASE("grid-track first variation in the plane") {
    WeightSpec w = WeightSpec::exp_weight();
    double half = 1.0, box = 1.1;
    int n = 64;
    std::array<Interval, 2> pbox{Interval{-box, box}, Interval{-box, box}};
    GridFn u = GridFn::sample(2, pbox, {n, n}, [&](double x, double y) {
        return std::max(std::abs(x), std::abs(y)) <= half ? x * x + y * y : kInf;
    });
    Perturbation z = Perturbation::support({{-1, -1}, {1, -1}, {1, 1}, {-1, 1}});
    EpigraphBody dom0 =
        EpigraphBody::hull({{-half, -half}, {half, -half}, {half, half}, {-half, half}});
    VariationReport r =
        grid_first_variation("grid64", u, z, w, dom0, pbox, {n, n}, 0.02, 1024);
    CHECK(r.pass);
    CHECK(r.rel_err <= 0.02);
    // reference split: bulk 4(1-1/e) sqrt(pi) erf(1), boundary (4/e) sqrt(pi) erf(1)
    double ref = 4.0 * std::sqrt(M_PI) * std::erf(1.0);
    CHECK(r.rhs_total == doctest::Approx(ref).epsilon(0.02));
}
