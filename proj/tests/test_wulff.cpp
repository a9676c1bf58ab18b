// Wulff shapes from support data on the circle, the flow F_t K, the lift
// of perturbations to the sphere, and domain evolution laws.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "fwl/transform.hpp"
#include "fwl/wulff.hpp"

using namespace fwl;

namespace {

EpigraphBody unit_square() { return EpigraphBody::hull({{0, 0}, {1, 0}, {1, 1}, {0, 1}}); }

PolyhedralFn quad_cap(int nodes = 401) {
    return PolyhedralFn::sample([](double x) { return x * x; }, -1.0, 1.0, nodes);
}

}  // namespace

TEST_CASE("direction sets need at least three rays") {
    CHECK_THROWS(circle_directions(2));
    auto d = circle_directions(8);
    REQUIRE(d.size() == 8);
    CHECK(d[0].x == doctest::Approx(1.0));
    CHECK(d[2].z == doctest::Approx(1.0));
}

TEST_CASE("Wulff shape of a support function recovers the body") {
    EpigraphBody k = unit_square();
    auto s = wulff_shape([&](Vec2 nu) { return k.support(nu); }, 4096);
    REQUIRE(s.has_value());
    CHECK(s->area() == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(hausdorff_distance(*s, k) <= 1e-8);
}

TEST_CASE("Wulff shape of the constant is the ball") {
    auto s = wulff_shape([](Vec2) { return 1.0; }, 4096);
    REQUIRE(s.has_value());
    CHECK(s->area() == doctest::Approx(M_PI).epsilon(1e-5));
    for (Vec2 nu : circle_directions(64))
        CHECK(s->support(nu) == doctest::Approx(1.0).epsilon(1e-5));
}

TEST_CASE("adding a linear term translates the Wulff shape") {
    EpigraphBody k = unit_square();
    Vec2 y{1.0, 0.0};
    auto s = wulff_shape([&](Vec2 nu) { return k.support(nu) + y.dot(nu); }, 4096);
    REQUIRE(s.has_value());
    CHECK(hausdorff_distance(*s, k.translated(y)) <= 1e-8);
}

TEST_CASE("maximality: the shape's support data never exceeds the input") {
    EpigraphBody k = EpigraphBody::hull({{0, 0}, {2, 0}, {1.3, 1.7}, {0.1, 1.1}});
    auto dirs = circle_directions(512);
    auto s = wulff_shape([&](Vec2 nu) { return k.support(nu) + 0.1; }, 512);
    REQUIRE(s.has_value());
    double min_gap = kInf;
    for (Vec2 nu : dirs) {
        double gap = (k.support(nu) + 0.1) - s->support(nu);
        CHECK(gap >= -1e-9);
        min_gap = std::min(min_gap, gap);
    }
    CHECK(min_gap <= 1e-6);  // the constraint is active somewhere
}

TEST_CASE("Wulff flow at t=0 is the identity and f=1 is the outer parallel body") {
    EpigraphBody k = unit_square();
    auto k0 = wulff_flow(k, [](Vec2) { return 1.0; }, 0.0);
    REQUIRE(k0.has_value());
    CHECK(hausdorff_distance(*k0, k) <= 1e-9);

    auto kt = wulff_flow(k, [](Vec2) { return 1.0; }, 0.5);
    REQUIRE(kt.has_value());
    // area(K + 0.5 B) = 1 + 0.5 * perimeter + pi * 0.25
    CHECK(kt->area() == doctest::Approx(1.0 + 2.0 + M_PI * 0.25).epsilon(1e-4));
}

TEST_CASE("Wulff flow is a semigroup up to direction discretization") {
    EpigraphBody k = unit_square();
    SphericalFn f = [&](Vec2 nu) { return 1.0 + 0.25 * nu.x; };
    for (auto [s, t] : std::vector<std::pair<double, double>>{{0.2, 0.3}, {0.1, 0.1}, {0.3, 0.1}}) {
        auto inner = wulff_flow(k, f, t, 4096);
        REQUIRE(inner.has_value());
        auto two_step = wulff_flow(*inner, f, s, 4096);
        auto one_step = wulff_flow(k, f, s + t, 4096);
        REQUIRE(two_step.has_value());
        REQUIRE(one_step.has_value());
        CHECK(hausdorff_distance(*two_step, *one_step) <= 2e-6);
    }
}

TEST_CASE("an infeasible constraint system yields the empty marker") {
    // h < 0 in opposite directions: no point satisfies both
    auto s = wulff_shape([](Vec2 nu) { return nu.x > 0.5 || nu.x < -0.5 ? -1.0 : 1.0; }, 256);
    CHECK(!s.has_value());
}

TEST_CASE("zeta_bar at the poles and the equator") {
    Perturbation z = Perturbation::sum({Perturbation::norm(0.5), Perturbation::constant(1.0)});
    CHECK(zeta_bar_eval(z, {0, -1}) == doctest::Approx(z(0.0)));  // south pole -> zeta(0)
    CHECK(zeta_bar_eval(z, {0, 1}) == doctest::Approx(z(0.0)));   // reflection
    CHECK(zeta_bar_eval(z, {1, 0}) == doctest::Approx(z.recession(1.0)));
    CHECK(zeta_bar_eval(z, {-1, 0}) == doctest::Approx(z.recession(-1.0)));
}

TEST_CASE("zeta_bar factorization on the lower hemisphere") {
    // zeta_bar(nu) * sqrt(1 + |g(nu)|^2) = zeta(g(nu)), g((p,-1)/sqrt(1+p^2)) = p
    std::mt19937_64 eng(3);
    std::uniform_real_distribution<double> up(-20.0, 20.0);
    Perturbation z = Perturbation::sum(
        {Perturbation::soft_norm(), Perturbation::support(-1.0, 0.5)});
    for (int i = 0; i < 1000; ++i) {
        double p = up(eng);
        double s = std::sqrt(1.0 + p * p);
        Vec2 nu{p / s, -1.0 / s};
        CHECK(zeta_bar_eval(z, nu) * s == doctest::Approx(z(p)).epsilon(1e-12));
        // reflection symmetry
        CHECK(zeta_bar_eval(z, {nu.x, -nu.z}) == doctest::Approx(zeta_bar_eval(z, nu)));
    }
}

TEST_CASE("homogeneous data lifts to its equator restriction everywhere") {
    Perturbation z = Perturbation::norm(0.75);  // already 1-homogeneous
    for (Vec2 nu : circle_directions(64)) {
        double expect = nu.x == 0.0 ? 0.0 : std::abs(nu.x) * 0.75;
        CHECK(zeta_bar_eval(z, nu) == doctest::Approx(expect).epsilon(1e-12));
    }
}

TEST_CASE("domain evolution of the interval") {
    PolyhedralFn u = PolyhedralFn::indicator(-1, 1);
    Interval d = domain_evolution(u, Perturbation::norm(1.0), 0.3);
    CHECK(d.lo == doctest::Approx(-1.3));
    CHECK(d.hi == doctest::Approx(1.3));

    Interval dc = domain_evolution(u, Perturbation::constant(1.0), 0.7);
    CHECK(dc.lo == doctest::Approx(-1.0));
    CHECK(dc.hi == doctest::Approx(1.0));
}

TEST_CASE("domain evolution matches the perturbed domain for negative data") {
    PolyhedralFn u = quad_cap(801);
    Perturbation z = Perturbation::norm(-0.5);
    Interval d = domain_evolution(u, z, 0.4);
    CHECK(d.lo == doctest::Approx(-0.8));
    CHECK(d.hi == doctest::Approx(0.8));
    Interval dp = perturb(u, z, 0.4).domain();
    CHECK(dp.lo == doctest::Approx(d.lo).epsilon(1e-9));
    CHECK(dp.hi == doctest::Approx(d.hi).epsilon(1e-9));

    CHECK_THROWS_WITH_AS(domain_evolution(u, z, 5.0), "domain collapsed", std::runtime_error);
}

TEST_CASE("functional Wulff route: trivial cases") {
    PolyhedralFn u = PolyhedralFn::indicator(-1, 1);
    PolyhedralFn u0 = functional_wulff(u, Perturbation::norm(1.0), 0.0);
    CHECK(u0.domain().lo == doctest::Approx(-1.0).epsilon(1e-8));
    CHECK(u0.domain().hi == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(std::abs(u0(0.0)) <= 1e-8);

    PolyhedralFn ut = functional_wulff(u, Perturbation::norm(1.0), 0.2);
    CHECK(ut.domain().lo == doctest::Approx(-1.2).epsilon(1e-6));
    CHECK(ut.domain().hi == doctest::Approx(1.2).epsilon(1e-6));
    CHECK(std::abs(ut(0.0)) <= 1e-6);
}

TEST_CASE("functional Wulff route agrees with the conjugate route") {
    PolyhedralFn u = PolyhedralFn::canonicalize({{-1, 1}, {0, 0}, {1, 1}});
    Perturbation z = Perturbation::soft_norm();
    double t = 0.1;
    PolyhedralFn via_wulff = functional_wulff(u, z, t);
    PolyhedralFn via_conj = perturb(u, z, t);
    for (double x = -1.05; x <= 1.05; x += 0.05) {
        double a = via_wulff(x), b = via_conj(x);
        if (a == kInf || b == kInf) continue;  // domain edges differ by discretization
        CHECK(a == doctest::Approx(b).epsilon(1e-4).scale(1.0));
    }
    Interval da = via_wulff.domain(), db = via_conj.domain();
    CHECK(da.lo == doctest::Approx(db.lo).epsilon(1e-4));
    CHECK(da.hi == doctest::Approx(db.hi).epsilon(1e-4));
}
