// Scenario ingestion, suite execution, report formats, convergence tables,
// and serialization round trips.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>
#include <sstream>

#include "fwl/scenario.hpp"
#include "fwl/serialize.hpp"

using namespace fwl;

namespace {

const char* kMiniConfig = R"({
  "scenarios": [
    {"name": "mini", "kind": "first_variation", "label": "interval with norm data",
     "u": {"kind": "indicator", "lo": -1, "hi": 1},
     "zeta": {"kind": "norm", "coeff": 1},
     "weight": {"phi": "exp", "psi": "one", "q": null},
     "mode": "two_sided", "tol": 1e-9}
  ]
})";

// drop the trailing runtime_ms column from every CSV row
std::string strip_runtime(const std::string& csv) {
    std::istringstream in(csv);
    std::string line, out;
    while (std::getline(in, line)) {
        auto pos = line.rfind(',');
        out += line.substr(0, pos) + "\n";
    }
    return out;
}

}  // namespace

TEST_CASE("config parsing is strict") {
    auto suite = parse_scenarios(kMiniConfig);
    REQUIRE(suite.size() == 1);
    CHECK(suite[0].name == "mini");
    CHECK(suite[0].kind == "first_variation");

    // unknown top-level key
    CHECK_THROWS_AS(parse_scenarios(R"({"scenarios": [], "extra": 1})"), ConfigError);
    // unknown scenario key
    std::string bad = kMiniConfig;
    bad.replace(bad.find("\"mode\""), 6, "\"mood\"");
    CHECK_THROWS_AS(parse_scenarios(bad), ConfigError);
    // unknown atom kind
    std::string badkind = kMiniConfig;
    badkind.replace(badkind.find("indicator"), 9, "indicatorr");
    CHECK_THROWS_AS(parse_scenarios(badkind), ConfigError);
    // malformed document
    CHECK_THROWS_AS(parse_scenarios("{nope"), ConfigError);
    // missing required key
    CHECK_THROWS_AS(parse_scenarios(R"({"scenarios": [{"name": "x", "kind": "rotem"}]})"),
                    ConfigError);
}

TEST_CASE("the standard suite parses and lists its scenarios") {
    auto suite = standard_suite();
    CHECK(suite.size() == 11);
    std::vector<std::string> expect{"indicator_norm",  "indicator_constant", "quadratic_norm",
                                    "muq_q05",         "muq_q1",             "muq_q2",
                                    "rotem_quadratic", "square_flow",        "square_flow_self",
                                    "square_weighted", "grid2d_quadratic"};
    REQUIRE(suite.size() == expect.size());
    for (size_t i = 0; i < expect.size(); ++i) CHECK(suite[i].name == expect[i]);
    for (const auto& s : suite) CHECK(!s.label.empty());
}

TEST_CASE("unknown scenario filters are config errors") {
    RunOptions opts;
    opts.filter = {"missing"};
    CHECK_THROWS_WITH_AS(run_scenarios(standard_suite(), opts), "unknown scenario 'missing'",
                         ConfigError);
}

TEST_CASE("CSV output: exact header and per-seed determinism") {
    auto suite = parse_scenarios(kMiniConfig);
    RunOptions opts;
    auto r1 = run_scenarios(suite, opts);
    auto r2 = run_scenarios(suite, opts);
    std::string c1 = reports_to_csv(suite, r1, opts);
    std::string c2 = reports_to_csv(suite, r2, opts);
    CHECK(c1.substr(0, c1.find('\n')) ==
          "scenario,mode,grid,h,lhs,rhs_bulk,rhs_boundary,rhs_total,abs_err,rel_err,pass,"
          "runtime_ms");
    CHECK(strip_runtime(c1) == strip_runtime(c2));
    CHECK(strip_runtime(c1).find("mini,two_sided,0,") != std::string::npos);
}

TEST_CASE("structured report schema carries exactly the contract fields") {
    auto suite = parse_scenarios(kMiniConfig);
    RunOptions opts;
    auto reports = run_scenarios(suite, opts);
    auto j = nlohmann::json::parse(reports_to_json(reports));
    REQUIRE(j.is_array());
    REQUIRE(j.size() == 1);
    const auto& r = j[0];
    for (const char* key : {"scenario", "mode", "ladder", "lhs", "rhs_bulk", "rhs_boundary",
                            "rhs_total", "abs_err", "rel_err", "pass"})
        CHECK(r.contains(key));
    CHECK(r["scenario"] == "mini");
    CHECK(r["pass"] == true);
    CHECK(r["rhs_total"].get<double>() ==
          r["rhs_bulk"].get<double>() + r["rhs_boundary"].get<double>());
    CHECK(r["ladder"].size() == 5);
}

TEST_CASE("overrides flow through to the runner") {
    auto suite = parse_scenarios(kMiniConfig);
    RunOptions opts;
    opts.overrides.steps = 2;
    opts.overrides.tol = 1e-15;
    auto reports = run_scenarios(suite, opts);
    REQUIRE(reports.size() == 1);
    CHECK(reports[0].ladder.size() == 3);  // h0, h0/2, h0/4
}

TEST_CASE("convergence study on an exact-track scenario is a single row") {
    auto suite = parse_scenarios(kMiniConfig);
    auto table = convergence_study(suite[0], {64, 128, 256, 512});
    REQUIRE(table.rows.size() == 1);
    CHECK(table.rows[0].grid == 0);
    CHECK(table.rows[0].abs_err <= 1e-9);
    CHECK(table.fitted_order == "n/a");

    std::string csv = convergence_to_csv(table);
    CHECK(csv.substr(0, csv.find('\n')) == "grid,abs_err,rel_err,fitted_order");
    CHECK(csv.find("n/a") != std::string::npos);
}

TEST_CASE("convergence study on the grid track fits a positive order") {
    auto suite = standard_suite();
    const Scenario* grid = nullptr;
    for (const auto& s : suite)
        if (s.name == "grid2d_quadratic") grid = &s;
    REQUIRE(grid != nullptr);

    auto short_table = convergence_study(*grid, {32});
    CHECK(short_table.fitted_order == "n/a");  // one rung fits nothing

    auto table = convergence_study(*grid, {32, 64, 128});
    REQUIRE(table.rows.size() == 3);
    CHECK(table.rows[2].rel_err <= table.rows[0].rel_err);
    CHECK(std::stod(table.fitted_order) > 0.0);
}

TEST_CASE("polyhedral serialization round trip") {
    PolyhedralFn u = PolyhedralFn::canonicalize({{-1, 1}, {0, 0}, {1, 1}});
    std::string doc = to_json(u);
    auto j = nlohmann::json::parse(doc);
    CHECK(j["dimension"] == 1);
    CHECK(j["generators"].size() == 3);
    CHECK(polyhedral_from_json(doc) == u);
}

TEST_CASE("grid serialization round trip with +inf as null") {
    std::array<Interval, 2> box{Interval{-1, 1}, Interval{-1, 1}};
    GridFn u = GridFn::sample(2, box, {5, 5}, [](double x, double y) {
        return std::abs(x) + std::abs(y) <= 1.0 ? x * x + y * y : kInf;
    });
    std::string doc = to_json(u);
    auto j = nlohmann::json::parse(doc);
    CHECK(j["dimension"] == 2);
    CHECK(j["shape"] == nlohmann::json::array({5, 5}));
    bool has_null = false;
    for (const auto& v : j["values"]) has_null |= v.is_null();
    CHECK(has_null);
    GridFn back = grid_from_json(doc);
    CHECK(back.values() == u.values());
    CHECK(back.box()[0].lo == u.box()[0].lo);
}

TEST_CASE("body serialization round trip") {
    EpigraphBody k = EpigraphBody::hull({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
    std::string doc = to_json(k);
    auto j = nlohmann::json::parse(doc);
    CHECK(j["dimension"] == 2);
    CHECK(j["vertices"].size() == 4);
    EpigraphBody back = body_from_json(doc);
    CHECK(hausdorff_distance(back, k) == 0.0);
}
