#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fwl/variation.hpp"

namespace fwl {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ScenarioOverrides {
    int grid = 0;                 // > 0 replaces the scenario's grid size
    std::optional<int> steps;     // FD ladder halvings
    std::optional<double> tol;    // pass threshold
};

struct Scenario {
    std::string name;
    std::string kind;
    std::string label;  // which identity the scenario verifies
    bool grid_track = false;
    int default_grid = 0;
    TolKind tol_kind = TolKind::Abs;
    double tol = 0.0;
    std::function<VariationReport(const ScenarioOverrides&)> run;
};

// Built-in suite: the named 1D identities, the mu_q family, the polygon
// lemmas, and the 2D grid scenario.
std::vector<Scenario> standard_suite();

// Parse a config document {"scenarios": [...]}. Unknown keys are errors.
std::vector<Scenario> parse_scenarios(const std::string& json_text);

struct RunOptions {
    std::vector<std::string> filter;  // empty = run everything
    ScenarioOverrides overrides;
    std::uint64_t seed = 20240901;
    int threads = 0;  // 0 = FWL_THREADS env or hardware concurrency
};

// Worker-pool execution; reports come back in suite order.
std::vector<VariationReport> run_scenarios(const std::vector<Scenario>& suite,
                                           const RunOptions& opts);

std::string reports_to_csv(const std::vector<Scenario>& suite,
                           const std::vector<VariationReport>& reports,
                           const RunOptions& opts);
std::string reports_to_json(const std::vector<VariationReport>& reports);

struct ConvergenceRow {
    int grid;
    double abs_err;
    double rel_err;
};
struct ConvergenceTable {
    std::vector<ConvergenceRow> rows;
    std::string fitted_order;  // "n/a" for ladders shorter than 2
};

ConvergenceTable convergence_study(const Scenario& s, const std::vector<int>& grids);
std::string convergence_to_csv(const ConvergenceTable& t);

}  // namespace fwl
