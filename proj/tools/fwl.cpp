#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "fwl/scenario.hpp"

namespace {

std::vector<fwl::Scenario> load_suite(const std::string& suite) {
    if (suite == "standard") return fwl::standard_suite();
    std::ifstream in(suite);
    if (!in) throw fwl::ConfigError("cannot open config '" + suite + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return fwl::parse_scenarios(buf.str());
}

void emit(const std::string& text, const std::string& out_dir, const std::string& filename) {
    if (out_dir.empty()) {
        std::cout << text;
        return;
    }
    std::filesystem::create_directories(out_dir);
    std::ofstream f(std::filesystem::path(out_dir) / filename);
    f << text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"functional Wulff laboratory: first-variation verification"};
    app.require_subcommand(1);

    std::string suite = "standard";
    std::vector<std::string> scenario_names;
    int grid = 0;
    int steps = -1;
    double tol = -1.0;
    std::uint64_t seed = 20240901;
    std::string format = "csv";
    std::string out_dir;
    std::vector<int> grids{64, 128, 256, 512};

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--suite", suite, "'standard' or a path to a config document");
        cmd->add_option("--scenario", scenario_names, "restrict to named scenarios");
        cmd->add_option("--grid", grid, "override the grid resolution");
        cmd->add_option("--steps", steps, "finite-difference ladder halvings");
        cmd->add_option("--tol", tol, "override the pass tolerance");
        cmd->add_option("--seed", seed, "seed recorded with stochastic estimates");
        cmd->add_option("--format", format, "csv or json-like")
            ->check(CLI::IsMember({"csv", "json-like"}));
        cmd->add_option("--out", out_dir, "output directory (stdout when absent)");
    };

    CLI::App* run = app.add_subcommand("run", "execute scenarios and report pass/fail");
    add_common(run);
    CLI::App* conv = app.add_subcommand("convergence", "error vs resolution study");
    add_common(conv);
    conv->add_option("--grids", grids, "resolution ladder")->delimiter(',');
    CLI::App* list = app.add_subcommand("list", "list scenario names");
    list->add_option("--suite", suite, "'standard' or a path to a config document");

    CLI11_PARSE(app, argc, argv);

    try {
        auto scenarios = load_suite(suite);

        if (list->parsed()) {
            for (const auto& s : scenarios)
                std::cout << s.name << "\t" << s.kind << "\t" << s.label << "\n";
            return 0;
        }

        fwl::RunOptions opts;
        opts.filter = scenario_names;
        opts.overrides.grid = grid;
        if (steps >= 0) opts.overrides.steps = steps;
        if (tol > 0) opts.overrides.tol = tol;
        opts.seed = seed;

        if (run->parsed()) {
            auto reports = fwl::run_scenarios(scenarios, opts);
            if (format == "csv")
                emit(fwl::reports_to_csv(scenarios, reports, opts), out_dir, "results.csv");
            else
                emit(fwl::reports_to_json(reports) + "\n", out_dir, "results.json");
            for (const auto& r : reports)
                if (!r.pass) {
                    std::cerr << "tolerance failure: " << r.scenario << "\n";
                    return 1;
                }
            return 0;
        }

        // convergence
        if (scenario_names.size() != 1)
            throw fwl::ConfigError("convergence needs exactly one --scenario");
        const fwl::Scenario* target = nullptr;
        for (const auto& s : scenarios)
            if (s.name == scenario_names.front()) target = &s;
        if (!target) throw fwl::ConfigError("unknown scenario '" + scenario_names.front() + "'");
        auto table = fwl::convergence_study(*target, grids);
        emit(fwl::convergence_to_csv(table), out_dir, "convergence.csv");
        return 0;
    } catch (const fwl::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
