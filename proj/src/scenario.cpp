#include "fwl/scenario.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <thread>

#include <json.hpp>

namespace fwl {

namespace {

using nlohmann::json;

void require_keys(const json& j, std::initializer_list<const char*> allowed,
                  const std::string& ctx) {
    for (const auto& [key, value] : j.items()) {
        (void)value;
        bool ok = false;
        for (const char* a : allowed)
            if (key == a) ok = true;
        if (!ok) throw ConfigError("unknown key '" + key + "' in " + ctx);
    }
}

double num(const json& j, const char* key, std::optional<double> fallback = std::nullopt) {
    if (!j.contains(key)) {
        if (fallback) return *fallback;
        throw ConfigError(std::string("missing key '") + key + "'");
    }
    return j.at(key).get<double>();
}

PolyhedralFn parse_u1(const json& j) {
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "indicator") {
        require_keys(j, {"kind", "lo", "hi", "value"}, "u atom 'indicator'");
        return PolyhedralFn::indicator(num(j, "lo"), num(j, "hi"), num(j, "value", 0.0));
    }
    if (kind == "quadratic") {
        require_keys(j, {"kind", "lo", "hi", "nodes", "coeff"}, "u atom 'quadratic'");
        double c = num(j, "coeff", 1.0);
        int nodes = static_cast<int>(num(j, "nodes", 2001.0));
        return PolyhedralFn::sample([c](double x) { return c * x * x; }, num(j, "lo"),
                                    num(j, "hi"), nodes);
    }
    if (kind == "max_affine") {
        require_keys(j, {"kind", "lines", "lo", "hi"}, "u atom 'max_affine'");
        double lo = num(j, "lo"), hi = num(j, "hi");
        auto f = [lines = j.at("lines")](double x) {
            double best = -kInf;
            for (const auto& l : lines)
                best = std::max(best, l.at(0).get<double>() * x + l.at(1).get<double>());
            return best;
        };
        std::vector<PolyhedralFn::Generator> gens;
        // breakpoints of a max-of-affine lie at pairwise crossings
        std::vector<double> xs{lo, hi};
        for (size_t a = 0; a < j.at("lines").size(); ++a)
            for (size_t b = a + 1; b < j.at("lines").size(); ++b) {
                double a0 = j.at("lines").at(a).at(0).get<double>();
                double b0 = j.at("lines").at(a).at(1).get<double>();
                double a1 = j.at("lines").at(b).at(0).get<double>();
                double b1 = j.at("lines").at(b).at(1).get<double>();
                if (a0 == a1) continue;
                double x = (b1 - b0) / (a0 - a1);
                if (x > lo && x < hi) xs.push_back(x);
            }
        for (double x : xs) gens.push_back({x, f(x)});
        return PolyhedralFn::canonicalize(std::move(gens));
    }
    throw ConfigError("unknown u atom kind '" + kind + "'");
}

Perturbation parse_zeta(const json& j) {
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "support") {
        if (j.contains("points")) {
            require_keys(j, {"kind", "points"}, "zeta atom 'support'");
            std::vector<std::array<double, 2>> pts;
            for (const auto& p : j.at("points"))
                pts.push_back({p.at(0).get<double>(),
                               p.size() > 1 ? p.at(1).get<double>() : 0.0});
            return Perturbation::support(std::move(pts));
        }
        require_keys(j, {"kind", "lo", "hi"}, "zeta atom 'support'");
        return Perturbation::support(num(j, "lo"), num(j, "hi"));
    }
    if (kind == "norm") {
        require_keys(j, {"kind", "coeff"}, "zeta atom 'norm'");
        return Perturbation::norm(num(j, "coeff", 1.0));
    }
    if (kind == "constant") {
        require_keys(j, {"kind", "value"}, "zeta atom 'constant'");
        return Perturbation::constant(num(j, "value"));
    }
    if (kind == "soft_norm") {
        require_keys(j, {"kind"}, "zeta atom 'soft_norm'");
        return Perturbation::soft_norm();
    }
    if (kind == "sum") {
        require_keys(j, {"kind", "terms"}, "zeta atom 'sum'");
        std::vector<Perturbation> terms;
        for (const auto& t : j.at("terms")) terms.push_back(parse_zeta(t));
        return Perturbation::sum(std::move(terms));
    }
    throw ConfigError("unknown zeta atom kind '" + kind + "'");
}

WeightSpec parse_weight(const json& j) {
    require_keys(j, {"phi", "psi", "q"}, "weight");
    std::optional<double> q;
    if (j.contains("q") && !j.at("q").is_null()) q = j.at("q").get<double>();
    auto psi = WeightSpec::PsiKind::One;
    if (j.contains("psi")) {
        std::string p = j.at("psi").get<std::string>();
        if (p == "gauss")
            psi = WeightSpec::PsiKind::Gauss;
        else if (p != "one")
            throw ConfigError("unknown psi '" + p + "'");
    }
    if (j.contains("phi") && j.at("phi").is_object()) {
        const json& t = j.at("phi");
        require_keys(t, {"table"}, "weight.phi");
        std::vector<double> z, phi;
        for (const auto& row : t.at("table")) {
            z.push_back(row.at(0).get<double>());
            phi.push_back(row.at(1).get<double>());
        }
        return WeightSpec::tabulated(std::move(z), std::move(phi), psi, q);
    }
    if (j.contains("phi") && j.at("phi").get<std::string>() != "exp")
        throw ConfigError("unknown phi '" + j.at("phi").get<std::string>() + "'");
    return WeightSpec::exp_weight(psi, q);
}

SphericalFn parse_f(const json& j) {
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "constant") {
        require_keys(j, {"kind", "value"}, "f atom 'constant'");
        double v = num(j, "value");
        return [v](Vec2) { return v; };
    }
    if (kind == "support") {
        require_keys(j, {"kind", "points"}, "f atom 'support'");
        std::vector<Vec2> pts;
        for (const auto& p : j.at("points"))
            pts.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
        return [pts](Vec2 nu) {
            double best = -kInf;
            for (const Vec2& p : pts) best = std::max(best, p.dot(nu));
            return best;
        };
    }
    if (kind == "linear") {
        require_keys(j, {"kind", "base", "ax", "az"}, "f atom 'linear'");
        double base = num(j, "base"), ax = num(j, "ax", 0.0), az = num(j, "az", 0.0);
        return [=](Vec2 nu) { return base + ax * nu.x + az * nu.z; };
    }
    throw ConfigError("unknown f atom kind '" + kind + "'");
}

EpigraphBody parse_polygon(const json& j) {
    std::vector<Vec2> verts;
    for (const auto& p : j) verts.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
    return EpigraphBody::hull(std::move(verts));
}

FdLadder parse_ladder(const json& parent) {
    FdLadder l;
    if (parent.contains("ladder")) {
        const json& j = parent.at("ladder");
        require_keys(j, {"h0", "halvings"}, "ladder");
        l.h0 = num(j, "h0", l.h0);
        l.halvings = static_cast<int>(num(j, "halvings", l.halvings));
    }
    return l;
}

TolKind parse_tol_kind(const json& j, TolKind fallback) {
    if (!j.contains("tol_kind")) return fallback;
    std::string k = j.at("tol_kind").get<std::string>();
    if (k == "abs") return TolKind::Abs;
    if (k == "rel") return TolKind::Rel;
    throw ConfigError("unknown tol_kind '" + k + "'");
}

FdLadder with_steps(FdLadder l, const ScenarioOverrides& ov) {
    if (ov.steps) l.halvings = *ov.steps;
    return l;
}

Scenario parse_one(const json& j) {
    if (!j.contains("name") || !j.contains("kind"))
        throw ConfigError("scenario needs 'name' and 'kind'");
    Scenario s;
    s.name = j.at("name").get<std::string>();
    s.kind = j.at("kind").get<std::string>();
    s.label = j.contains("label") ? j.at("label").get<std::string>() : "";
    std::string ctx = "scenario '" + s.name + "'";

    if (s.kind == "first_variation") {
        require_keys(j, {"name", "kind", "label", "u", "zeta", "weight", "mode", "tol",
                         "tol_kind", "ladder"},
                     ctx);
        PolyhedralFn u = parse_u1(j.at("u"));
        Perturbation zeta = parse_zeta(j.at("zeta"));
        WeightSpec w = j.contains("weight") ? parse_weight(j.at("weight"))
                                           : WeightSpec::exp_weight();
        DerivativeMode mode = DerivativeMode::TwoSided;
        if (j.contains("mode")) {
            std::string m = j.at("mode").get<std::string>();
            if (m == "one_sided")
                mode = DerivativeMode::OneSided;
            else if (m != "two_sided")
                throw ConfigError("unknown mode '" + m + "'");
        }
        s.tol = num(j, "tol", 1e-9);
        s.tol_kind = parse_tol_kind(j, TolKind::Abs);
        FdLadder ladder = parse_ladder(j);
        auto name = s.name;
        auto tol_kind = s.tol_kind;
        auto tol = s.tol;
        s.run = [=](const ScenarioOverrides& ov) {
            return first_variation_report(name, u, zeta, w, mode, ov.tol.value_or(tol),
                                          tol_kind, with_steps(ladder, ov));
        };
        return s;
    }
    if (s.kind == "rotem" || s.kind == "dual") {
        require_keys(j, {"name", "kind", "label", "u", "v", "q", "tol", "ladder"}, ctx);
        PolyhedralFn u = parse_u1(j.at("u"));
        PolyhedralFn v = parse_u1(j.at("v"));
        s.tol = num(j, "tol", 1e-8);
        FdLadder ladder = parse_ladder(j);
        auto name = s.name;
        auto tol = s.tol;
        if (s.kind == "dual") {
            double q = num(j, "q");
            s.run = [=](const ScenarioOverrides& ov) {
                return dual_check(name, u, v, q, ov.tol.value_or(tol), with_steps(ladder, ov));
            };
        } else {
            if (j.contains("q")) throw ConfigError("'q' is only valid for kind 'dual'");
            s.run = [=](const ScenarioOverrides& ov) {
                return rotem_check(name, u, v, ov.tol.value_or(tol), with_steps(ladder, ov));
            };
        }
        return s;
    }
    if (s.kind == "aleksandrov") {
        require_keys(j, {"name", "kind", "label", "polygon", "f", "directions", "tol",
                         "ladder"},
                     ctx);
        EpigraphBody k = parse_polygon(j.at("polygon"));
        SphericalFn f = parse_f(j.at("f"));
        int dirs = static_cast<int>(num(j, "directions", 4096.0));
        s.tol = num(j, "tol", 1e-4);
        FdLadder ladder = parse_ladder(j);
        auto name = s.name;
        auto tol = s.tol;
        s.run = [=](const ScenarioOverrides& ov) {
            return aleksandrov_polytope(name, k, f, ov.tol.value_or(tol), dirs,
                                        with_steps(ladder, ov));
        };
        return s;
    }
    if (s.kind == "weighted_aleksandrov") {
        require_keys(j, {"name", "kind", "label", "polygon", "f", "density", "q",
                         "directions", "tol", "tol_kind", "ladder"},
                     ctx);
        EpigraphBody k = parse_polygon(j.at("polygon"));
        SphericalFn f = parse_f(j.at("f"));
        std::string dens = j.contains("density") ? j.at("density").get<std::string>() : "one";
        Density2 density;
        if (dens == "exp_z")
            density = [](double, double z) { return std::exp(-z); };
        else if (dens == "one")
            density = [](double, double) { return 1.0; };
        else
            throw ConfigError("unknown density '" + dens + "'");
        std::optional<double> q;
        if (j.contains("q") && !j.at("q").is_null()) q = j.at("q").get<double>();
        int dirs = static_cast<int>(num(j, "directions", 4096.0));
        s.tol = num(j, "tol", 1e-3);
        s.tol_kind = parse_tol_kind(j, TolKind::Rel);
        FdLadder ladder = parse_ladder(j);
        auto name = s.name;
        auto tol = s.tol;
        auto tol_kind = s.tol_kind;
        s.run = [=](const ScenarioOverrides& ov) {
            return kryvonos_langharst(name, k, f, density, q, ov.tol.value_or(tol), tol_kind,
                                      dirs, with_steps(ladder, ov));
        };
        return s;
    }
    if (s.kind == "grid2d") {
        require_keys(j, {"name", "kind", "label", "u", "zeta", "weight", "grid", "box",
                         "tol", "ladder"},
                     ctx);
        const json& uj = j.at("u");
        if (uj.at("kind").get<std::string>() != "quadratic2d")
            throw ConfigError("grid2d supports u kind 'quadratic2d'");
        require_keys(uj, {"kind", "half"}, "u atom 'quadratic2d'");
        double half = num(uj, "half", 1.0);
        Perturbation zeta = parse_zeta(j.at("zeta"));
        WeightSpec w = j.contains("weight") ? parse_weight(j.at("weight"))
                                            : WeightSpec::exp_weight();
        s.grid_track = true;
        s.default_grid = static_cast<int>(num(j, "grid", 256.0));
        double box = num(j, "box", half * 1.1);
        s.tol = num(j, "tol", 0.02);
        s.tol_kind = TolKind::Rel;
        FdLadder ladder = parse_ladder(j);
        auto name = s.name;
        auto tol = s.tol;
        int dg = s.default_grid;
        s.run = [=](const ScenarioOverrides& ov) {
            int n = ov.grid > 0 ? ov.grid : dg;
            GridFn u = GridFn::sample(
                2, {Interval{-half, half}, Interval{-half, half}}, {n, n},
                [](double x, double y) { return x * x + y * y; });
            EpigraphBody dom0 = EpigraphBody::hull(
                {{-half, -half}, {half, -half}, {half, half}, {-half, half}});
            std::array<Interval, 2> pbox{Interval{-box, box}, Interval{-box, box}};
            return grid_first_variation(name, u, zeta, w, dom0, pbox, {n, n},
                                        ov.tol.value_or(tol), 1024, with_steps(ladder, ov));
        };
        return s;
    }
    throw ConfigError("unknown scenario kind '" + s.kind + "'");
}

constexpr const char* kStandardSuite = R"JSON({
  "scenarios": [
    {"name": "indicator_norm", "kind": "first_variation",
     "label": "first variation, indicator with norm data",
     "u": {"kind": "indicator", "lo": -1, "hi": 1},
     "zeta": {"kind": "norm", "coeff": 1},
     "weight": {"phi": "exp", "psi": "one", "q": null},
     "mode": "two_sided", "tol": 1e-9},
    {"name": "indicator_constant", "kind": "first_variation",
     "label": "first variation, constant data",
     "u": {"kind": "indicator", "lo": -1, "hi": 1},
     "zeta": {"kind": "constant", "value": 1},
     "weight": {"phi": "exp", "psi": "one", "q": null},
     "mode": "two_sided", "tol": 1e-9},
    {"name": "quadratic_norm", "kind": "first_variation",
     "label": "first variation, quadratic cap with norm data",
     "u": {"kind": "quadratic", "lo": -1, "hi": 1, "nodes": 2001},
     "zeta": {"kind": "norm", "coeff": 1},
     "weight": {"phi": "exp", "psi": "one", "q": null},
     "mode": "one_sided", "tol": 1e-9,
     "ladder": {"h0": 0.04, "halvings": 4}},
    {"name": "muq_q05", "kind": "dual", "label": "mu_q variation, q = 0.5",
     "u": {"kind": "indicator", "lo": -1, "hi": 1},
     "v": {"kind": "indicator", "lo": -1, "hi": 1}, "q": 0.5, "tol": 1e-8},
    {"name": "muq_q1", "kind": "dual", "label": "mu_q variation, q = 1",
     "u": {"kind": "indicator", "lo": -1, "hi": 1},
     "v": {"kind": "indicator", "lo": -1, "hi": 1}, "q": 1, "tol": 1e-8},
    {"name": "muq_q2", "kind": "dual", "label": "mu_q variation, q = 2",
     "u": {"kind": "indicator", "lo": -1, "hi": 1},
     "v": {"kind": "indicator", "lo": -1, "hi": 1}, "q": 2, "tol": 1e-8},
    {"name": "rotem_quadratic", "kind": "rotem",
     "label": "inf-convolution variation, quadratic cap",
     "u": {"kind": "quadratic", "lo": -1, "hi": 1, "nodes": 2001},
     "v": {"kind": "indicator", "lo": -1, "hi": 1}, "tol": 1e-8},
    {"name": "square_flow", "kind": "aleksandrov",
     "label": "Aleksandrov lemma, unit square with constant data",
     "polygon": [[0, 0], [1, 0], [1, 1], [0, 1]],
     "f": {"kind": "constant", "value": 1}, "directions": 4096, "tol": 1e-4},
    {"name": "square_flow_self", "kind": "aleksandrov",
     "label": "Aleksandrov lemma, homothety",
     "polygon": [[0, 0], [1, 0], [1, 1], [0, 1]],
     "f": {"kind": "support", "points": [[0, 0], [1, 0], [1, 1], [0, 1]]},
     "directions": 4096, "tol": 1e-4},
    {"name": "square_weighted", "kind": "weighted_aleksandrov",
     "label": "weighted Aleksandrov, exponential vertical density",
     "polygon": [[0, 0], [1, 0], [1, 1], [0, 1]],
     "f": {"kind": "constant", "value": 1}, "density": "exp_z",
     "directions": 4096, "tol": 1e-3, "tol_kind": "rel"},
    {"name": "grid2d_quadratic", "kind": "grid2d",
     "label": "first variation on the plane, quadratic cap with support data",
     "u": {"kind": "quadratic2d", "half": 1},
     "zeta": {"kind": "support", "points": [[-1, -1], [1, -1], [1, 1], [-1, 1]]},
     "weight": {"phi": "exp", "psi": "one", "q": null},
     "grid": 256, "box": 1.1, "tol": 0.02}
  ]
})JSON";

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

}  // namespace

std::vector<Scenario> parse_scenarios(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    try {
        require_keys(j, {"scenarios"}, "config root");
        std::vector<Scenario> out;
        for (const auto& sj : j.at("scenarios")) out.push_back(parse_one(sj));
        return out;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config structure error: ") + e.what());
    }
}

std::vector<Scenario> standard_suite() { return parse_scenarios(kStandardSuite); }

std::vector<VariationReport> run_scenarios(const std::vector<Scenario>& suite,
                                           const RunOptions& opts) {
    std::vector<const Scenario*> selected;
    if (opts.filter.empty()) {
        for (const auto& s : suite) selected.push_back(&s);
    } else {
        for (const auto& want : opts.filter) {
            const Scenario* found = nullptr;
            for (const auto& s : suite)
                if (s.name == want) found = &s;
            if (!found) throw ConfigError("unknown scenario '" + want + "'");
            selected.push_back(found);
        }
    }

    int threads = opts.threads;
    if (threads <= 0) {
        if (const char* env = std::getenv("FWL_THREADS")) threads = std::atoi(env);
        if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
        if (threads <= 0) threads = 1;
    }
    threads = std::min<int>(threads, static_cast<int>(selected.size()));
    threads = std::max(threads, 1);

    std::vector<VariationReport> reports(selected.size());
    std::vector<std::string> errors(selected.size());
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= selected.size()) break;
            try {
                reports[i] = selected[i]->run(opts.overrides);
            } catch (const std::exception& e) {
                errors[i] = e.what();
            }
        }
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    for (size_t i = 0; i < errors.size(); ++i)
        if (!errors[i].empty())
            throw std::runtime_error("scenario '" + selected[i]->name + "': " + errors[i]);
    return reports;
}

std::string reports_to_csv(const std::vector<Scenario>& suite,
                           const std::vector<VariationReport>& reports,
                           const RunOptions& opts) {
    std::string out =
        "scenario,mode,grid,h,lhs,rhs_bulk,rhs_boundary,rhs_total,abs_err,rel_err,pass,"
        "runtime_ms\n";
    for (const auto& r : reports) {
        int grid = 0;
        for (const auto& s : suite)
            if (s.name == r.scenario && s.grid_track)
                grid = opts.overrides.grid > 0 ? opts.overrides.grid : s.default_grid;
        double h = r.ladder.empty() ? 0.0 : r.ladder.back().h;
        out += r.scenario + "," + r.mode + "," + std::to_string(grid) + "," + fmt(h) + "," +
               fmt(r.lhs) + "," + fmt(r.rhs_bulk) + "," + fmt(r.rhs_boundary) + "," +
               fmt(r.rhs_total) + "," + fmt(r.abs_err) + "," + fmt(r.rel_err) + "," +
               (r.pass ? "true" : "false") + "," + fmt(r.runtime_ms) + "\n";
    }
    return out;
}

std::string reports_to_json(const std::vector<VariationReport>& reports) {
    json arr = json::array();
    for (const auto& r : reports) {
        json lad = json::array();
        for (const auto& p : r.ladder) lad.push_back({p.h, p.estimate});
        json obj;
        obj["scenario"] = r.scenario;
        obj["mode"] = r.mode;
        obj["ladder"] = std::move(lad);
        obj["lhs"] = r.lhs;
        obj["rhs_bulk"] = r.rhs_bulk;
        obj["rhs_boundary"] = r.rhs_boundary;
        obj["rhs_total"] = r.rhs_total;
        obj["abs_err"] = r.abs_err;
        obj["rel_err"] = r.rel_err;
        obj["pass"] = r.pass;
        arr.push_back(std::move(obj));
    }
    return arr.dump(2);
}

ConvergenceTable convergence_study(const Scenario& s, const std::vector<int>& grids) {
    ConvergenceTable t;
    if (!s.grid_track) {
        VariationReport r = s.run({});
        t.rows.push_back({0, r.abs_err, r.rel_err});
        t.fitted_order = "n/a";
        return t;
    }
    for (int g : grids) {
        ScenarioOverrides ov;
        ov.grid = g;
        VariationReport r = s.run(ov);
        t.rows.push_back({g, r.abs_err, r.rel_err});
    }
    if (t.rows.size() < 2) {
        t.fitted_order = "n/a";
        return t;
    }
    // least-squares slope of log(err) against log(1/grid)
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (const auto& row : t.rows) {
        if (row.rel_err <= 0) continue;
        double x = -std::log(static_cast<double>(row.grid));
        double y = std::log(row.rel_err);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    if (n < 2) {
        t.fitted_order = "n/a";
        return t;
    }
    double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", slope);
    t.fitted_order = buf;
    return t;
}

std::string convergence_to_csv(const ConvergenceTable& t) {
    std::string out = "grid,abs_err,rel_err,fitted_order\n";
    for (size_t i = 0; i < t.rows.size(); ++i) {
        const auto& r = t.rows[i];
        out += std::to_string(r.grid) + "," + fmt(r.abs_err) + "," + fmt(r.rel_err) + "," +
               (i + 1 == t.rows.size() ? t.fitted_order : "") + "\n";
    }
    return out;
}

}  // namespace fwl
