#include "tfinv/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "tfinv/analysis.hpp"
#include "tfinv/multi_index.hpp"
#include "tfinv/rng.hpp"

namespace tfinv {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) { throw ConfigError("config: " + msg); }

void expect_keys(const json& j, const std::string& where, const std::set<std::string>& allowed) {
    if (!j.is_object()) fail(where + " must be a JSON object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (allowed.count(it.key()) == 0) fail("unknown key '" + it.key() + "' in " + where);
}

double number_at(const json& j, const std::string& key, const std::string& where) {
    const json& v = j.at(key);
    if (!v.is_number()) fail(where + "." + key + " must be a number");
    return v.get<double>();
}

int int_at(const json& j, const std::string& key, const std::string& where) {
    const json& v = j.at(key);
    if (!v.is_number_integer()) fail(where + "." + key + " must be an integer");
    return v.get<int>();
}

std::string string_at(const json& j, const std::string& key, const std::string& where) {
    const json& v = j.at(key);
    if (!v.is_string()) fail(where + "." + key + " must be a string");
    return v.get<std::string>();
}

AxisRange parse_axis(const json& j, const std::string& where) {
    expect_keys(j, where, {"min", "max", "count"});
    AxisRange a;
    a.min = number_at(j, "min", where);
    a.max = number_at(j, "max", where);
    a.count = int_at(j, "count", where);
    if (a.count < 1) fail(where + ".count must be >= 1");
    if (a.max < a.min) fail(where + ".max must be >= min");
    return a;
}

SpaceModel parse_model(const json& j) {
    expect_keys(j, "model", {"kind", "d", "weight", "s"});
    if (!j.contains("kind")) fail("model.kind is required");
    if (!j.contains("d")) fail("model.d is required");
    const std::string kind = string_at(j, "kind", "model");
    if (kind == "weighted_l2") {
        if (!j.contains("weight")) fail("model.weight is required for weighted_l2");
        if (j.contains("s")) fail("model.s is not used by weighted_l2");
    } else if (kind == "sobolev") {
        if (!j.contains("s")) fail("model.s is required for sobolev");
        if (j.contains("weight")) fail("model.weight is not used by sobolev");
    } else if (kind == "plain_l2") {
        if (j.contains("weight") || j.contains("s")) fail("plain_l2 takes no weight or s");
    } else {
        fail("model.kind must be plain_l2, weighted_l2, or sobolev");
    }
    try {
        return SpaceModel::parse(j);
    } catch (const std::exception& e) {
        fail(std::string("bad model: ") + e.what());
    }
}

} // namespace

const char* experiment_name(Experiment e) {
    switch (e) {
        case Experiment::Classify: return "classify";
        case Experiment::BargmannCovariance: return "bargmann-covariance";
        case Experiment::V0Estimate: return "v0-estimate";
        case Experiment::AverageNorm: return "average-norm";
        case Experiment::FullTheoremWitness: return "full-theorem-witness";
    }
    return "?";
}

Experiment parse_experiment(const std::string& s) {
    if (s == "classify") return Experiment::Classify;
    if (s == "bargmann-covariance") return Experiment::BargmannCovariance;
    if (s == "v0-estimate") return Experiment::V0Estimate;
    if (s == "average-norm") return Experiment::AverageNorm;
    if (s == "full-theorem-witness") return Experiment::FullTheoremWitness;
    fail("unknown experiment '" + s + "'");
}

std::vector<double> AxisRange::values() const {
    std::vector<double> out;
    if (count == 1) {
        out.push_back(0.5 * (min + max));
        return out;
    }
    const double step = (max - min) / (count - 1);
    for (int i = 0; i < count; ++i) out.push_back(min + step * i);
    return out;
}

FamilyMember parse_family_member(const std::string& s) {
    FamilyMember m;
    m.id = s;
    const auto colon = s.find(':');
    if (colon == std::string::npos) fail("family member '" + s + "' needs the form name:args");
    const std::string name = s.substr(0, colon);
    const std::string args = s.substr(colon + 1);
    std::istringstream in(args);
    char sep = 0;
    if (name == "hermite") {
        m.kind = FamilyMember::Kind::Hermite;
        if (!(in >> m.hermite_k) || !(in >> std::ws).eof() || m.hermite_k < 0)
            fail("bad hermite member '" + s + "' (want hermite:k, k >= 0)");
    } else if (name == "gaussian") {
        m.kind = FamilyMember::Kind::Gaussian;
        if (!(in >> m.sigma) || !(in >> std::ws).eof() || !(m.sigma > 0.0) || !std::isfinite(m.sigma))
            fail("bad gaussian member '" + s + "' (want gaussian:sigma, sigma > 0)");
    } else if (name == "random") {
        m.kind = FamilyMember::Kind::Random;
        if (!(in >> m.seed >> sep >> m.random_order) || sep != ',' || !(in >> std::ws).eof() ||
            m.random_order < 0)
            fail("bad random member '" + s + "' (want random:seed,N)");
    } else {
        fail("unknown family generator '" + name + "' (want hermite, gaussian, or random)");
    }
    return m;
}

HermiteExpansion member_expansion(const FamilyMember& m, int d, int truncation) {
    switch (m.kind) {
        case FamilyMember::Kind::Hermite: {
            HermiteExpansion c(d, std::max(m.hermite_k, truncation));
            std::vector<int> a(static_cast<std::size_t>(d), 0);
            a[0] = m.hermite_k;
            c.set(MultiIndex(a), {1.0, 0.0});
            return c;
        }
        case FamilyMember::Kind::Gaussian: {
            const GridSpec spec = default_grid_for_order(d, truncation);
            const double sigma = m.sigma;
            const double amp = std::pow(sigma * std::sqrt(M_PI), -0.5 * d);
            GridFunction g = GridFunction::sample(spec, [sigma, amp, d](const std::vector<double>& p) {
                double q = 0.0;
                for (int j = 0; j < d; ++j) q += p[static_cast<std::size_t>(j)] * p[static_cast<std::size_t>(j)];
                return cplx(amp * std::exp(-q / (2.0 * sigma * sigma)), 0.0);
            });
            HermiteExpansion c = analyze(g, truncation);
            /* quadrature noise hides the true zero shells; drop it */
            double peak = 0.0;
            for (const auto& [a, v] : c.coef) peak = std::max(peak, std::abs(v));
            HermiteExpansion clean(d, truncation);
            for (const auto& [a, v] : c.coef)
                if (std::abs(v) > 1e-13 * peak) clean.set(a, v);
            return clean;
        }
        case FamilyMember::Kind::Random: {
            HermiteExpansion c(d, m.random_order);
            Rng rng(m.seed);
            double sq = 0.0;
            for (const MultiIndex& a : indices_up_to(d, m.random_order)) {
                const cplx v = rng.complex_normal();
                c.set(a, v);
                sq += std::norm(v);
            }
            if (sq <= 0.0) throw std::runtime_error("member_expansion: degenerate random draw");
            const double inv = 1.0 / std::sqrt(sq);
            for (auto& [a, v] : c.coef) v *= inv;
            return c;
        }
    }
    throw std::logic_error("member_expansion: bad kind");
}

GridFunction member_grid(const FamilyMember& m, int d, const GridSpec& spec) {
    if (m.kind == FamilyMember::Kind::Gaussian) {
        const double sigma = m.sigma;
        const double amp = std::pow(sigma * std::sqrt(M_PI), -0.5 * d);
        return GridFunction::sample(spec, [sigma, amp, d](const std::vector<double>& p) {
            double q = 0.0;
            for (int j = 0; j < d; ++j) q += p[static_cast<std::size_t>(j)] * p[static_cast<std::size_t>(j)];
            return cplx(amp * std::exp(-q / (2.0 * sigma * sigma)), 0.0);
        });
    }
    return synthesize(member_expansion(m, d, /*truncation=*/0), spec);
}

namespace {

const std::set<std::string> kCommonKeys = {"schema", "experiment", "family", "seed", "workers", "out"};

std::set<std::string> allowed_keys(Experiment e) {
    std::set<std::string> keys = kCommonKeys;
    switch (e) {
        case Experiment::Classify:
            keys.insert({"dimension", "truncation"});
            break;
        case Experiment::BargmannCovariance:
            keys.insert({"dimension", "truncation", "phase_grid", "tolerances"});
            break;
        case Experiment::V0Estimate:
            keys.insert({"model", "truncation", "grid", "phase_grid", "tolerances"});
            break;
        case Experiment::AverageNorm:
            keys.insert({"model", "truncation", "grid", "schedule", "probes"});
            break;
        case Experiment::FullTheoremWitness:
            keys.insert({"model", "truncation", "grid", "schedule", "probes", "phase_grid", "tolerances"});
            break;
    }
    return keys;
}

} // namespace

ExperimentConfig parse_config(const json& j) {
    if (!j.is_object()) fail("top level must be a JSON object");
    if (!j.contains("schema")) fail("'schema' is required");
    if (string_at(j, "schema", "top level") != "tfinv-1") fail("schema must be \"tfinv-1\"");
    if (!j.contains("experiment")) fail("'experiment' is required");

    ExperimentConfig cfg;
    cfg.experiment = parse_experiment(string_at(j, "experiment", "top level"));

    const std::set<std::string> allowed = allowed_keys(cfg.experiment);
    for (auto it = j.begin(); it != j.end(); ++it)
        if (allowed.count(it.key()) == 0)
            fail("key '" + it.key() + "' is unknown or unused by experiment '" +
                 experiment_name(cfg.experiment) + "'");

    if (!j.contains("family")) fail("'family' is required");
    if (!j.at("family").is_array() || j.at("family").empty()) fail("'family' must be a nonempty array");
    for (const json& e : j.at("family")) {
        if (!e.is_string()) fail("family entries must be generator strings");
        cfg.family.push_back(parse_family_member(e.get<std::string>()));
    }

    const bool needs_model = cfg.experiment == Experiment::V0Estimate ||
                             cfg.experiment == Experiment::AverageNorm ||
                             cfg.experiment == Experiment::FullTheoremWitness;
    if (needs_model) {
        if (!j.contains("model")) fail("'model' is required for this experiment");
        cfg.model = parse_model(j.at("model"));
    }
    if (j.contains("dimension")) {
        cfg.dimension = int_at(j, "dimension", "top level");
        if (cfg.dimension < 1) fail("dimension must be >= 1");
    }
    if (j.contains("truncation")) {
        cfg.truncation = int_at(j, "truncation", "top level");
        if (cfg.truncation < 1) fail("truncation must be >= 1");
    }
    if (j.contains("grid")) {
        expect_keys(j.at("grid"), "grid", {"h", "L"});
        if (j.at("grid").contains("h")) cfg.grid_h = number_at(j.at("grid"), "h", "grid");
        if (j.at("grid").contains("L")) cfg.grid_L = number_at(j.at("grid"), "L", "grid");
        if (!(cfg.grid_h > 0.0) || !(cfg.grid_L > 0.0)) fail("grid.h and grid.L must be positive");
    }
    if (j.contains("schedule")) {
        expect_keys(j.at("schedule"), "schedule", {"R0", "doublings", "spacing"});
        if (j.at("schedule").contains("R0")) cfg.schedule_r0 = number_at(j.at("schedule"), "R0", "schedule");
        if (j.at("schedule").contains("doublings"))
            cfg.schedule_doublings = int_at(j.at("schedule"), "doublings", "schedule");
        if (j.at("schedule").contains("spacing"))
            cfg.cube_spacing = number_at(j.at("schedule"), "spacing", "schedule");
        if (!(cfg.schedule_r0 > 0.0)) fail("schedule.R0 must be positive");
        if (cfg.schedule_doublings < 0) fail("schedule.doublings must be >= 0");
        if (!(cfg.cube_spacing > 0.0)) fail("schedule.spacing must be positive");
    }
    if (j.contains("probes")) {
        expect_keys(j.at("probes"), "probes", {"x0", "xi0"});
        if (j.at("probes").contains("x0")) cfg.probe_x = number_at(j.at("probes"), "x0", "probes");
        if (j.at("probes").contains("xi0")) cfg.probe_xi = number_at(j.at("probes"), "xi0", "probes");
    }
    if (j.contains("phase_grid")) {
        expect_keys(j.at("phase_grid"), "phase_grid", {"x", "xi"});
        if (j.at("phase_grid").contains("x")) cfg.phase_x = parse_axis(j.at("phase_grid").at("x"), "phase_grid.x");
        if (j.at("phase_grid").contains("xi"))
            cfg.phase_xi = parse_axis(j.at("phase_grid").at("xi"), "phase_grid.xi");
    } else if (cfg.experiment == Experiment::BargmannCovariance) {
        cfg.phase_x = AxisRange{-2.0, 2.0, 5};
        cfg.phase_xi = AxisRange{-2.0, 2.0, 5};
    } else if (cfg.experiment == Experiment::V0Estimate ||
               cfg.experiment == Experiment::FullTheoremWitness) {
        fail("'phase_grid' is required for this experiment");
    }
    if (j.contains("tolerances")) {
        const json& t = j.at("tolerances");
        if (cfg.experiment == Experiment::BargmannCovariance) {
            expect_keys(t, "tolerances", {"covariance"});
            if (t.contains("covariance")) cfg.tol_covariance = number_at(t, "covariance", "tolerances");
            if (!(cfg.tol_covariance > 0.0)) fail("tolerances.covariance must be positive");
        } else {
            expect_keys(t, "tolerances", {"submult_slack_factor"});
            if (t.contains("submult_slack_factor"))
                cfg.submult_slack_factor = number_at(t, "submult_slack_factor", "tolerances");
            if (!(cfg.submult_slack_factor >= 0.0)) fail("tolerances.submult_slack_factor must be >= 0");
        }
    }
    if (j.contains("seed")) {
        const json& v = j.at("seed");
        if (!v.is_number_unsigned() && !v.is_number_integer()) fail("seed must be a nonnegative integer");
        const std::int64_t s = v.get<std::int64_t>();
        if (s < 0) fail("seed must be a nonnegative integer");
        cfg.seed = static_cast<std::uint64_t>(s);
    }
    if (j.contains("workers")) {
        cfg.workers = int_at(j, "workers", "top level");
        if (cfg.workers < 0) fail("workers must be >= 0");
    }
    if (j.contains("out")) {
        cfg.out = string_at(j, "out", "top level");
        if (cfg.out.empty()) fail("out must be a nonempty path");
    }
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("cannot open config file '" + path + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const std::exception& e) {
        fail("invalid JSON in '" + path + "': " + e.what());
    }
    return parse_config(j);
}

nlohmann::json ExperimentConfig::resolved() const {
    json j;
    j["schema"] = "tfinv-1";
    j["experiment"] = experiment_name(experiment);
    json fam = json::array();
    for (const FamilyMember& m : family) fam.push_back(m.id);
    j["family"] = fam;
    j["seed"] = seed;
    if (model) j["model"] = model->to_json();
    switch (experiment) {
        case Experiment::Classify:
            j["dimension"] = dimension;
            j["truncation"] = truncation;
            break;
        case Experiment::BargmannCovariance:
            j["dimension"] = dimension;
            j["truncation"] = truncation;
            j["phase_grid"] = {{"x", {{"min", phase_x.min}, {"max", phase_x.max}, {"count", phase_x.count}}},
                               {"xi", {{"min", phase_xi.min}, {"max", phase_xi.max}, {"count", phase_xi.count}}}};
            j["tolerances"] = {{"covariance", tol_covariance}};
            break;
        case Experiment::V0Estimate:
            j["truncation"] = truncation;
            j["grid"] = {{"h", grid_h}, {"L", grid_L}};
            j["phase_grid"] = {{"x", {{"min", phase_x.min}, {"max", phase_x.max}, {"count", phase_x.count}}},
                               {"xi", {{"min", phase_xi.min}, {"max", phase_xi.max}, {"count", phase_xi.count}}}};
            j["tolerances"] = {{"submult_slack_factor", submult_slack_factor}};
            break;
        case Experiment::AverageNorm:
            j["truncation"] = truncation;
            j["grid"] = {{"h", grid_h}, {"L", grid_L}};
            j["schedule"] = {{"R0", schedule_r0}, {"doublings", schedule_doublings}, {"spacing", cube_spacing}};
            j["probes"] = {{"x0", probe_x}, {"xi0", probe_xi}};
            break;
        case Experiment::FullTheoremWitness:
            j["truncation"] = truncation;
            j["grid"] = {{"h", grid_h}, {"L", grid_L}};
            j["schedule"] = {{"R0", schedule_r0}, {"doublings", schedule_doublings}, {"spacing", cube_spacing}};
            j["probes"] = {{"x0", probe_x}, {"xi0", probe_xi}};
            j["phase_grid"] = {{"x", {{"min", phase_x.min}, {"max", phase_x.max}, {"count", phase_x.count}}},
                               {"xi", {{"min", phase_xi.min}, {"max", phase_xi.max}, {"count", phase_xi.count}}}};
            j["tolerances"] = {{"submult_slack_factor", submult_slack_factor}};
            break;
    }
    return j;
}

} // namespace tfinv
