#include "tfinv/runner.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>

#include "tfinv/averaging.hpp"
#include "tfinv/bargmann.hpp"
#include "tfinv/estimate.hpp"
#include "tfinv/growth.hpp"
#include "tfinv/io.hpp"

namespace tfinv {

namespace {

using nlohmann::json;

void write_outputs(const ExperimentConfig& cfg, const json& results, const std::string& csv) {
    namespace fs = std::filesystem;
    const fs::path dir(cfg.out);
    fs::create_directories(dir);
    const std::string stem = experiment_name(cfg.experiment);

    json doc;
    doc["schema"] = "tfinv-1";
    doc["experiment"] = stem;
    doc["config"] = cfg.resolved();
    doc["results"] = results;
    std::ofstream jf(dir / (stem + ".json"));
    if (!jf) throw std::runtime_error("run: cannot write output in '" + cfg.out + "'");
    jf << doc.dump(2) << '\n';

    if (!csv.empty()) {
        std::ofstream cf(dir / (stem + ".csv"));
        if (!cf) throw std::runtime_error("run: cannot write output in '" + cfg.out + "'");
        cf << csv;
    }
}

std::vector<double> axis_vector(int d, double v) {
    std::vector<double> out(static_cast<std::size_t>(d), 0.0);
    out[0] = v;
    return out;
}

/* Origin first, then the x-axis sweep, then the xi-axis sweep (coordinate 0
 * carries the displacement; duplicates of the origin are skipped). */
std::vector<PhasePoint> phase_points(const ExperimentConfig& cfg, int d) {
    std::vector<PhasePoint> pts;
    const std::vector<double> zero(static_cast<std::size_t>(d), 0.0);
    pts.push_back(PhasePoint{zero, zero});
    for (double v : cfg.phase_x.values())
        if (v != 0.0) pts.push_back(PhasePoint{axis_vector(d, v), zero});
    for (double v : cfg.phase_xi.values())
        if (v != 0.0) pts.push_back(PhasePoint{zero, axis_vector(d, v)});
    return pts;
}

std::vector<GridFunction> family_grids(const ExperimentConfig& cfg, int d) {
    std::vector<GridFunction> out;
    for (const FamilyMember& m : cfg.family) out.push_back(member_grid(m, d, cfg.grid_spec()));
    return out;
}

std::vector<std::string> family_ids(const ExperimentConfig& cfg) {
    std::vector<std::string> out;
    for (const FamilyMember& m : cfg.family) out.push_back(m.id);
    return out;
}

RunResult run_classify(const ExperimentConfig& cfg) {
    const int d = cfg.dimension;
    json rows = json::array();
    std::string csv = csv_line({"f_id", "class", "margin", "boundary"});
    for (const FamilyMember& m : cfg.family) {
        HermiteExpansion c = member_expansion(m, d, cfg.truncation);
        GrowthProfile p;
        try {
            p = profile(c);
        } catch (const std::exception& e) {
            return {1, "FAIL classify: member '" + m.id + "': " + e.what()};
        }
        const SpaceClass sc = classify(p);
        rows.push_back(json{{"f_id", m.id}, {"class", sc.to_json()}, {"profile", p.to_json()}});
        csv += csv_line({m.id, space_class_name(sc.tag), fmt_g(sc.margin), sc.boundary ? "1" : "0"});
    }
    write_outputs(cfg, json{{"members", rows}}, csv);
    return {0, "classified " + std::to_string(cfg.family.size()) + " member(s)"};
}

RunResult run_covariance(const ExperimentConfig& cfg) {
    const int d = cfg.dimension;
    const std::vector<ComplexPoint> samples = default_covariance_samples(d);
    json rows = json::array();
    std::string csv = csv_line({"f_id", "x", "xi", "max_rel_err"});
    double max_err = 0.0;
    std::string first_fail;
    for (const FamilyMember& m : cfg.family) {
        const HermiteExpansion f = member_expansion(m, d, cfg.truncation);
        for (double xv : cfg.phase_x.values()) {
            for (double xiv : cfg.phase_xi.values()) {
                const double err =
                    covariance_check(f, axis_vector(d, xv), axis_vector(d, xiv), samples, cfg.truncation);
                max_err = std::max(max_err, err);
                rows.push_back(json{{"f_id", m.id}, {"x", xv}, {"xi", xiv}, {"max_rel_err", err}});
                csv += csv_line({m.id, fmt_g(xv), fmt_g(xiv), fmt_g(err)});
                if (err > cfg.tol_covariance && first_fail.empty())
                    first_fail = "f=" + m.id + " x=" + fmt_g(xv) + " xi=" + fmt_g(xiv) +
                                 " err=" + fmt_g(err) + " > tol=" + fmt_g(cfg.tol_covariance);
            }
        }
    }
    const bool pass = first_fail.empty();
    write_outputs(cfg,
                  json{{"max_error", max_err}, {"tolerance", cfg.tol_covariance}, {"pass", pass},
                       {"checks", rows}},
                  csv);
    if (!pass) return {1, "FAIL bargmann-covariance: " + first_fail};
    return {0, "covariance identity holds, max relative error " + fmt_g(max_err)};
}

json submult_json(const SubmultReport& rep, double budget, bool pass) {
    return json{{"defect", rep.defect},
                {"triples", rep.triples},
                {"max_value", rep.max_value},
                {"budget", budget},
                {"pass", pass}};
}

RunResult run_v0(const ExperimentConfig& cfg) {
    const SpaceModel& model = *cfg.model;
    const int d = model.d;
    const WeightEstimate est = estimate_v0(model, family_grids(cfg, d), phase_points(cfg, d));

    std::string first_fail;
    for (std::size_t i = 0; i < est.grid.size(); ++i)
        if (est.displacement[i] == 0.0 && std::abs(est.value[i] - 1.0) > 1e-9) {
            first_fail = "v0(0,0)=" + fmt_g(est.value[i]) + " differs from 1";
            break;
        }
    const std::optional<double> c0 = model.declared_c0();
    if (c0 && first_fail.empty()) {
        for (std::size_t i = 0; i < est.grid.size(); ++i)
            if (est.value[i] > *c0 * (1.0 + 1e-9)) {
                first_fail = "v0 estimate " + fmt_g(est.value[i]) + " at t=" +
                             fmt_g(est.displacement[i]) + " exceeds the declared bound " + fmt_g(*c0);
                break;
            }
    }

    SubmultReport sub;
    bool have_triples = true;
    try {
        sub = submultiplicativity_defect(est);
    } catch (const std::runtime_error&) {
        have_triples = false;
    }
    const double max_v = *std::max_element(est.value.begin(), est.value.end());
    const double budget = cfg.submult_slack_factor * max_v;
    const bool sub_pass = !have_triples || sub.defect <= budget;
    if (have_triples && !sub_pass && first_fail.empty())
        first_fail = "submultiplicativity defect " + fmt_g(sub.defect) + " exceeds budget " + fmt_g(budget);

    const Admissibility verdict = admissibility_verdict(model, est);
    json results{{"estimate", est.to_json()},
                 {"submult", submult_json(sub, budget, sub_pass)},
                 {"verdict", admissibility_name(verdict)},
                 {"pass", first_fail.empty()}};
    write_outputs(cfg, results, est.to_csv());
    if (!first_fail.empty()) return {1, "FAIL v0-estimate: " + first_fail};
    return {0, std::string("verdict=") + admissibility_name(verdict) + " max_v0=" + fmt_g(max_v) +
                   " exp_rate=" + fmt_g(est.exp_fit.slope) + " poly_degree=" + fmt_g(est.poly_fit.slope)};
}

RunResult run_average(const ExperimentConfig& cfg) {
    const SpaceModel& model = *cfg.model;
    const int d = model.d;
    const AveragingReport rep =
        run_schedule(model, family_grids(cfg, d), family_ids(cfg), cfg.schedule_r0,
                     cfg.schedule_doublings, axis_vector(d, cfg.probe_x), axis_vector(d, cfg.probe_xi),
                     cfg.cube_spacing);
    write_outputs(cfg, rep.to_json(), rep.to_csv());
    if (!rep.bracket_ok) {
        for (std::size_t i = 0; i < rep.f_ids.size(); ++i) {
            const double lo = rep.C / rep.C0 * rep.l2_norms[i];
            const double hi = rep.C * rep.C0 * rep.l2_norms[i];
            if (!(rep.h_norms[i] >= lo && rep.h_norms[i] <= hi))
                return {1, "FAIL average-norm: bracket violated for f=" + rep.f_ids[i] + " (norm=" +
                               fmt_g(rep.h_norms[i]) + ", bracket=[" + fmt_g(lo) + "," + fmt_g(hi) + "])"};
        }
        return {1, "FAIL average-norm: bracket violated"};
    }
    return {0, "C=" + fmt_g(rep.C) + " C0=" + fmt_g(rep.C0) + " bracket holds for all members"};
}

RunResult run_witness(const ExperimentConfig& cfg) {
    const SpaceModel& model = *cfg.model;
    const int d = model.d;
    const WeightEstimate est = estimate_v0(model, family_grids(cfg, d), phase_points(cfg, d));
    const Admissibility verdict = admissibility_verdict(model, est);

    if (verdict == Admissibility::Violating) {
        json results{{"verdict", "HYPOTHESIS-VIOLATED"}, {"estimate", est.to_json()}};
        write_outputs(cfg, results, est.to_csv());
        return {0, "HYPOTHESIS-VIOLATED: modulation growth certified (exp_rate=" +
                       fmt_g(est.exp_fit.slope) + ", poly_degree=" + fmt_g(est.poly_fit.slope) +
                       "); averaging stage skipped"};
    }
    if (!model.declared_c0()) {
        json results{{"verdict", "INCONCLUSIVE"}, {"estimate", est.to_json()}};
        write_outputs(cfg, results, est.to_csv());
        return {0, "INCONCLUSIVE: no declared invariance bound and no certified growth; "
                   "averaging stage skipped"};
    }
    if (verdict == Admissibility::Inconclusive) {
        json results{{"verdict", "INCONCLUSIVE"}, {"estimate", est.to_json()}};
        write_outputs(cfg, results, est.to_csv());
        return {1, "FAIL full-theorem-witness: estimated weight exceeds the declared bound " +
                       fmt_g(*model.declared_c0())};
    }

    const AveragingReport rep =
        run_schedule(model, family_grids(cfg, d), family_ids(cfg), cfg.schedule_r0,
                     cfg.schedule_doublings, axis_vector(d, cfg.probe_x), axis_vector(d, cfg.probe_xi),
                     cfg.cube_spacing);
    json results{{"verdict", "ADMISSIBLE"},
                 {"estimate", est.to_json()},
                 {"averaging", rep.to_json()},
                 {"pass", rep.bracket_ok}};
    write_outputs(cfg, results, rep.to_csv());
    if (!rep.bracket_ok) return {1, "FAIL full-theorem-witness: final bracket violated (C=" + fmt_g(rep.C) + ")"};
    return {0, "PASS C=" + fmt_g(rep.C) + " bracket=[" + fmt_g(rep.C / rep.C0) + "," +
                   fmt_g(rep.C * rep.C0) + "] per unit of base norm"};
}

} // namespace

RunResult run_experiment(const ExperimentConfig& cfg) {
    switch (cfg.experiment) {
        case Experiment::Classify: return run_classify(cfg);
        case Experiment::BargmannCovariance: return run_covariance(cfg);
        case Experiment::V0Estimate: return run_v0(cfg);
        case Experiment::AverageNorm: return run_average(cfg);
        case Experiment::FullTheoremWitness: return run_witness(cfg);
    }
    throw std::logic_error("run_experiment: bad experiment");
}

} // namespace tfinv
