#include "tfinv/estimate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tfinv/io.hpp"

namespace tfinv {

namespace {

double vec_norm(const std::vector<double>& v) {
    double s = 0.0;
    for (double t : v) s += t * t;
    return std::sqrt(s);
}

RateFit fit_log_law(const std::vector<double>& feature, const std::vector<double>& logv) {
    RateFit out;
    const std::size_t n = feature.size();
    out.points = n;
    if (n < 2) throw std::invalid_argument("estimate_v0: too few tail points to fit");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += feature[i];
        sy += logv[i];
        sxx += feature[i] * feature[i];
        sxy += feature[i] * logv[i];
    }
    const double denom = n * sxx - sx * sx;
    if (denom <= 0.0) throw std::invalid_argument("estimate_v0: degenerate displacement features");
    out.slope = (n * sxy - sx * sy) / denom;
    out.log_c = (sy - out.slope * sx) / n;
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double e = logv[i] - (out.slope * feature[i] + out.log_c);
        ss += e * e;
    }
    out.residual = std::sqrt(ss / n);
    if (n > 2) {
        const double var_x = sxx - sx * sx / n;
        out.slope_stderr = std::sqrt(ss / (static_cast<double>(n) - 2.0) / var_x);
    }
    return out;
}

std::string join_components(const std::vector<double>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ';';
        out += fmt_g(v[i]);
    }
    return out;
}

} // namespace

WeightEstimate estimate_v0(const SpaceModel& space, const std::vector<GridFunction>& family,
                           const std::vector<PhasePoint>& phase_grid) {
    if (family.empty()) throw std::invalid_argument("estimate_v0: empty test family");
    if (phase_grid.empty()) throw std::invalid_argument("estimate_v0: empty phase grid");

    std::vector<double> base_norm;
    base_norm.reserve(family.size());
    for (const GridFunction& f : family) {
        if (f.dim() != space.d) throw std::invalid_argument("estimate_v0: family dimension mismatch");
        const double n = space.norm(f);
        if (!(n > 0.0)) throw std::invalid_argument("estimate_v0: zero-norm family member");
        base_norm.push_back(n);
    }

    WeightEstimate est;
    est.d = space.d;
    est.grid = phase_grid;
    est.value.reserve(phase_grid.size());
    est.displacement.reserve(phase_grid.size());

    for (const PhasePoint& p : phase_grid) {
        if (static_cast<int>(p.x.size()) != space.d || static_cast<int>(p.xi.size()) != space.d)
            throw std::invalid_argument("estimate_v0: phase point dimension mismatch");
        double best = 0.0;
        for (std::size_t i = 0; i < family.size(); ++i) {
            const ModTranslateResult moved = mod_translate(family[i], p.x, p.xi);
            const double ratio = space.norm(moved.g) / base_norm[i];
            if (ratio > best) best = ratio;
        }
        est.value.push_back(best);
        est.displacement.push_back(vec_norm(p.x) + vec_norm(p.xi));
    }

    /* tail fits on the upper half of the distinct displacement magnitudes */
    std::vector<double> distinct = est.displacement;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end(),
                               [](double a, double b) { return std::abs(a - b) < 1e-12; }),
                   distinct.end());
    const double cutoff = distinct[distinct.size() / 2];

    std::vector<double> t_tail, logt_tail, logv_tail;
    for (std::size_t i = 0; i < est.value.size(); ++i) {
        if (est.displacement[i] >= cutoff - 1e-12) {
            t_tail.push_back(est.displacement[i]);
            logt_tail.push_back(std::log1p(est.displacement[i]));
            logv_tail.push_back(std::log(est.value[i]));
        }
    }
    est.exp_fit = fit_log_law(t_tail, logv_tail);
    est.poly_fit = fit_log_law(logt_tail, logv_tail);

    const bool exp_real = est.exp_fit.slope > 0.01 &&
                          est.exp_fit.slope > 3.0 * est.exp_fit.slope_stderr;
    const bool poly_real = est.poly_fit.slope > 0.2 &&
                           est.poly_fit.slope > 3.0 * est.poly_fit.slope_stderr;
    est.growth_certified = exp_real && poly_real;
    return est;
}

SubmultReport submultiplicativity_defect(const WeightEstimate& est) {
    const std::size_t n = est.grid.size();
    const int d = est.d;
    SubmultReport rep;
    for (double v : est.value) rep.max_value = std::max(rep.max_value, v);

    const auto matches = [d](const PhasePoint& a, const PhasePoint& b, const PhasePoint& sum) {
        for (int j = 0; j < d; ++j) {
            const auto k = static_cast<std::size_t>(j);
            if (std::abs(a.x[k] + b.x[k] - sum.x[k]) > 1e-12) return false;
            if (std::abs(a.xi[k] + b.xi[k] - sum.xi[k]) > 1e-12) return false;
        }
        return true;
    };

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) { // unordered pairs: v0(p)v0(q) symmetric
            for (std::size_t k = 0; k < n; ++k) {
                if (i == k && j == k) continue; // skip the degenerate self-sum 0+0=0
                if (!matches(est.grid[i], est.grid[j], est.grid[k])) continue;
                ++rep.triples;
                const double gap = est.value[k] - est.value[i] * est.value[j];
                if (gap > rep.defect) rep.defect = gap;
            }
        }
    }
    if (rep.triples == 0)
        throw std::runtime_error("submultiplicativity_defect: no sum-closed triples in the grid");
    return rep;
}

const char* admissibility_name(Admissibility a) {
    switch (a) {
    case Admissibility::Admissible: return "Admissible";
    case Admissibility::Violating: return "Violating";
    case Admissibility::Inconclusive: return "Inconclusive";
    }
    throw std::logic_error("admissibility_name: bad value");
}

Admissibility admissibility_verdict(const SpaceModel& space, const WeightEstimate& est) {
    const std::optional<double> c0 = space.declared_c0();
    if (c0) {
        for (double v : est.value)
            if (v > *c0 * (1.0 + 1e-9)) return Admissibility::Inconclusive;
        return Admissibility::Admissible;
    }
    return est.growth_certified ? Admissibility::Violating : Admissibility::Inconclusive;
}

nlohmann::json WeightEstimate::to_json() const {
    nlohmann::json points = nlohmann::json::array();
    for (std::size_t i = 0; i < grid.size(); ++i) {
        points.push_back({{"x", grid[i].x},
                          {"xi", grid[i].xi},
                          {"t", displacement[i]},
                          {"v0", value[i]}});
    }
    const auto fit_json = [](const RateFit& f) {
        return nlohmann::json{{"log_c", f.log_c},
                              {"slope", f.slope},
                              {"residual", f.residual},
                              {"slope_stderr", f.slope_stderr},
                              {"points", f.points}};
    };
    return {{"dimension", d},
            {"points", points},
            {"exp_fit", fit_json(exp_fit)},
            {"poly_fit", fit_json(poly_fit)},
            {"growth_certified", growth_certified}};
}

std::string WeightEstimate::to_csv() const {
    std::string out = "x,xi,t,v0\n";
    for (std::size_t i = 0; i < grid.size(); ++i) {
        out += csv_line({join_components(grid[i].x), join_components(grid[i].xi),
                         fmt_g(displacement[i]), fmt_g(value[i])});
    }
    return out;
}

} // namespace tfinv
