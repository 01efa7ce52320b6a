#include "tfinv/growth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "tfinv/multi_index.hpp"

namespace tfinv {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double half_log_min_shell_factorial(int d, int n) { return 0.5 * log_min_factorial_on_shell(d, n); }
double half_log_max_shell_factorial(int d, int n) { return 0.5 * log_max_factorial_on_shell(d, n); }

/* slope(upper sub-window) - slope(lower sub-window) of z against a */
double slope_drift(const std::vector<double>& a, const std::vector<double>& z) {
    const std::size_t half = a.size() / 2;
    const std::vector<double> a1(a.begin(), a.begin() + half), a2(a.begin() + half, a.end());
    const std::vector<double> z1(z.begin(), z.begin() + half), z2(z.begin() + half, z.end());
    return fit_line(a2, z2).slope - fit_line(a1, z1).slope;
}

} // namespace

const char* space_class_name(SpaceClassTag t) {
    switch (t) {
    case SpaceClassTag::HFlat: return "H_flat";
    case SpaceClassTag::Sigma1: return "Sigma1";
    case SpaceClassTag::Schwartz: return "Schwartz";
    case SpaceClassTag::SchwartzDual: return "SchwartzDual";
    case SpaceClassTag::Sigma1Dual: return "Sigma1Dual";
    case SpaceClassTag::HFlatDual: return "H_flatDual";
    case SpaceClassTag::Unbounded: return "Unbounded";
    }
    throw std::logic_error("space_class_name: bad tag");
}

FitResult fit_line(const std::vector<double>& a, const std::vector<double>& z) {
    const std::size_t n = a.size();
    if (n != z.size() || n < 2) throw std::invalid_argument("fit_line: need >= 2 matched points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += a[i];
        sy += z[i];
        sxx += a[i] * a[i];
        sxy += a[i] * z[i];
    }
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) throw std::invalid_argument("fit_line: degenerate abscissae");
    FitResult r;
    r.slope = (n * sxy - sx * sy) / denom;
    r.intercept = (sy - r.slope * sx) / n;
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double e = z[i] - (r.slope * a[i] + r.intercept);
        ss += e * e;
    }
    r.residual = std::sqrt(ss / n);
    return r;
}

GrowthProfile profile(const HermiteExpansion& c) {
    if (c.truncation < 8)
        throw std::invalid_argument("profile: truncation_order must be >= 8 for a meaningful tail");
    GrowthProfile p;
    p.d = c.d;
    p.truncation = c.truncation;

    /* shell maxima */
    std::vector<double> shell_max(static_cast<std::size_t>(c.truncation) + 1, 0.0);
    for (const auto& [alpha, v] : c.coef) {
        const double m = std::abs(v);
        auto& slot = shell_max[static_cast<std::size_t>(alpha.order())];
        slot = std::max(slot, m);
    }
    int order = -1;
    for (int n = 0; n <= c.truncation; ++n)
        if (shell_max[static_cast<std::size_t>(n)] > 0.0) order = n;
    if (order < 0) { // all-zero input: distinguished profile, classified finest
        p.zero = true;
        p.order = 0;
        return p;
    }
    p.order = order;
    for (int n = 0; n <= order; ++n)
        if (shell_max[static_cast<std::size_t>(n)] > 0.0)
            p.samples.emplace_back(n, std::log(shell_max[static_cast<std::size_t>(n)]));

    /* fitting window: nonzero shells in the upper half of 0..order */
    const int lo = (order + 1) / 2;
    for (const auto& [n, y] : p.samples)
        if (n >= lo) p.window.push_back(n);
    if (p.window.size() < 6)
        throw std::runtime_error("profile: too few nonzero shells in the tail window (need >= 6)");

    std::vector<double> y, an, asq, alg, zmin, zplus;
    for (int n : p.window) {
        const auto it = std::find_if(p.samples.begin(), p.samples.end(),
                                     [n](const auto& s) { return s.first == n; });
        const double yn = it->second;
        y.push_back(yn);
        an.push_back(static_cast<double>(n));
        asq.push_back(std::sqrt(static_cast<double>(n)));
        alg.push_back(std::log1p(static_cast<double>(n)));
        zmin.push_back(yn + half_log_min_shell_factorial(c.d, n));
        zplus.push_back(yn - half_log_max_shell_factorial(c.d, n));
    }

    /* three tail fits */
    const FitResult fmin = fit_line(an, zmin);
    const FitResult fplus = fit_line(an, zplus);
    if (fmin.residual <= fplus.residual) {
        p.h_exp = fmin.slope;
        p.h_residual = fmin.residual;
        p.factorial_law = "factorial-minus";
    } else {
        p.h_exp = fplus.slope;
        p.h_residual = fplus.residual;
        p.factorial_law = "factorial-plus";
    }
    const FitResult fsq = fit_line(asq, y);
    p.r_sub = -fsq.slope;
    p.r_residual = fsq.residual;
    const FitResult fpl = fit_line(alg, y);
    p.poly_deg = fpl.slope;
    p.poly_residual = fpl.residual;

    /* drift statistics, chain order */
    p.drift[0] = slope_drift(an, zmin);  // factorial-minus law
    p.drift[1] = slope_drift(asq, y);    // decay in sqrt(n) coordinates
    p.drift[2] = slope_drift(alg, y);    // decay in log coordinates
    p.drift[3] = p.drift[2];             // growth in log coordinates
    p.drift[4] = p.drift[1];             // growth in sqrt(n) coordinates
    p.drift[5] = slope_drift(an, zplus); // factorial-plus law
    return p;
}

namespace {

double threshold_for(int i, const ClassifierThresholds& th) {
    switch (i) {
    case 0: return th.tau_factorial;
    case 1: return -th.tau;
    case 2: return -th.tau;
    case 3: return th.tau;
    case 4: return th.tau;
    case 5: return th.tau_factorial;
    }
    throw std::logic_error("threshold_for: bad index");
}

} // namespace

SpaceClass classify(const GrowthProfile& p, const ClassifierThresholds& th) {
    SpaceClass out;
    if (p.zero) {
        out.tag = SpaceClassTag::HFlat;
        out.margin = kInf;
        return out;
    }
    for (int i = 0; i < 6; ++i) {
        if (p.drift[static_cast<std::size_t>(i)] <= threshold_for(i, th)) {
            out.tag = static_cast<SpaceClassTag>(i);
            out.margin = (i == 0) ? kInf
                                  : p.drift[static_cast<std::size_t>(i - 1)] - threshold_for(i - 1, th);
            out.boundary = std::isfinite(out.margin) && out.margin < th.tau;
            return out;
        }
    }
    out.tag = SpaceClassTag::Unbounded;
    out.margin = p.drift[5] - threshold_for(5, th);
    out.boundary = out.margin < th.tau;
    return out;
}

SpaceClass classify(const HermiteExpansion& c, const ClassifierThresholds& th) {
    return classify(profile(c), th);
}

bool satisfies(const GrowthProfile& p, SpaceClassTag k, const ClassifierThresholds& th) {
    if (k == SpaceClassTag::Unbounded) return true;
    if (p.zero) return true;
    for (int i = 0; i <= static_cast<int>(k); ++i)
        if (p.drift[static_cast<std::size_t>(i)] <= threshold_for(i, th)) return true;
    return false;
}

nlohmann::json GrowthProfile::to_json() const {
    nlohmann::json samples_j = nlohmann::json::array();
    for (const auto& [n, logm] : samples) samples_j.push_back({n, logm});
    return {{"dimension", d},
            {"truncation", truncation},
            {"order", order},
            {"zero", zero},
            {"samples", samples_j},
            {"window", window},
            {"fits",
             {{"factorial", {{"law", factorial_law}, {"log_h", h_exp}, {"residual", h_residual}}},
              {"sqrt", {{"rate", r_sub}, {"residual", r_residual}}},
              {"poly", {{"degree", poly_deg}, {"residual", poly_residual}}}}},
            {"drift", drift}};
}

nlohmann::json SpaceClass::to_json() const {
    return {{"tag", space_class_name(tag)},
            {"margin", std::isfinite(margin) ? nlohmann::json(margin) : nlohmann::json("inf")},
            {"boundary", boundary}};
}

} // namespace tfinv
