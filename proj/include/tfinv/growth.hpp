#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "tfinv/expansion.hpp"

namespace tfinv {

/* The chain of coefficient-decay classes, finest first:
 *   H_flat       |c_a| <= C h^|a| a!^{-1/2}          for some h
 *   Sigma1       |c_a| <= C_r e^{-r sqrt|a|}         for every r
 *   Schwartz     |c_a| <= C_M (1+|a|)^{-M}           for every M
 *   SchwartzDual |c_a| <= C (1+|a|)^{M}              for some M
 *   Sigma1Dual   |c_a| <= C e^{r sqrt|a|}            for some r
 *   H_flatDual   |c_a| <= C_h h^|a| a!^{1/2}         for every h
 * plus Unbounded when even the last law fails on the data. */
enum class SpaceClassTag {
    HFlat = 0,
    Sigma1 = 1,
    Schwartz = 2,
    SchwartzDual = 3,
    Sigma1Dual = 4,
    HFlatDual = 5,
    Unbounded = 6,
};

const char* space_class_name(SpaceClassTag t);
inline int space_class_rank(SpaceClassTag t) { return static_cast<int>(t); }

/* Least-squares line fit with root-mean-square residual. */
struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    double residual = 0.0;
};
FitResult fit_line(const std::vector<double>& a, const std::vector<double>& z);

/* Shell data and tail fits for one expansion.  Shell maxima M_n are taken
 * over |alpha| = n; the fits and the slope-drift statistics use the upper
 * half of the populated shells, split into two sub-windows.  For each law
 * the data is transformed to coordinates in which the law is a straight
 * line; "drift" is slope(second sub-window) - slope(first sub-window), a
 * scale-free measure of how strongly the data bends away from the law. */
struct GrowthProfile {
    int d = 1;
    int truncation = 0;
    int order = 0;
    bool zero = false;

    std::vector<std::pair<int, double>> samples; // (n, log M_n), nonzero shells

    std::vector<int> window; // shells used for fits, lowest to highest

    /* factorial law M_n ~ h^n * (shell factorial)^{-1/2 or +1/2} */
    double h_exp = 0.0;       // fitted log h
    double h_residual = 0.0;
    std::string factorial_law; // "factorial-minus" or "factorial-plus"

    /* sub-exponential law M_n ~ e^{-r sqrt n}; negative r means growth */
    double r_sub = 0.0;
    double r_residual = 0.0;

    /* polynomial law M_n ~ (1+n)^{deg} */
    double poly_deg = 0.0;
    double poly_residual = 0.0;

    /* drift statistic per chain class, in chain order */
    std::array<double, 6> drift{};

    nlohmann::json to_json() const;
};

/* Acceptance thresholds, in log units.  The factorial laws get their own
 * scale: bending away from h^n a!^{-1/2} shows up as a drift of about
 * (1/2) log(ratio of sub-window centers) ~= 0.17 regardless of how many
 * shells are available, so the cut sits at half of that. */
struct ClassifierThresholds {
    double tau = 0.5;
    double tau_factorial = 0.084;
};

struct SpaceClass {
    SpaceClassTag tag = SpaceClassTag::HFlat;
    /* distance, in log units, by which the immediately finer class was
     * rejected; +infinity when nothing finer exists (H_flat, zero input) */
    double margin = 0.0;
    /* the verdict sits within tau of the finer class: reported, not hidden */
    bool boundary = false;

    nlohmann::json to_json() const;
};

/* Shell maxima, tail fits, drift statistics.  Throws std::invalid_argument
 * for truncation_order < 8 and std::runtime_error when fewer than 6 nonzero
 * shells land in the fitting window.  The all-zero expansion is returned as
 * the distinguished zero profile (no window required). */
GrowthProfile profile(const HermiteExpansion& c);

/* Finest chain class accepted by the drift tests; Unbounded if none is.
 * Zero profile -> H_flat with infinite margin.  Deterministic. */
SpaceClass classify(const GrowthProfile& p, const ClassifierThresholds& th = {});
SpaceClass classify(const HermiteExpansion& c, const ClassifierThresholds& th = {});

/* Chain-coherent acceptance check: class k is satisfied by the data when k's
 * own drift test passes or any finer class's does (the classes are nested, so
 * certifying a finer law certifies every coarser one).  Unbounded is always
 * satisfied. */
bool satisfies(const GrowthProfile& p, SpaceClassTag k, const ClassifierThresholds& th = {});

} // namespace tfinv
