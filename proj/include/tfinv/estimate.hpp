#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

#include "tfinv/grid.hpp"
#include "tfinv/spaces.hpp"

namespace tfinv {

/* One phase-space displacement (x, xi). */
struct PhasePoint {
    std::vector<double> x;
    std::vector<double> xi;
};

/* Straight-line fit of log v0 against a displacement feature, with the
 * statistics needed to call a growth trend real: RMS residual and the
 * standard error of the slope. */
struct RateFit {
    double log_c = 0.0;  // intercept
    double slope = 0.0;  // r (exponential law) or N (polynomial law)
    double residual = 0.0;
    double slope_stderr = 0.0;
    std::size_t points = 0;
};

/* Lower estimate of the optimal weight v0(x, xi) = sup_f ||M_xi T_x f|| / ||f||
 * over a finite test family, per phase point, with the two tail fits:
 *   exponential  v0 <= C e^{r (|x|+|xi|)}        (log v against t)
 *   polynomial   v0 <= C0 (1 + |x|+|xi|)^N       (log v against log(1+t))
 * Fits use the upper half of the distinct displacement magnitudes so the
 * near-origin plateau does not dilute the tail law. */
struct WeightEstimate {
    int d = 1;
    std::vector<PhasePoint> grid;
    std::vector<double> value;        // v0 estimate at grid[i]
    std::vector<double> displacement; // t_i = |x_i| + |xi_i| (Euclidean parts)
    RateFit exp_fit;
    RateFit poly_fit;
    /* both fitted growth rates positive, above noise floors, and more than
     * three standard errors from zero */
    bool growth_certified = false;

    nlohmann::json to_json() const;
    std::string to_csv() const; // columns: x,xi,t,v0 (components ';'-joined for d > 1)
};

/* Max over the family of the translated-modulated norm ratio at every phase
 * point.  Throws on an empty family, a zero-norm member, or a phase point of
 * the wrong dimension. */
WeightEstimate estimate_v0(const SpaceModel& space, const std::vector<GridFunction>& family,
                           const std::vector<PhasePoint>& phase_grid);

/* Submultiplicativity check v0(p+q) <= v0(p) v0(q) over every sum-closed
 * triple the grid contains (p, q, p+q all grid points, matched within 1e-12;
 * the degenerate self-sum 0+0=0 is not counted).  defect = max over triples
 * of the positive part of v0(p+q) - v0(p)v0(q); finite-family estimates may
 * carry sampling slack, so callers compare the defect to a budget
 * (0.05 * max v0 by convention).  Throws when no triple exists. */
struct SubmultReport {
    double defect = 0.0;
    std::size_t triples = 0;
    double max_value = 0.0; // max v0 over the grid, for the slack budget
};
SubmultReport submultiplicativity_defect(const WeightEstimate& est);

/* Verdict for the bounded translation-modulation hypothesis on this model:
 *   Admissible    a declared C0 exists and no estimate exceeds it
 *   Violating     no declared C0 and the fitted growth is certified real
 *   Inconclusive  anything else
 */
enum class Admissibility { Admissible, Violating, Inconclusive };
const char* admissibility_name(Admissibility a);
Admissibility admissibility_verdict(const SpaceModel& space, const WeightEstimate& est);

} // namespace tfinv
