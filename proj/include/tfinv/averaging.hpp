#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "tfinv/grid.hpp"
#include "tfinv/spaces.hpp"

namespace tfinv {

/* Phase-space cube Q_R = [-R, R]^{2d} and the quadrature used to average over
 * it.  Midpoint is the workhorse; Gauss-Legendre panels of unit length are the
 * cross-check rule.  Node weights are normalized so they sum to one per axis,
 * i.e. the |Q_R|^{-1} factor is folded in. */
enum class CubeRule { Midpoint, GaussLegendrePanels };

struct CubeSpec {
    double R = 5.0;
    double target_spacing = 0.125; // per-axis node spacing goal
    CubeRule rule = CubeRule::Midpoint;

    void validate() const;
    /* normalized per-axis nodes/weights on [-R, R]; weights sum to 1 */
    void axis_nodes(std::vector<double>& node, std::vector<double>& weight) const;
};

/* ||f||_[R]^2 = |Q_R|^{-1} iint_{Q_R} || e^{i<.,xi>} f(.-x) ||_H^2 dx dxi.
 * For xi-independent norms the xi integral collapses analytically.  Returns
 * the norm (not its square). */
double averaged_norm(const SpaceModel& space, const GridFunction& f, const CubeSpec& cube);

/* Same average applied to the inner product (f, g)_H at each phase point;
 * polarization of averaged_norm reproduces it (cross-checked in tests). */
cplx averaged_inner(const SpaceModel& space, const GridFunction& f, const GridFunction& g,
                    const CubeSpec& cube);

/* | ||M_xi0 T_x0 f||_[R]^2 - ||f||_[R]^2 | together with the a-priori bound
 * C0^2 (sum|x0_j| + sum|xi0_j|) ||f||_H^2 / R.  The displaced averaged norm
 * is the average over the shifted cube Q_R + (x0, xi0): composing the phase
 * point with the probe displacement only moves the argument (the cross phase
 * has modulus one), so no grid enlargement is needed and the result is exact
 * in (x0, xi0). */
struct InvarianceDefect {
    double defect = 0.0;         // squared-norm difference, absolute value
    double bound = 0.0;          // infinity when the model declares no C0
    double shifted_norm = 0.0;   // || M_xi0 T_x0 f ||_[R]
    double base_norm = 0.0;      // || f ||_[R]
};
InvarianceDefect invariance_defect(const SpaceModel& space, const GridFunction& f, const CubeSpec& cube,
                                   const std::vector<double>& x0, const std::vector<double>& xi0);

/* Doubling schedule R_k = R0 * 2^k, k = 0..doublings. */
std::vector<double> doubling_schedule(double R0, int doublings);

/* One family member at one R. */
struct AveragingRow {
    std::string f_id;
    double R = 0.0;
    double avg_norm = 0.0;       // ||f||_[R]
    double sandwich_lo = 0.0;    // C0^{-1} ||f||_H
    double sandwich_hi = 0.0;    // C0 ||f||_H
    double defect_translation = 0.0; // | ||T_x0 f||^2_[R] - ||f||^2_[R] | at the probe
    double defect_modulation = 0.0;  // | ||M_xi0 f||^2_[R] - ||f||^2_[R] | at the probe
    double er_bound = 0.0;           // C0 (sum|x0_j|) ||f||_H^2 / R for the translation probe
    double c_est = 0.0;              // ||f||_[R] / ||f||_{L2}
};

struct AveragingReport {
    std::vector<AveragingRow> rows;
    std::vector<double> schedule;
    double C = 0.0;  // median over family of ||f||_[R_max] / ||f||_{L2}
    double C0 = 0.0; // declared equivalence constant (inf if none)
    /* max over family of | ||f||_[2R]^2 - ||f||_[R]^2 | per schedule step, and the
     * fitted log-log decay rate of those differences (oscillating factors make
     * the raw sequence non-monotone; the rate is the stable statement) */
    std::vector<double> cauchy_diffs;
    double cauchy_decay_rate = 0.0;
    /* per family member: ||f||_H and ||f||_{L2} and the final bracket check */
    std::vector<std::string> f_ids;
    std::vector<double> h_norms;
    std::vector<double> l2_norms;
    bool bracket_ok = true; // C0^{-1} C ||f||_{L2} <= ||f||_H <= C0 C ||f||_{L2} for all members

    nlohmann::json to_json() const;
    std::string to_csv() const; // columns: f_id,R,avg_norm,lo,hi,defect_t,defect_m,bound,C_est
};

/* Run the whole schedule for a family; probes are single translation /
 * modulation displacements used for the defect columns. */
AveragingReport run_schedule(const SpaceModel& space, const std::vector<GridFunction>& family,
                             const std::vector<std::string>& f_ids, double R0, int doublings,
                             const std::vector<double>& x_probe, const std::vector<double>& xi_probe,
                             double target_spacing = 0.125, CubeRule rule = CubeRule::Midpoint);

} // namespace tfinv
