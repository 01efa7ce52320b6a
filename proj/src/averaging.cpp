#include "tfinv/averaging.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "tfinv/io.hpp"
#include "tfinv/parallel.hpp"

namespace tfinv {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

/* 4-point Gauss-Legendre on [-1, 1]; enough for the smooth integrands the
 * panel rule cross-checks. */
constexpr double kGl4Node[4] = {-0.8611363115940526, -0.3399810435848563, 0.3399810435848563,
                                0.8611363115940526};
constexpr double kGl4Weight[4] = {0.34785484513745385, 0.6521451548625461, 0.6521451548625461,
                                  0.34785484513745385};

double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) throw std::invalid_argument("least_squares_slope: degenerate abscissae");
    return (n * sxy - sx * sy) / denom;
}

double sum_abs(const std::vector<double>& v) {
    double s = 0.0;
    for (double t : v) s += std::abs(t);
    return s;
}

double max_abs_entry(const std::vector<double>& v) {
    double s = 0.0;
    for (double t : v) s = std::max(s, std::abs(t));
    return s;
}

/* Averaged squared norm over the cube Q_R shifted by (x0, xi0).  When a
 * direction does not influence the norm its integral of the normalized
 * weights is exactly one, so the loop runs only over the axes that matter. */
double averaged_norm_sq(const SpaceModel& space, const GridFunction& f, const CubeSpec& cube,
                        const std::vector<double>& x0, const std::vector<double>& xi0) {
    cube.validate();
    if (space.d != f.dim()) throw std::invalid_argument("averaged_norm: dimension mismatch");
    const int d = space.d;

    std::vector<double> node, weight;
    cube.axis_nodes(node, weight);
    const std::size_t nn = node.size();

    /* Which axes move the integrand:
     *   PlainL2    - none (fully invariant),
     *   WeightedL2 - x_1 only (the weight reads the first coordinate),
     *   SobolevHs  - all xi axes (translation leaves |fhat| untouched). */
    std::vector<double> x(static_cast<std::size_t>(d), 0.0);
    std::vector<double> xi(static_cast<std::size_t>(d), 0.0);
    for (int j = 0; j < d; ++j) {
        x[static_cast<std::size_t>(j)] = x0.empty() ? 0.0 : x0[static_cast<std::size_t>(j)];
        xi[static_cast<std::size_t>(j)] = xi0.empty() ? 0.0 : xi0[static_cast<std::size_t>(j)];
    }

    switch (space.kind) {
    case SpaceKind::PlainL2: {
        const double n = space.norm_shifted(f, x, xi);
        return n * n;
    }
    case SpaceKind::WeightedL2: {
        /* integrate over x_1 only */
        const double sq = parallel_sum(nn, [&](std::size_t k) {
            std::vector<double> xs = x;
            xs[0] += node[k];
            const double n = space.norm_shifted(f, xs, xi);
            return weight[k] * n * n;
        });
        return sq;
    }
    case SpaceKind::SobolevHs: {
        /* integrate over the xi block; reuse one spectrum for every node */
        const Spectrum F = dft(f);
        const int n = F.n;
        const double cell = std::pow(F.domega / (2.0 * M_PI), d);
        std::size_t total = 1;
        for (int j = 0; j < d; ++j) total *= nn;
        const double sq = parallel_sum(total, [&](std::size_t t) {
            std::vector<double> xis(static_cast<std::size_t>(d));
            std::size_t rem = t;
            for (int j = d - 1; j >= 0; --j) {
                xis[static_cast<std::size_t>(j)] = node[rem % nn];
                rem /= nn;
            }
            double wprod = 1.0;
            rem = t;
            for (int j = d - 1; j >= 0; --j) {
                wprod *= weight[rem % nn];
                rem /= nn;
            }
            for (int j = 0; j < d; ++j) xis[static_cast<std::size_t>(j)] += xi[static_cast<std::size_t>(j)];
            double acc = 0.0;
            for (std::size_t flat = 0; flat < F.value.size(); ++flat) {
                std::size_t r = flat;
                double omega_sq = 0.0;
                for (int j = d - 1; j >= 0; --j) {
                    const int kj = static_cast<int>(r % static_cast<std::size_t>(n));
                    r /= static_cast<std::size_t>(n);
                    const double w = F.freq_coord(kj) + xis[static_cast<std::size_t>(j)];
                    omega_sq += w * w;
                }
                acc += std::pow(1.0 + omega_sq, space.s) * std::norm(F.value[flat]);
            }
            return wprod * acc * cell;
        });
        return sq;
    }
    }
    throw std::logic_error("averaged_norm: unknown space kind");
}

} // namespace

void CubeSpec::validate() const {
    if (!(R > 0.0)) throw std::invalid_argument("CubeSpec: R must be positive");
    if (!(target_spacing > 0.0)) throw std::invalid_argument("CubeSpec: spacing must be positive");
    const double cap = std::min(1.0, R / 8.0);
    if (target_spacing > cap + 1e-12)
        throw std::invalid_argument("CubeSpec: spacing too coarse for R (must be <= min(1, R/8))");
}

void CubeSpec::axis_nodes(std::vector<double>& node, std::vector<double>& weight) const {
    validate();
    node.clear();
    weight.clear();
    if (rule == CubeRule::Midpoint) {
        const int n = static_cast<int>(std::ceil(2.0 * R / target_spacing - 1e-12));
        const double delta = 2.0 * R / n;
        node.reserve(static_cast<std::size_t>(n));
        weight.assign(static_cast<std::size_t>(n), 1.0 / n);
        for (int i = 0; i < n; ++i) node.push_back(-R + (i + 0.5) * delta);
        return;
    }
    /* Gauss-Legendre panels of (near-)unit length, 4 points each; panel
     * weights are normalized by the full length 2R so they sum to one. */
    const int panels = std::max(1, static_cast<int>(std::ceil(2.0 * R - 1e-12)));
    const double len = 2.0 * R / panels;
    node.reserve(static_cast<std::size_t>(panels) * 4);
    weight.reserve(static_cast<std::size_t>(panels) * 4);
    for (int p = 0; p < panels; ++p) {
        const double a = -R + p * len;
        const double mid = a + 0.5 * len;
        for (int q = 0; q < 4; ++q) {
            node.push_back(mid + 0.5 * len * kGl4Node[q]);
            weight.push_back(kGl4Weight[q] * 0.5 * len / (2.0 * R));
        }
    }
}

double averaged_norm(const SpaceModel& space, const GridFunction& f, const CubeSpec& cube) {
    return std::sqrt(averaged_norm_sq(space, f, cube, {}, {}));
}

cplx averaged_inner(const SpaceModel& space, const GridFunction& f, const GridFunction& g,
                    const CubeSpec& cube) {
    cube.validate();
    if (space.d != f.dim() || space.d != g.dim())
        throw std::invalid_argument("averaged_inner: dimension mismatch");
    const int d = space.d;

    std::vector<double> node, weight;
    cube.axis_nodes(node, weight);
    const std::size_t nn = node.size();

    switch (space.kind) {
    case SpaceKind::PlainL2:
        return space.inner_shifted(f, g, std::vector<double>(static_cast<std::size_t>(d), 0.0),
                                   std::vector<double>(static_cast<std::size_t>(d), 0.0));
    case SpaceKind::WeightedL2: {
        const std::vector<double> xi(static_cast<std::size_t>(d), 0.0);
        cplx acc = 0.0;
        for (std::size_t k = 0; k < nn; ++k) {
            std::vector<double> xs(static_cast<std::size_t>(d), 0.0);
            xs[0] = node[k];
            acc += weight[k] * space.inner_shifted(f, g, xs, xi);
        }
        return acc;
    }
    case SpaceKind::SobolevHs: {
        const std::vector<double> xs(static_cast<std::size_t>(d), 0.0);
        std::size_t total = 1;
        for (int j = 0; j < d; ++j) total *= nn;
        cplx acc = 0.0;
        std::vector<double> xis(static_cast<std::size_t>(d));
        for (std::size_t t = 0; t < total; ++t) {
            std::size_t rem = t;
            double wprod = 1.0;
            for (int j = d - 1; j >= 0; --j) {
                xis[static_cast<std::size_t>(j)] = node[rem % nn];
                wprod *= weight[rem % nn];
                rem /= nn;
            }
            acc += wprod * space.inner_shifted(f, g, xs, xis);
        }
        return acc;
    }
    }
    throw std::logic_error("averaged_inner: unknown space kind");
}

InvarianceDefect invariance_defect(const SpaceModel& space, const GridFunction& f, const CubeSpec& cube,
                                   const std::vector<double>& x0, const std::vector<double>& xi0) {
    cube.validate();
    const int d = space.d;
    if (static_cast<int>(x0.size()) != d || static_cast<int>(xi0.size()) != d)
        throw std::invalid_argument("invariance_defect: probe dimension mismatch");
    const double max_disp = std::max(max_abs_entry(x0), max_abs_entry(xi0));
    if (cube.R <= max_disp)
        throw std::invalid_argument("invariance_defect: R must exceed the probe displacement");

    InvarianceDefect out;
    const double base_sq = averaged_norm_sq(space, f, cube, {}, {});
    const double shifted_sq = averaged_norm_sq(space, f, cube, x0, xi0);
    out.base_norm = std::sqrt(base_sq);
    out.shifted_norm = std::sqrt(shifted_sq);
    out.defect = std::abs(shifted_sq - base_sq);
    const std::optional<double> c0 = space.declared_c0();
    if (c0) {
        const double h = space.norm(f);
        out.bound = (*c0) * (*c0) * (sum_abs(x0) + sum_abs(xi0)) * h * h / cube.R;
    } else {
        out.bound = kInf;
    }
    return out;
}

std::vector<double> doubling_schedule(double R0, int doublings) {
    if (!(R0 > 0.0)) throw std::invalid_argument("doubling_schedule: R0 must be positive");
    if (doublings < 0 || doublings > 24)
        throw std::invalid_argument("doubling_schedule: doublings out of range");
    std::vector<double> out;
    double R = R0;
    for (int k = 0; k <= doublings; ++k, R *= 2.0) out.push_back(R);
    return out;
}

nlohmann::json AveragingReport::to_json() const {
    nlohmann::json rows_j = nlohmann::json::array();
    for (const AveragingRow& r : rows) {
        rows_j.push_back({{"f_id", r.f_id},
                          {"R", r.R},
                          {"avg_norm", r.avg_norm},
                          {"sandwich_lo", r.sandwich_lo},
                          {"sandwich_hi", r.sandwich_hi},
                          {"defect_translation", r.defect_translation},
                          {"defect_modulation", r.defect_modulation},
                          {"er_bound", std::isfinite(r.er_bound) ? nlohmann::json(r.er_bound)
                                                                 : nlohmann::json()},
                          {"c_est", r.c_est}});
    }
    nlohmann::json members = nlohmann::json::array();
    for (std::size_t i = 0; i < f_ids.size(); ++i) {
        members.push_back(
            {{"f_id", f_ids[i]}, {"space_norm", h_norms[i]}, {"l2_norm", l2_norms[i]}});
    }
    return {{"rows", rows_j},
            {"schedule", schedule},
            {"C", C},
            {"C0", std::isfinite(C0) ? nlohmann::json(C0) : nlohmann::json()},
            {"cauchy_diffs", cauchy_diffs},
            {"cauchy_decay_rate",
             std::isfinite(cauchy_decay_rate) ? nlohmann::json(cauchy_decay_rate) : nlohmann::json()},
            {"members", members},
            {"bracket_ok", bracket_ok}};
}

std::string AveragingReport::to_csv() const {
    std::string out = "f_id,R,avg_norm,lo,hi,defect_t,defect_m,bound,C_est\n";
    for (const AveragingRow& r : rows) {
        out += csv_line({r.f_id, fmt_g(r.R), fmt_g(r.avg_norm), fmt_g(r.sandwich_lo),
                         fmt_g(r.sandwich_hi), fmt_g(r.defect_translation), fmt_g(r.defect_modulation),
                         fmt_g(r.er_bound), fmt_g(r.c_est)});
    }
    return out;
}

AveragingReport run_schedule(const SpaceModel& space, const std::vector<GridFunction>& family,
                             const std::vector<std::string>& f_ids, double R0, int doublings,
                             const std::vector<double>& x_probe, const std::vector<double>& xi_probe,
                             double target_spacing, CubeRule rule) {
    if (family.empty()) throw std::invalid_argument("run_schedule: empty family");
    if (family.size() != f_ids.size())
        throw std::invalid_argument("run_schedule: family and id count differ");
    const int d = space.d;
    if (static_cast<int>(x_probe.size()) != d || static_cast<int>(xi_probe.size()) != d)
        throw std::invalid_argument("run_schedule: probe dimension mismatch");

    AveragingReport rep;
    rep.schedule = doubling_schedule(R0, doublings);
    const std::optional<double> c0_opt = space.declared_c0();
    rep.C0 = c0_opt ? *c0_opt : kInf;
    rep.f_ids = f_ids;

    const std::vector<double> zero(static_cast<std::size_t>(d), 0.0);
    for (const GridFunction& f : family) {
        rep.h_norms.push_back(space.norm(f));
        rep.l2_norms.push_back(grid_norm_l2(f));
    }

    /* rows, grouped by family member then R */
    std::vector<std::vector<double>> sq_by_member(family.size());
    for (std::size_t i = 0; i < family.size(); ++i) {
        for (double R : rep.schedule) {
            CubeSpec cube{R, target_spacing, rule};
            AveragingRow row;
            row.f_id = f_ids[i];
            row.R = R;
            const double sq = averaged_norm_sq(space, family[i], cube, {}, {});
            sq_by_member[i].push_back(sq);
            row.avg_norm = std::sqrt(sq);
            row.sandwich_lo = c0_opt ? rep.h_norms[i] / *c0_opt : 0.0;
            row.sandwich_hi = c0_opt ? rep.h_norms[i] * *c0_opt : kInf;
            const double shifted_t = averaged_norm_sq(space, family[i], cube, x_probe, zero);
            const double shifted_m = averaged_norm_sq(space, family[i], cube, zero, xi_probe);
            row.defect_translation = std::abs(shifted_t - sq);
            row.defect_modulation = std::abs(shifted_m - sq);
            row.er_bound = c0_opt ? (*c0_opt) * sum_abs(x_probe) * rep.h_norms[i] * rep.h_norms[i] / R
                                  : kInf;
            row.c_est = row.avg_norm / rep.l2_norms[i];
            /* per-R sandwich must hold whenever the model declares a bound
             * constant; abort naming the offending (R, f) */
            if (c0_opt) {
                const double slack = 1e-6 * row.sandwich_hi;
                if (!(row.avg_norm >= row.sandwich_lo - slack &&
                      row.avg_norm <= row.sandwich_hi + slack))
                    throw std::runtime_error(
                        "run_schedule: sandwich violated at R=" + std::to_string(R) +
                        ", f=" + f_ids[i] + " (avg=" + std::to_string(row.avg_norm) +
                        ", lo=" + std::to_string(row.sandwich_lo) +
                        ", hi=" + std::to_string(row.sandwich_hi) + ")");
            }
            rep.rows.push_back(row);
        }
    }

    /* C = median over the family of the finest-R ratio */
    std::vector<double> ratios;
    for (std::size_t i = 0; i < family.size(); ++i)
        ratios.push_back(std::sqrt(sq_by_member[i].back()) / rep.l2_norms[i]);
    std::sort(ratios.begin(), ratios.end());
    const std::size_t mid = ratios.size() / 2;
    rep.C = (ratios.size() % 2 == 1) ? ratios[mid] : 0.5 * (ratios[mid - 1] + ratios[mid]);

    /* Cauchy differences of the squared norms along the schedule (max over the
     * family), and their fitted decay rate in log-log coordinates.  The raw
     * sequence oscillates with R, so the fitted rate is the robust statistic. */
    double scale = 0.0;
    for (const auto& sq : sq_by_member) scale = std::max(scale, max_abs_entry(sq));
    for (std::size_t k = 0; k + 1 < rep.schedule.size(); ++k) {
        double dmax = 0.0;
        for (const auto& sq : sq_by_member) dmax = std::max(dmax, std::abs(sq[k + 1] - sq[k]));
        rep.cauchy_diffs.push_back(dmax);
    }
    std::vector<double> lx, ly;
    for (std::size_t k = 0; k < rep.cauchy_diffs.size(); ++k) {
        if (rep.cauchy_diffs[k] > 1e-14 * scale) {
            lx.push_back(std::log(rep.schedule[k]));
            ly.push_back(std::log(rep.cauchy_diffs[k]));
        }
    }
    rep.cauchy_decay_rate = (lx.size() >= 2) ? least_squares_slope(lx, ly) : -kInf;

    /* final bracket: C0^{-1} C ||f||_{L2} <= ||f||_H <= C0 C ||f||_{L2} */
    if (c0_opt) {
        for (std::size_t i = 0; i < family.size(); ++i) {
            const double lo = rep.C / *c0_opt * rep.l2_norms[i];
            const double hi = rep.C * *c0_opt * rep.l2_norms[i];
            const double slack = 1e-12 * std::max(1.0, hi);
            if (!(rep.h_norms[i] >= lo - slack && rep.h_norms[i] <= hi + slack)) {
                rep.bracket_ok = false;
            }
        }
    }
    return rep;
}

} // namespace tfinv
