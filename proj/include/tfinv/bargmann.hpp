#pragma once

#include <complex>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tfinv/expansion.hpp"
#include "tfinv/grid.hpp"
#include "tfinv/multi_index.hpp"

namespace tfinv {

/* Point of C^d under the identification w = x + i xi; pairing conjugates the
 * SECOND argument: (z, w) = sum z_j conj(w_j). */
struct ComplexPoint {
    std::vector<cplx> z;

    ComplexPoint() = default;
    explicit ComplexPoint(std::vector<cplx> entries) : z(std::move(entries)) {}
    static ComplexPoint from_real(const std::vector<double>& x, const std::vector<double>& xi);

    int dim() const { return static_cast<int>(z.size()); }
    std::vector<double> x_part() const;
    std::vector<double> xi_part() const;
    ComplexPoint conj() const;
    ComplexPoint operator*(cplx s) const;
    ComplexPoint operator+(const ComplexPoint& o) const;
    ComplexPoint operator-() const;
    double abs_sq() const; // sum |z_j|^2
    double abs() const;
};
cplx pairing(const ComplexPoint& a, const ComplexPoint& b); // sum a_j conj(b_j)

/* Finite combination of the normalized monomials e_a(z) = z^a / sqrt(a!),
 * optionally carrying one displacement tag (w, phase): evaluation multiplies
 * the finite sum at z - w by phase * e^{-|w|^2/2 + (z,w)} exactly, so
 * displaced functions never lose precision to re-expansion. */
struct DisplacementTag {
    ComplexPoint w;
    cplx phase{1.0, 0.0};
};

struct BargmannFunction {
    int d = 1;
    std::map<MultiIndex, cplx, GradedLexLess> coef;
    std::optional<DisplacementTag> tag;

    cplx evaluate(const ComplexPoint& z) const;
    double coef_l2() const; // l2 norm of the monomial coefficients
    int order() const;

    nlohmann::json to_json() const;
};

/* Coefficient-identical relabeling h_a -> e_a: a linear isometry between the
 * coefficient l2 norms. */
BargmannFunction bargmann(const HermiteExpansion& f);

/* Displacement (W_w F)(z) = e^{-|w|^2/2 + (z,w)} F(z - w).  Composes through
 * the tag with the product rule W_w W_a = e^{-i Im(w,a)} W_{w+a}. */
BargmannFunction weyl(const BargmannFunction& F, const ComplexPoint& w);

/* Transfer identity for translation/modulation: the transform of
 * e^{i<.,xi>} f(.-x), computed independently by sampling + reanalysis, is
 * compared pointwise against e^{(i/2)<x,xi>} (W_{wbar/sqrt2} F)(z), w = x+i xi.
 * Returns the max over sample points of |LHS - RHS| / (|RHS| + 1e-14).
 * truncation < 0 selects order(f) + ceil(4(|x|+|xi|)).  Throws when the
 * reanalyzed side leaves > 1e-6 of its relative coefficient mass in the top
 * two shells (truncation insufficient). */
double covariance_check(const HermiteExpansion& f, const std::vector<double>& x,
                        const std::vector<double>& xi, const std::vector<ComplexPoint>& samples,
                        int truncation = -1);

/* Polar sample grid used by the covariance acceptance run: radii
 * {0.4, 0.8, 1.2, 1.6, 2.0}, 16 angles offset by pi/16 (the offset keeps the
 * displaced Gaussian's zeros away from every sample).  For d > 1 the extra
 * coordinates are pinned at 0.35 + 0.15i. */
std::vector<ComplexPoint> default_covariance_samples(int d);

/* Weighted sup seminorms, evaluated as maxima over caller-supplied samples
 * (documented lower bounds of the true sups):
 *   A0inf  |F(z)| e^{-|z|^2/2} (1+|z|)^{-r}
 *   A01    |F(z)| e^{-|z|^2/2 - r|z|}
 *   Aflat  |F(z)| on the closed ball |z| <= r (samples must lie inside)
 * Ties resolve to the earliest sample index. */
enum class FockFamily { A0inf, A01, Aflat };
double fock_seminorm(const BargmannFunction& F, FockFamily family, double r,
                     const std::vector<ComplexPoint>& sample_set);

/* Nested polar default grids (d = 1): radii in steps of 0.02 up to
 * max(2r, 8) (A0inf/A01) or r (Aflat), 32 angles.  Nesting makes the ball
 * seminorm nondecreasing in r by construction. */
std::vector<ComplexPoint> default_seminorm_samples(FockFamily family, double r);

/* max over samples of |F(z)| e^{-|z|^2/2} / v0(-sqrt2 conj(z)); the weight is
 * read through the phase-space identification (x, xi) <-> x + i xi.  Throws
 * on a nonpositive weight value. */
double weighted_sup_estimate(const BargmannFunction& F,
                             const std::function<double(const ComplexPoint&)>& v0,
                             const std::vector<ComplexPoint>& sample_set);

/* Gaussian-measure mass pi^{-1} integral |F|^2 e^{-|z|^2} dA computed on a
 * fixed polar quadrature (composite Gauss-Legendre radii x uniform angles,
 * d = 1 only).  Invariant under weyl displacement; used as the unitarity
 * witness. */
double gaussian_l2_witness(const BargmannFunction& F, double rmax = 10.0, int radial_panels = 100,
                           int angles = 64);

} // namespace tfinv
