#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "tfinv/grid.hpp"

namespace tfinv {

/* Bounded weight in closed form.  Restricted to a small grammar so the bounds
 * lo <= w <= hi are declared, not discovered:
 *   "const:c"              w(y) = c
 *   "2+sin"                w(y) = 2 + sin(y_1)
 *   "step:lo,hi,c,width"   logistic step from lo to hi around y_1 = c
 * Weights read only the first coordinate, so the declared bounds are
 * dimension-independent. */
struct Weight {
    std::string repr = "const:1";
    double lo = 1.0;
    double hi = 1.0;

    static Weight parse(const std::string& s);
    double operator()(double y1) const;
};

/* The concrete translation/modulation-invariant (or deliberately
 * non-invariant) Hilbert space models the experiments run against. */
enum class SpaceKind { PlainL2, WeightedL2, SobolevHs };

struct SpaceModel {
    SpaceKind kind = SpaceKind::PlainL2;
    int d = 1;
    Weight weight;     // WeightedL2 only
    double s = 0.0;    // SobolevHs only

    static SpaceModel plain_l2(int d);
    static SpaceModel weighted_l2(int d, const std::string& weight_repr);
    static SpaceModel sobolev(int d, double s);
    static SpaceModel parse(const nlohmann::json& j);
    nlohmann::json to_json() const;

    std::string name() const;

    /* sqrt(hi/lo) for weighted L2, 1 for plain L2, unset for Sobolev (whose
     * modulation growth is unbounded, the point of the negative control). */
    std::optional<double> declared_c0() const;

    /* || M_xi T_x f ||_H is independent of xi for the L2-type models; the
     * phase-space average then collapses its xi integral. */
    bool xi_independent_norm() const;

    double norm(const GridFunction& f) const;
    cplx inner(const GridFunction& f, const GridFunction& g) const;

    /* Norm / inner product of e^{i<.,xi>} f(.-x) computed by shifting the
     * norm's weight instead of materializing the translated samples: exact in
     * (x, xi), immune to support leakage at large |x|. */
    double norm_shifted(const GridFunction& f, const std::vector<double>& x,
                        const std::vector<double>& xi) const;
    cplx inner_shifted(const GridFunction& f, const GridFunction& g, const std::vector<double>& x,
                       const std::vector<double>& xi) const;
};

/* Full-axis DFT samples of the continuous Fourier transform
 * fhat(omega) = integral f(y) e^{-i<y,omega>} dy on the dual grid
 * omega_k = 2 pi k / (n h), k = -m..m per axis.  Plain O(n^2) per axis. */
struct Spectrum {
    int d = 1;
    int n = 0;          // nodes per axis (odd)
    double domega = 0.0; // dual grid spacing
    std::vector<cplx> value;

    double freq_coord(int k) const { return (k - (n - 1) / 2) * domega; }
};
Spectrum dft(const GridFunction& f);

/* Support-leakage guard shared by the norms: boundary samples above
 * 1e-8 * max|f| mean the declared grid radius is too small to trust. */
void require_supported(const GridFunction& f, const char* who);

} // namespace tfinv
