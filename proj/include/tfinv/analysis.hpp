#pragma once

#include "tfinv/expansion.hpp"
#include "tfinv/grid.hpp"
#include "tfinv/spaces.hpp"

namespace tfinv {

/* Hermite coefficients c(f, alpha) = integral f(x) h_alpha(x) dx for all
 * |alpha| <= N, by tensor Gauss-Hermite quadrature.  nodes_per_axis = 0 picks
 * the default 2N+16; anything below that is rejected as insufficient for N.
 * The grid must either carry its analytic evaluator (preferred; exact) or be
 * fine enough that the interpolating fallback is acceptable. */
HermiteExpansion analyze(const GridFunction& f, int N, int nodes_per_axis = 0);

/* Evaluate an expansion on a grid.  The returned GridFunction carries the
 * expansion itself as analytic evaluator, so analyze(synthesize(c)) round
 * trips through exact quadrature. */
GridFunction synthesize(const HermiteExpansion& c, const GridSpec& spec);

/* Duality pairing (f, phi) = sum_alpha c(f,alpha) conj(c(phi,alpha)).
 * Sesquilinear; the second slot is conjugated. */
cplx pairing(const HermiteExpansion& f, const HermiteExpansion& phi);

/* Diagonal action of the harmonic oscillator |x|^2 - Laplacian:
 * coefficient at alpha scales by (2|alpha| + d)^{sign * j}. */
HermiteExpansion oscillator_power(const HermiteExpansion& f, int j, int sign);

/* Pairing of f against the fixed Gaussian phi = e^{-|x|^2/2} = pi^{d/4} h_0,
 * with the oscillator-power norm of phi and the induced bound constant
 * |(f,phi)| / ||f||_H.  The space norm is evaluated on a synthesized grid. */
struct GaussianPairingRecord {
    double pairing_abs = 0.0;  // |(f, phi)|
    double hj_norm_phi = 0.0;  // || (|x|^2 - Lap)^j phi ||_{L2} = pi^{d/4} d^j
    double bound_constant = 0.0;
};
GaussianPairingRecord gaussian_pairing_bound(const HermiteExpansion& f, const SpaceModel& space,
                                             int j, const GridSpec* grid = nullptr);

/* Grid descriptor wide enough for every degree <= N expansion used in tests:
 * the classical support radius sqrt(2(2N+d)) plus decay room. */
GridSpec default_grid_for_order(int d, int N);

} // namespace tfinv
