#pragma once

#include <vector>

#include "tfinv/multi_index.hpp"

namespace tfinv {

/* Maximum per-axis Hermite order.  The normalized recurrence is stable far
 * beyond this, but factorial-scale bookkeeping elsewhere is not, so reject
 * early rather than return garbage. */
inline constexpr int kMaxHermiteOrder = 512;

/* Values of the L2-normalized Hermite functions h_0..h_nmax at x.
 *
 * h_0(x) = pi^{-1/4} exp(-x^2/2)
 * h_{n+1}(x) = sqrt(2/(n+1)) x h_n(x) - sqrt(n/(n+1)) h_{n-1}(x)
 *
 * The recurrence acts on the functions themselves (Gaussian included), so all
 * intermediates stay O(1) and no rescaling is needed. */
void hermite_values_1d(int nmax, double x, std::vector<double>& out);

inline std::vector<double> hermite_values_1d(int nmax, double x) {
    std::vector<double> v;
    hermite_values_1d(nmax, x, v);
    return v;
}

/* Single h_n(x). */
double hermite_value_1d(int n, double x);

/* Tensor-product Hermite function h_alpha at a point in R^d. */
double hermite_eval(const MultiIndex& alpha, const std::vector<double>& point);

/* Batched evaluation at many points (each of dimension alpha.dim()). */
std::vector<double> hermite_eval(const MultiIndex& alpha,
                                 const std::vector<std::vector<double>>& points);

/* Gauss-Hermite rule stored in "plain integral" form:
 *
 *   integral g(x) dx  ~=  sum_k weight[k] * g(node[k])
 *
 * exact whenever g(x) = p(x) e^{-x^2} with deg p <= 2n-1.  Nodes are the roots
 * of h_n found by interlacing bisection plus Newton; the weight is the inverse
 * Christoffel sum 1/sum_{j<n} h_j(x_k)^2, which already absorbs the e^{x^2}
 * factor of the classical weight, so nothing here ever overflows. */
struct GaussHermiteRule {
    std::vector<double> node;
    std::vector<double> weight;

    int size() const { return static_cast<int>(node.size()); }
};

GaussHermiteRule gauss_hermite(int n);

} // namespace tfinv
