#include "tfinv/hermite.hpp"

#include <cmath>
#include <stdexcept>

namespace tfinv {

namespace {
constexpr double kPiQuarterInv = 0.7511255444649425; // pi^{-1/4}
}

void hermite_values_1d(int nmax, double x, std::vector<double>& out) {
    if (nmax < 0) throw std::invalid_argument("hermite_values_1d: negative order");
    if (nmax > kMaxHermiteOrder) throw std::domain_error("hermite_values_1d: order above supported maximum");
    out.resize(static_cast<size_t>(nmax) + 1);
    const double g = kPiQuarterInv * std::exp(-0.5 * x * x);
    out[0] = g;
    if (nmax == 0) return;
    out[1] = std::sqrt(2.0) * x * g;
    for (int n = 1; n < nmax; ++n) {
        const double fn = 2.0 / (n + 1.0);
        const double fnm = n / (n + 1.0);
        out[static_cast<size_t>(n) + 1] =
            std::sqrt(fn) * x * out[static_cast<size_t>(n)] - std::sqrt(fnm) * out[static_cast<size_t>(n) - 1];
    }
}

double hermite_value_1d(int n, double x) {
    std::vector<double> v;
    hermite_values_1d(n, x, v);
    return v[static_cast<size_t>(n)];
}

double hermite_eval(const MultiIndex& alpha, const std::vector<double>& point) {
    if (alpha.dim() != static_cast<int>(point.size()))
        throw std::invalid_argument("hermite_eval: point dimension mismatch");
    double p = 1.0;
    std::vector<double> v;
    for (int j = 0; j < alpha.dim(); ++j) {
        const int n = alpha.e[static_cast<size_t>(j)];
        if (n > kMaxHermiteOrder) throw std::domain_error("hermite_eval: order above supported maximum");
        hermite_values_1d(n, point[static_cast<size_t>(j)], v);
        p *= v[static_cast<size_t>(n)];
    }
    return p;
}

std::vector<double> hermite_eval(const MultiIndex& alpha,
                                 const std::vector<std::vector<double>>& points) {
    std::vector<double> out;
    out.reserve(points.size());
    for (const auto& p : points) out.push_back(hermite_eval(alpha, p));
    return out;
}

namespace {

/* h_n and h_{n-1} at x, for Newton steps: h_n'(x) = sqrt(2n) h_{n-1}(x) - x h_n(x). */
void hn_pair(int n, double x, double& hn, double& hnm1) {
    const double g = kPiQuarterInv * std::exp(-0.5 * x * x);
    double a = g;                    // h_0
    if (n == 0) { hn = a; hnm1 = 0.0; return; }
    double b = std::sqrt(2.0) * x * g; // h_1
    for (int k = 1; k < n; ++k) {
        const double c = std::sqrt(2.0 / (k + 1.0)) * x * b - std::sqrt(k / (k + 1.0)) * a;
        a = b;
        b = c;
    }
    hn = b;
    hnm1 = a;
}

double newton_polish(int n, double x0) {
    double x = x0;
    for (int it = 0; it < 60; ++it) {
        double hn, hm;
        hn_pair(n, x, hn, hm);
        const double d = std::sqrt(2.0 * n) * hm - x * hn;
        if (d == 0.0) break;
        const double step = hn / d;
        x -= step;
        if (std::abs(step) < 1e-15 * (1.0 + std::abs(x))) break;
    }
    return x;
}

/* Bisection for a sign change of h_n on [a,b], assumed bracketed. */
double bisect_root(int n, double a, double b) {
    double ha, hm_unused;
    hn_pair(n, a, ha, hm_unused);
    for (int it = 0; it < 80; ++it) {
        const double m = 0.5 * (a + b);
        double hm2, tmp;
        hn_pair(n, m, hm2, tmp);
        if ((ha <= 0.0) == (hm2 <= 0.0)) {
            a = m;
            ha = hm2;
        } else {
            b = m;
        }
        if (b - a < 1e-12) break;
    }
    return newton_polish(n, 0.5 * (a + b));
}

} // namespace

GaussHermiteRule gauss_hermite(int n) {
    if (n < 1) throw std::invalid_argument("gauss_hermite: need at least one node");
    if (n > 2 * kMaxHermiteOrder) throw std::domain_error("gauss_hermite: node count above supported maximum");

    // Build root sets upward: roots of h_{k+1} interlace roots of h_k, and all
    // roots lie inside |x| < sqrt(2k+1)+1.
    std::vector<double> roots{0.0}; // h_1
    for (int k = 2; k <= n; ++k) {
        std::vector<double> next;
        next.reserve(static_cast<size_t>(k));
        const double hi = std::sqrt(2.0 * k + 1.0) + 1.0;
        std::vector<double> brackets;
        brackets.push_back(-hi);
        for (double r : roots) brackets.push_back(r);
        brackets.push_back(hi);
        for (size_t i = 0; i + 1 < brackets.size(); ++i)
            next.push_back(bisect_root(k, brackets[i], brackets[i + 1]));
        roots = std::move(next);
    }

    GaussHermiteRule rule;
    rule.node = roots;
    rule.weight.resize(roots.size());
    std::vector<double> v;
    for (size_t k = 0; k < roots.size(); ++k) {
        hermite_values_1d(n - 1, roots[k], v);
        double s = 0.0;
        for (double hv : v) s += hv * hv;
        rule.weight[k] = 1.0 / s;
    }
    // Symmetrize: the rule is even, so average mirrored nodes to kill the last
    // ulp of root-finder asymmetry.
    const int m = static_cast<int>(roots.size());
    for (int i = 0, j = m - 1; i < j; ++i, --j) {
        const double x = 0.5 * (rule.node[static_cast<size_t>(j)] - rule.node[static_cast<size_t>(i)]);
        rule.node[static_cast<size_t>(i)] = -x;
        rule.node[static_cast<size_t>(j)] = x;
        const double w = 0.5 * (rule.weight[static_cast<size_t>(i)] + rule.weight[static_cast<size_t>(j)]);
        rule.weight[static_cast<size_t>(i)] = w;
        rule.weight[static_cast<size_t>(j)] = w;
    }
    if (m % 2 == 1) rule.node[static_cast<size_t>(m / 2)] = 0.0;
    return rule;
}

} // namespace tfinv
