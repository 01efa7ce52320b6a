#include "tfinv/analysis.hpp"

#include <cmath>

#include "tfinv/hermite.hpp"

namespace tfinv {

GridSpec default_grid_for_order(int d, int N) {
    GridSpec g;
    g.d = d;
    g.h = 0.0625;
    g.L = std::max(10.0, std::sqrt(2.0 * (2.0 * N + d)) + 6.0);
    return g;
}

HermiteExpansion analyze(const GridFunction& f, int N, int nodes_per_axis) {
    if (N < 0) throw std::invalid_argument("analyze: negative truncation order");
    if (N > kMaxHermiteOrder) throw std::domain_error("analyze: truncation order above supported maximum");
    const int d = f.dim();
    const int want = 2 * N + 16;
    if (nodes_per_axis == 0) nodes_per_axis = want;
    if (nodes_per_axis < want)
        throw std::invalid_argument("analyze: quadrature node count insufficient for requested order");

    const GaussHermiteRule rule = gauss_hermite(nodes_per_axis);
    const int q = rule.size();

    // f at the tensor quadrature nodes
    std::vector<cplx> fval(static_cast<size_t>(std::pow(static_cast<double>(q), d)) + 0);
    {
        std::size_t total = 1;
        for (int j = 0; j < d; ++j) total *= static_cast<std::size_t>(q);
        fval.resize(total);
        std::vector<double> pt(static_cast<size_t>(d));
        for (std::size_t i = 0; i < total; ++i) {
            std::size_t r = i;
            for (int j = d - 1; j >= 0; --j) {
                pt[static_cast<size_t>(j)] = rule.node[r % static_cast<std::size_t>(q)];
                r /= static_cast<std::size_t>(q);
            }
            fval[i] = f.value_at(pt);
        }
    }

    // per-axis Hermite function tables at the nodes: H[j][n*q + k] = h_n(node_k)
    std::vector<double> table(static_cast<size_t>((N + 1) * q));
    std::vector<double> hv;
    for (int k = 0; k < q; ++k) {
        hermite_values_1d(N, rule.node[static_cast<size_t>(k)], hv);
        for (int n = 0; n <= N; ++n) table[static_cast<size_t>(n * q + k)] = hv[static_cast<size_t>(n)];
    }

    HermiteExpansion out(d, N);
    const auto idxs = indices_up_to(d, N);
    std::vector<double> wbuf(static_cast<size_t>(q));
    for (const MultiIndex& alpha : idxs) {
        // c = sum over tensor nodes of prod_j W_{k_j} h_{alpha_j}(x_{k_j}) * f
        cplx acc(0.0, 0.0);
        std::size_t total = fval.size();
        for (std::size_t i = 0; i < total; ++i) {
            std::size_t r = i;
            double w = 1.0;
            for (int j = d - 1; j >= 0; --j) {
                const std::size_t k = r % static_cast<std::size_t>(q);
                r /= static_cast<std::size_t>(q);
                w *= rule.weight[k] * table[static_cast<size_t>(alpha.e[static_cast<size_t>(j)] * q) + k];
            }
            acc += w * fval[i];
        }
        out.coef[alpha] = acc;
    }
    return out;
}

GridFunction synthesize(const HermiteExpansion& c, const GridSpec& spec) {
    if (spec.d != c.d) throw std::invalid_argument("synthesize: grid dimension mismatch");
    // copy what the evaluator needs; it outlives this call
    auto coef = c.coef;
    const int d = c.d;
    auto eval = [coef, d](const std::vector<double>& pt) -> cplx {
        cplx s(0.0, 0.0);
        // per-axis value tables up to the max populated order, built per call
        int nmax = 0;
        for (const auto& [a, v] : coef)
            for (int j = 0; j < d; ++j) nmax = std::max(nmax, a.e[static_cast<size_t>(j)]);
        std::vector<std::vector<double>> tab(static_cast<size_t>(d));
        for (int j = 0; j < d; ++j) hermite_values_1d(nmax, pt[static_cast<size_t>(j)], tab[static_cast<size_t>(j)]);
        for (const auto& [a, v] : coef) {
            double hprod = 1.0;
            for (int j = 0; j < d; ++j)
                hprod *= tab[static_cast<size_t>(j)][static_cast<size_t>(a.e[static_cast<size_t>(j)])];
            s += v * hprod;
        }
        return s;
    };
    return GridFunction::sample(spec, eval);
}

cplx pairing(const HermiteExpansion& f, const HermiteExpansion& phi) {
    if (f.d != phi.d) throw std::invalid_argument("pairing: dimension mismatch");
    // iterate the smaller map
    const bool f_small = f.coef.size() <= phi.coef.size();
    const auto& small = f_small ? f.coef : phi.coef;
    cplx s(0.0, 0.0);
    for (const auto& [a, v] : small) {
        if (f_small)
            s += v * std::conj(phi.at(a));
        else
            s += f.at(a) * std::conj(v);
    }
    return s;
}

HermiteExpansion oscillator_power(const HermiteExpansion& f, int j, int sign) {
    if (sign != 1 && sign != -1) throw std::invalid_argument("oscillator_power: sign must be +1 or -1");
    if (j < 0) throw std::invalid_argument("oscillator_power: negative power");
    HermiteExpansion out(f.d, f.truncation);
    for (const auto& [a, v] : f.coef) {
        const double lam = 2.0 * a.order() + f.d;
        out.coef[a] = v * std::pow(lam, sign * j);
    }
    return out;
}

GaussianPairingRecord gaussian_pairing_bound(const HermiteExpansion& f, const SpaceModel& space,
                                             int j, const GridSpec* grid) {
    if (space.d != f.d) throw std::invalid_argument("gaussian_pairing_bound: dimension mismatch");
    const double pi_d4 = std::pow(3.14159265358979323846, 0.25 * f.d);

    HermiteExpansion phi(f.d, 0);
    phi.set(MultiIndex::zeros(f.d), pi_d4); // e^{-|x|^2/2} = pi^{d/4} h_0

    GaussianPairingRecord rec;
    rec.pairing_abs = std::abs(pairing(f, phi));
    rec.hj_norm_phi = oscillator_power(phi, j, +1).l2_norm();

    const GridSpec spec = grid ? *grid : default_grid_for_order(f.d, std::max(f.order(), 1));
    const GridFunction fg = synthesize(f, spec);
    const double nf = space.norm(fg);
    if (nf == 0.0) throw std::invalid_argument("gaussian_pairing_bound: zero function has no bound constant");
    rec.bound_constant = rec.pairing_abs / nf;
    return rec;
}

} // namespace tfinv
