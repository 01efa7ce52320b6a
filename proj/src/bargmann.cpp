#include "tfinv/bargmann.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tfinv/analysis.hpp"

namespace tfinv {

namespace {

constexpr double kGl4Node[4] = {-0.8611363115940526, -0.3399810435848563, 0.3399810435848563,
                                0.8611363115940526};
constexpr double kGl4Weight[4] = {0.34785484513745385, 0.6521451548625461, 0.6521451548625461,
                                  0.34785484513745385};

cplx int_pow(cplx base, int e) {
    cplx out{1.0, 0.0};
    for (int k = 0; k < e; ++k) out *= base;
    return out;
}

double vec_norm(const std::vector<double>& v) {
    double s = 0.0;
    for (double t : v) s += t * t;
    return std::sqrt(s);
}

double vec_dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

} // namespace

ComplexPoint ComplexPoint::from_real(const std::vector<double>& x, const std::vector<double>& xi) {
    if (x.size() != xi.size())
        throw std::invalid_argument("ComplexPoint::from_real: mismatched part sizes");
    ComplexPoint p;
    p.z.reserve(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) p.z.emplace_back(x[j], xi[j]);
    return p;
}

std::vector<double> ComplexPoint::x_part() const {
    std::vector<double> out(z.size());
    for (std::size_t j = 0; j < z.size(); ++j) out[j] = z[j].real();
    return out;
}

std::vector<double> ComplexPoint::xi_part() const {
    std::vector<double> out(z.size());
    for (std::size_t j = 0; j < z.size(); ++j) out[j] = z[j].imag();
    return out;
}

ComplexPoint ComplexPoint::conj() const {
    ComplexPoint p;
    p.z.reserve(z.size());
    for (const cplx& v : z) p.z.push_back(std::conj(v));
    return p;
}

ComplexPoint ComplexPoint::operator*(cplx s) const {
    ComplexPoint p;
    p.z.reserve(z.size());
    for (const cplx& v : z) p.z.push_back(v * s);
    return p;
}

ComplexPoint ComplexPoint::operator+(const ComplexPoint& o) const {
    if (z.size() != o.z.size()) throw std::invalid_argument("ComplexPoint: dimension mismatch");
    ComplexPoint p;
    p.z.reserve(z.size());
    for (std::size_t j = 0; j < z.size(); ++j) p.z.push_back(z[j] + o.z[j]);
    return p;
}

ComplexPoint ComplexPoint::operator-() const {
    ComplexPoint p;
    p.z.reserve(z.size());
    for (const cplx& v : z) p.z.push_back(-v);
    return p;
}

double ComplexPoint::abs_sq() const {
    double s = 0.0;
    for (const cplx& v : z) s += std::norm(v);
    return s;
}

double ComplexPoint::abs() const { return std::sqrt(abs_sq()); }

cplx pairing(const ComplexPoint& a, const ComplexPoint& b) {
    if (a.z.size() != b.z.size()) throw std::invalid_argument("pairing: dimension mismatch");
    cplx s{0.0, 0.0};
    for (std::size_t j = 0; j < a.z.size(); ++j) s += a.z[j] * std::conj(b.z[j]);
    return s;
}

cplx BargmannFunction::evaluate(const ComplexPoint& zp) const {
    if (zp.dim() != d) throw std::invalid_argument("BargmannFunction::evaluate: dimension mismatch");
    ComplexPoint arg = tag ? zp + (-tag->w) : zp;
    cplx core{0.0, 0.0};
    for (const auto& [alpha, c] : coef) {
        cplx term = c * std::exp(-0.5 * alpha.log_factorial());
        for (int j = 0; j < d; ++j)
            term *= int_pow(arg.z[static_cast<std::size_t>(j)], alpha.e[static_cast<std::size_t>(j)]);
        core += term;
    }
    if (!tag) return core;
    const cplx expo = cplx(-0.5 * tag->w.abs_sq(), 0.0) + pairing(zp, tag->w);
    return tag->phase * std::exp(expo) * core;
}

double BargmannFunction::coef_l2() const {
    double s = 0.0;
    for (const auto& [a, c] : coef) s += std::norm(c);
    return std::sqrt(s);
}

int BargmannFunction::order() const {
    int o = 0;
    for (const auto& [a, c] : coef)
        if (std::abs(c) > 0.0) o = std::max(o, a.order());
    return o;
}

nlohmann::json BargmannFunction::to_json() const {
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& [a, c] : coef)
        entries.push_back({{"alpha", a.e}, {"re", c.real()}, {"im", c.imag()}});
    nlohmann::json j{{"dimension", d}, {"entries", entries}};
    if (tag) {
        nlohmann::json wj = nlohmann::json::array();
        for (const cplx& v : tag->w.z) wj.push_back({v.real(), v.imag()});
        j["tag"] = {{"w", wj}, {"phase", {tag->phase.real(), tag->phase.imag()}}};
    } else {
        j["tag"] = nullptr;
    }
    return j;
}

BargmannFunction bargmann(const HermiteExpansion& f) {
    BargmannFunction F;
    F.d = f.d;
    F.coef = f.coef;
    return F;
}

BargmannFunction weyl(const BargmannFunction& F, const ComplexPoint& w) {
    if (w.dim() != F.d) throw std::invalid_argument("weyl: displacement dimension mismatch");
    BargmannFunction out = F;
    if (!out.tag) {
        out.tag = DisplacementTag{w, cplx{1.0, 0.0}};
        return out;
    }
    const ComplexPoint prev = out.tag->w;
    out.tag->phase *= std::polar(1.0, -std::imag(pairing(w, prev)));
    out.tag->w = prev + w;
    return out;
}

double covariance_check(const HermiteExpansion& f, const std::vector<double>& x,
                        const std::vector<double>& xi, const std::vector<ComplexPoint>& samples,
                        int truncation) {
    const int d = f.d;
    if (static_cast<int>(x.size()) != d || static_cast<int>(xi.size()) != d)
        throw std::invalid_argument("covariance_check: displacement dimension mismatch");
    if (samples.empty()) throw std::invalid_argument("covariance_check: empty sample set");

    /* The displaced function's coefficient mass sits on shells Poisson-spread
     * around lam = (|x|^2+|xi|^2)/2; reach lam plus a wide tail so the
     * top-shell guard below stays quiet for every legal displacement. */
    const double lam = 0.5 * (vec_norm(x) * vec_norm(x) + vec_norm(xi) * vec_norm(xi));
    const int needed =
        f.order() + static_cast<int>(std::ceil(lam + 6.0 * std::sqrt(lam + 1.0))) + 10;
    const int N = truncation < 0 ? needed : truncation;

    /* the displaced-modulated function, sampled exactly through the
     * expansion's analytic evaluator, then re-expanded */
    const GridSpec spec = default_grid_for_order(d, N);
    const GridFunction fgrid = synthesize(f, spec);
    GridFunction g = GridFunction::sample(spec, [&](const std::vector<double>& pt) {
        std::vector<double> q(pt.size());
        for (std::size_t j = 0; j < pt.size(); ++j) q[j] = pt[j] - x[j];
        return std::polar(1.0, vec_dot(pt, xi)) * fgrid.value_at(q);
    });
    const HermiteExpansion analyzed = analyze(g, N);

    double total = 0.0, top = 0.0;
    for (const auto& [alpha, c] : analyzed.coef) {
        const double m = std::norm(c);
        total += m;
        if (alpha.order() >= N - 1) top += m;
    }
    if (total > 0.0 && top > 1e-6 * total)
        throw std::runtime_error(
            "covariance_check: truncation insufficient (top two shells carry > 1e-6 of the mass)");

    const BargmannFunction lhs = bargmann(analyzed);

    std::vector<double> neg_xi(xi);
    for (double& v : neg_xi) v = -v;
    const ComplexPoint wbar = ComplexPoint::from_real(x, neg_xi); // conj(x + i xi)
    BargmannFunction rhs = weyl(bargmann(f), wbar * cplx(1.0 / std::sqrt(2.0), 0.0));
    rhs.tag->phase *= std::polar(1.0, 0.5 * vec_dot(x, xi));

    double worst = 0.0;
    for (const ComplexPoint& zp : samples) {
        const cplx a = lhs.evaluate(zp);
        const cplx b = rhs.evaluate(zp);
        const double err = std::abs(a - b) / (std::abs(b) + 1e-14);
        if (err > worst) worst = err;
    }
    return worst;
}

std::vector<ComplexPoint> default_covariance_samples(int d) {
    if (d < 1) throw std::invalid_argument("default_covariance_samples: bad dimension");
    std::vector<ComplexPoint> out;
    const double radii[5] = {0.4, 0.8, 1.2, 1.6, 2.0};
    for (double rho : radii) {
        for (int k = 0; k < 16; ++k) {
            const double theta = M_PI / 16.0 + k * (2.0 * M_PI / 16.0);
            std::vector<cplx> z(static_cast<std::size_t>(d), cplx(0.35, 0.15));
            z[0] = std::polar(rho, theta);
            out.emplace_back(std::move(z));
        }
    }
    return out;
}

double fock_seminorm(const BargmannFunction& F, FockFamily family, double r,
                     const std::vector<ComplexPoint>& sample_set) {
    if (sample_set.empty()) throw std::invalid_argument("fock_seminorm: empty sample set");
    if (r < 0.0) throw std::invalid_argument("fock_seminorm: negative radius/exponent");
    double best = 0.0;
    for (const ComplexPoint& zp : sample_set) {
        const double az = zp.abs();
        double weight = 0.0;
        switch (family) {
        case FockFamily::A0inf: weight = std::exp(-0.5 * az * az) * std::pow(1.0 + az, -r); break;
        case FockFamily::A01: weight = std::exp(-0.5 * az * az - r * az); break;
        case FockFamily::Aflat:
            if (az > r + 1e-9)
                throw std::invalid_argument("fock_seminorm: Aflat sample outside the ball");
            weight = 1.0;
            break;
        }
        const double v = std::abs(F.evaluate(zp)) * weight;
        if (v > best) best = v;
    }
    return best;
}

std::vector<ComplexPoint> default_seminorm_samples(FockFamily family, double r) {
    const double rmax = family == FockFamily::Aflat ? r : std::max(2.0 * r, 8.0);
    std::vector<ComplexPoint> out;
    out.emplace_back(std::vector<cplx>{cplx(0.0, 0.0)});
    const int nr = static_cast<int>(std::floor(rmax / 0.02 + 1e-9));
    for (int i = 1; i <= nr; ++i) {
        const double rho = 0.02 * i;
        for (int k = 0; k < 32; ++k) {
            const double theta = k * (2.0 * M_PI / 32.0);
            out.emplace_back(std::vector<cplx>{std::polar(rho, theta)});
        }
    }
    return out;
}

double weighted_sup_estimate(const BargmannFunction& F,
                             const std::function<double(const ComplexPoint&)>& v0,
                             const std::vector<ComplexPoint>& sample_set) {
    if (sample_set.empty()) throw std::invalid_argument("weighted_sup_estimate: empty sample set");
    double best = 0.0;
    const double sqrt2 = std::sqrt(2.0);
    for (const ComplexPoint& zp : sample_set) {
        const ComplexPoint arg = (-zp.conj()) * cplx(sqrt2, 0.0);
        const double w = v0(arg);
        if (!(w > 0.0)) throw std::invalid_argument("weighted_sup_estimate: nonpositive weight");
        const double v = std::abs(F.evaluate(zp)) * std::exp(-0.5 * zp.abs_sq()) / w;
        if (v > best) best = v;
    }
    return best;
}

double gaussian_l2_witness(const BargmannFunction& F, double rmax, int radial_panels, int angles) {
    if (F.d != 1)
        throw std::invalid_argument("gaussian_l2_witness: implemented for one complex variable");
    if (rmax <= 0.0 || radial_panels < 1 || angles < 4)
        throw std::invalid_argument("gaussian_l2_witness: bad quadrature parameters");
    const double len = rmax / radial_panels;
    const double dtheta = 2.0 * M_PI / angles;
    double total = 0.0;
    for (int p = 0; p < radial_panels; ++p) {
        const double mid = (p + 0.5) * len;
        for (int q = 0; q < 4; ++q) {
            const double rho = mid + 0.5 * len * kGl4Node[q];
            const double wr = kGl4Weight[q] * 0.5 * len;
            double ring = 0.0;
            for (int k = 0; k < angles; ++k) {
                const ComplexPoint zp(std::vector<cplx>{std::polar(rho, k * dtheta)});
                ring += std::norm(F.evaluate(zp));
            }
            total += wr * rho * std::exp(-rho * rho) * ring * dtheta;
        }
    }
    return total / M_PI;
}

} // namespace tfinv
