#include "tfinv/spaces.hpp"

#include <cmath>
#include <sstream>

namespace tfinv {

Weight Weight::parse(const std::string& s) {
    Weight w;
    w.repr = s;
    if (s == "2+sin") {
        w.lo = 1.0;
        w.hi = 3.0;
        return w;
    }
    if (s.rfind("const:", 0) == 0) {
        const double c = std::stod(s.substr(6));
        if (c <= 0.0) throw std::invalid_argument("Weight: constant must be positive");
        w.lo = w.hi = c;
        return w;
    }
    if (s.rfind("step:", 0) == 0) {
        std::istringstream in(s.substr(5));
        double lo, hi, c, width;
        char comma;
        if (!(in >> lo >> comma >> hi >> comma >> c >> comma >> width) || lo <= 0.0 || hi < lo || width <= 0.0)
            throw std::invalid_argument("Weight: bad step parameters, want step:lo,hi,center,width");
        w.lo = lo;
        w.hi = hi;
        return w;
    }
    throw std::invalid_argument("Weight: unknown form '" + s + "'");
}

double Weight::operator()(double y1) const {
    if (repr == "2+sin") return 2.0 + std::sin(y1);
    if (repr.rfind("const:", 0) == 0) return lo;
    // step:lo,hi,c,width
    std::istringstream in(repr.substr(5));
    double lo_, hi_, c, width;
    char comma;
    in >> lo_ >> comma >> hi_ >> comma >> c >> comma >> width;
    return lo_ + (hi_ - lo_) / (1.0 + std::exp(-(y1 - c) / width));
}

SpaceModel SpaceModel::plain_l2(int d) {
    SpaceModel m;
    m.kind = SpaceKind::PlainL2;
    m.d = d;
    return m;
}

SpaceModel SpaceModel::weighted_l2(int d, const std::string& weight_repr) {
    SpaceModel m;
    m.kind = SpaceKind::WeightedL2;
    m.d = d;
    m.weight = Weight::parse(weight_repr);
    return m;
}

SpaceModel SpaceModel::sobolev(int d, double s) {
    SpaceModel m;
    m.kind = SpaceKind::SobolevHs;
    m.d = d;
    m.s = s;
    return m;
}

SpaceModel SpaceModel::parse(const nlohmann::json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    const int d = j.at("d").get<int>();
    if (d < 1) throw std::invalid_argument("SpaceModel: dimension must be positive");
    if (kind == "plain_l2") return plain_l2(d);
    if (kind == "weighted_l2") return weighted_l2(d, j.at("weight").get<std::string>());
    if (kind == "sobolev") return sobolev(d, j.at("s").get<double>());
    throw std::invalid_argument("SpaceModel: unknown kind '" + kind + "'");
}

nlohmann::json SpaceModel::to_json() const {
    switch (kind) {
        case SpaceKind::PlainL2: return {{"kind", "plain_l2"}, {"d", d}};
        case SpaceKind::WeightedL2: return {{"kind", "weighted_l2"}, {"d", d}, {"weight", weight.repr}};
        case SpaceKind::SobolevHs: return {{"kind", "sobolev"}, {"d", d}, {"s", s}};
    }
    throw std::logic_error("SpaceModel::to_json: bad kind");
}

std::string SpaceModel::name() const {
    switch (kind) {
        case SpaceKind::PlainL2: return "plain_l2";
        case SpaceKind::WeightedL2: return "weighted_l2(" + weight.repr + ")";
        case SpaceKind::SobolevHs: return "sobolev(s=" + std::to_string(s) + ")";
    }
    return "?";
}

std::optional<double> SpaceModel::declared_c0() const {
    switch (kind) {
        case SpaceKind::PlainL2: return 1.0;
        case SpaceKind::WeightedL2: return std::sqrt(weight.hi / weight.lo);
        case SpaceKind::SobolevHs: return std::nullopt;
    }
    return std::nullopt;
}

bool SpaceModel::xi_independent_norm() const { return kind != SpaceKind::SobolevHs; }

void require_supported(const GridFunction& f, const char* who) {
    const double m = f.max_abs();
    if (m == 0.0) return;
    if (f.boundary_max_abs() > 1e-8 * m)
        throw std::domain_error(std::string(who) + ": boundary samples not negligible, grid radius too small");
}

namespace {

double hd(const GridFunction& f) {
    double v = 1.0;
    for (int j = 0; j < f.dim(); ++j) v *= f.spacing();
    return v;
}

/* weighted L2 sum with the weight argument shifted by x1 on the first axis */
double weighted_sq(const SpaceModel& m, const GridFunction& f, double x1) {
    const int n = f.nodes_per_axis();
    const int d = f.dim();
    double s = 0.0;
    if (d == 1) {
        for (int i = 0; i < n; ++i)
            s += m.weight(f.node_coord(i) + x1) * std::norm(f.samples()[static_cast<size_t>(i)]);
    } else {
        // weight reads the first coordinate only; accumulate per first-axis slab
        std::size_t slab = f.size() / static_cast<std::size_t>(n);
        for (int i = 0; i < n; ++i) {
            double part = 0.0;
            const std::size_t off = static_cast<std::size_t>(i) * slab;
            for (std::size_t k = 0; k < slab; ++k) part += std::norm(f.samples()[off + k]);
            s += m.weight(f.node_coord(i) + x1) * part;
        }
    }
    return s * hd(f);
}

cplx weighted_inner(const SpaceModel& m, const GridFunction& f, const GridFunction& g, double x1) {
    const int n = f.nodes_per_axis();
    const int d = f.dim();
    cplx s(0.0, 0.0);
    if (d == 1) {
        for (int i = 0; i < n; ++i)
            s += m.weight(f.node_coord(i) + x1) * f.samples()[static_cast<size_t>(i)] *
                 std::conj(g.samples()[static_cast<size_t>(i)]);
    } else {
        std::size_t slab = f.size() / static_cast<std::size_t>(n);
        for (int i = 0; i < n; ++i) {
            cplx part(0.0, 0.0);
            const std::size_t off = static_cast<std::size_t>(i) * slab;
            for (std::size_t k = 0; k < slab; ++k)
                part += f.samples()[off + k] * std::conj(g.samples()[off + k]);
            s += m.weight(f.node_coord(i) + x1) * part;
        }
    }
    return s * hd(f);
}

/* Sobolev quadratic form sum_k (1+|omega_k + xi|^2)^s fhat conj(ghat) dOmega/(2pi)^d */
cplx sobolev_form(const SpaceModel& m, const Spectrum& F, const Spectrum& G,
                  const std::vector<double>& xi) {
    const int d = F.d;
    const int n = F.n;
    const double cell = std::pow(F.domega / (2.0 * 3.14159265358979323846), d);
    cplx s(0.0, 0.0);
    for (std::size_t flat = 0; flat < F.value.size(); ++flat) {
        std::size_t r = flat;
        double w2 = 0.0;
        for (int j = d - 1; j >= 0; --j) {
            const int k = static_cast<int>(r % static_cast<std::size_t>(n));
            r /= static_cast<std::size_t>(n);
            const double om = F.freq_coord(k) + (xi.empty() ? 0.0 : xi[static_cast<size_t>(j)]);
            w2 += om * om;
        }
        s += std::pow(1.0 + w2, m.s) * F.value[flat] * std::conj(G.value[flat]);
    }
    return s * cell;
}

} // namespace

Spectrum dft(const GridFunction& f) {
    const int d = f.dim();
    const int n = f.nodes_per_axis();
    const int m = f.half_count();
    Spectrum sp;
    sp.d = d;
    sp.n = n;
    sp.domega = 2.0 * 3.14159265358979323846 / (n * f.spacing());
    sp.value = f.samples();

    // per-axis naive DFT with explicit symmetric frequency assignment
    std::vector<cplx> col(static_cast<size_t>(n)), out(static_cast<size_t>(n));
    std::size_t stride = 1;
    for (int axis = d - 1; axis >= 0; --axis) {
        const std::size_t nlines = sp.value.size() / static_cast<std::size_t>(n);
        for (std::size_t line = 0; line < nlines; ++line) {
            // gather: index along 'axis' with the other axes fixed
            const std::size_t block = stride * static_cast<std::size_t>(n);
            const std::size_t base = (line / stride) * block + (line % stride);
            for (int i = 0; i < n; ++i) col[static_cast<size_t>(i)] = sp.value[base + static_cast<size_t>(i) * stride];
            for (int k = 0; k < n; ++k) {
                const double omega = (k - m) * sp.domega;
                cplx acc(0.0, 0.0);
                for (int i = 0; i < n; ++i) {
                    const double y = (i - m) * f.spacing();
                    acc += col[static_cast<size_t>(i)] * std::polar(1.0, -omega * y);
                }
                out[static_cast<size_t>(k)] = acc * f.spacing();
            }
            for (int k = 0; k < n; ++k) sp.value[base + static_cast<size_t>(k) * stride] = out[static_cast<size_t>(k)];
        }
        stride *= static_cast<std::size_t>(n);
    }
    return sp;
}

double SpaceModel::norm(const GridFunction& f) const {
    if (f.dim() != d) throw std::invalid_argument("SpaceModel::norm: dimension mismatch");
    require_supported(f, "SpaceModel::norm");
    switch (kind) {
        case SpaceKind::PlainL2: return grid_norm_l2(f);
        case SpaceKind::WeightedL2: return std::sqrt(weighted_sq(*this, f, 0.0));
        case SpaceKind::SobolevHs: {
            const Spectrum F = dft(f);
            return std::sqrt(std::max(0.0, sobolev_form(*this, F, F, {}).real()));
        }
    }
    throw std::logic_error("SpaceModel::norm: bad kind");
}

cplx SpaceModel::inner(const GridFunction& f, const GridFunction& g) const {
    if (f.dim() != d || g.dim() != d) throw std::invalid_argument("SpaceModel::inner: dimension mismatch");
    switch (kind) {
        case SpaceKind::PlainL2: return grid_inner(f, g);
        case SpaceKind::WeightedL2: return weighted_inner(*this, f, g, 0.0);
        case SpaceKind::SobolevHs: return sobolev_form(*this, dft(f), dft(g), {});
    }
    throw std::logic_error("SpaceModel::inner: bad kind");
}

double SpaceModel::norm_shifted(const GridFunction& f, const std::vector<double>& x,
                                const std::vector<double>& xi) const {
    if (f.dim() != d) throw std::invalid_argument("SpaceModel::norm_shifted: dimension mismatch");
    if (static_cast<int>(x.size()) != d || static_cast<int>(xi.size()) != d)
        throw std::invalid_argument("SpaceModel::norm_shifted: x/xi dimension mismatch");
    require_supported(f, "SpaceModel::norm_shifted");
    switch (kind) {
        case SpaceKind::PlainL2: return grid_norm_l2(f);
        case SpaceKind::WeightedL2:
            // || T_x f ||_w^2 = integral w(y + x) |f(y)|^2 dy; modulation drops out
            return std::sqrt(weighted_sq(*this, f, x[0]));
        case SpaceKind::SobolevHs: {
            // translation only rotates the spectrum's phase; modulation shifts it
            const Spectrum F = dft(f);
            return std::sqrt(std::max(0.0, sobolev_form(*this, F, F, xi).real()));
        }
    }
    throw std::logic_error("SpaceModel::norm_shifted: bad kind");
}

cplx SpaceModel::inner_shifted(const GridFunction& f, const GridFunction& g, const std::vector<double>& x,
                               const std::vector<double>& xi) const {
    if (f.dim() != d || g.dim() != d) throw std::invalid_argument("SpaceModel::inner_shifted: dimension mismatch");
    switch (kind) {
        case SpaceKind::PlainL2: return grid_inner(f, g);
        case SpaceKind::WeightedL2: return weighted_inner(*this, f, g, x.empty() ? 0.0 : x[0]);
        case SpaceKind::SobolevHs: return sobolev_form(*this, dft(f), dft(g), xi);
    }
    throw std::logic_error("SpaceModel::inner_shifted: bad kind");
}

} // namespace tfinv
