#include "tfinv/grid.hpp"

#include <cmath>

namespace tfinv {

namespace {
std::size_t total_size(const GridSpec& spec) {
    std::size_t n = 1;
    for (int j = 0; j < spec.d; ++j) n *= static_cast<std::size_t>(spec.nodes_per_axis());
    return n;
}
} // namespace

GridFunction::GridFunction(GridSpec spec, std::vector<cplx> samples)
    : spec_(spec), m_(spec.half_count()), samples_(std::move(samples)) {
    if (spec_.d < 1) throw std::invalid_argument("GridFunction: dimension must be positive");
    if (samples_.size() != total_size(spec_))
        throw std::invalid_argument("GridFunction: sample count does not match grid");
}

GridFunction GridFunction::sample(GridSpec spec, std::function<cplx(const std::vector<double>&)> f) {
    GridFunction g(spec, std::vector<cplx>(total_size(spec), cplx(0.0, 0.0)));
    std::vector<double> pt(static_cast<size_t>(spec.d));
    for (std::size_t i = 0; i < g.samples_.size(); ++i) {
        g.node_point(i, pt);
        g.samples_[i] = f(pt);
    }
    g.eval_ = std::move(f);
    return g;
}

std::size_t GridFunction::flat(const std::vector<int>& idx) const {
    const int n = nodes_per_axis();
    std::size_t r = 0;
    for (int j = 0; j < spec_.d; ++j) {
        const int i = idx[static_cast<size_t>(j)];
        if (i < 0 || i >= n) throw std::out_of_range("GridFunction::flat: index outside grid");
        r = r * static_cast<std::size_t>(n) + static_cast<std::size_t>(i);
    }
    return r;
}

void GridFunction::unflatten(std::size_t flat_idx, std::vector<int>& idx) const {
    const int n = nodes_per_axis();
    idx.resize(static_cast<size_t>(spec_.d));
    for (int j = spec_.d - 1; j >= 0; --j) {
        idx[static_cast<size_t>(j)] = static_cast<int>(flat_idx % static_cast<std::size_t>(n));
        flat_idx /= static_cast<std::size_t>(n);
    }
}

void GridFunction::node_point(std::size_t flat_idx, std::vector<double>& pt) const {
    const int n = nodes_per_axis();
    pt.resize(static_cast<size_t>(spec_.d));
    for (int j = spec_.d - 1; j >= 0; --j) {
        pt[static_cast<size_t>(j)] = node_coord(static_cast<int>(flat_idx % static_cast<std::size_t>(n)));
        flat_idx /= static_cast<std::size_t>(n);
    }
}

namespace {

/* 8-point Lagrange interpolation along one axis.  Used only when a grid holds
 * raw samples with no analytic evaluator; accuracy is O(h^8). */
constexpr int kStencil = 8;

double lagrange_weight(const double* xs, int k, double x) {
    double w = 1.0;
    for (int j = 0; j < kStencil; ++j) {
        if (j == k) continue;
        w *= (x - xs[j]) / (xs[k] - xs[j]);
    }
    return w;
}

} // namespace

cplx GridFunction::value_at(const std::vector<double>& pt) const {
    if (static_cast<int>(pt.size()) != spec_.d)
        throw std::invalid_argument("GridFunction::value_at: point dimension mismatch");
    if (eval_) return eval_(pt);

    // Tensor Lagrange interpolation; far outside the grid the function is
    // treated as zero (the support checks elsewhere guarantee decay).
    const int n = nodes_per_axis();
    std::vector<int> base(static_cast<size_t>(spec_.d));
    std::vector<std::vector<double>> wts(static_cast<size_t>(spec_.d), std::vector<double>(kStencil));
    for (int j = 0; j < spec_.d; ++j) {
        const double u = pt[static_cast<size_t>(j)] / spec_.h + m_;
        if (u < -1.0 || u > n) return {0.0, 0.0};
        int b = static_cast<int>(std::floor(u)) - kStencil / 2 + 1;
        if (b < 0) b = 0;
        if (b > n - kStencil) b = n - kStencil;
        base[static_cast<size_t>(j)] = b;
        double xs[kStencil];
        for (int k = 0; k < kStencil; ++k) xs[k] = node_coord(b + k);
        for (int k = 0; k < kStencil; ++k)
            wts[static_cast<size_t>(j)][static_cast<size_t>(k)] = lagrange_weight(xs, k, pt[static_cast<size_t>(j)]);
    }
    // accumulate over the tensor stencil
    std::vector<int> off(static_cast<size_t>(spec_.d), 0);
    std::vector<int> idx(static_cast<size_t>(spec_.d));
    cplx acc(0.0, 0.0);
    while (true) {
        double w = 1.0;
        for (int j = 0; j < spec_.d; ++j) {
            idx[static_cast<size_t>(j)] = base[static_cast<size_t>(j)] + off[static_cast<size_t>(j)];
            w *= wts[static_cast<size_t>(j)][static_cast<size_t>(off[static_cast<size_t>(j)])];
        }
        acc += w * samples_[flat(idx)];
        int j = spec_.d - 1;
        while (j >= 0 && ++off[static_cast<size_t>(j)] == kStencil) {
            off[static_cast<size_t>(j)] = 0;
            --j;
        }
        if (j < 0) break;
    }
    return acc;
}

double GridFunction::max_abs() const {
    double m = 0.0;
    for (const cplx& v : samples_) m = std::max(m, std::abs(v));
    return m;
}

double GridFunction::boundary_max_abs() const {
    const int n = nodes_per_axis();
    double m = 0.0;
    std::vector<int> idx;
    for (std::size_t i = 0; i < samples_.size(); ++i) {
        unflatten(i, idx);
        bool boundary = false;
        for (int j = 0; j < spec_.d; ++j)
            if (idx[static_cast<size_t>(j)] == 0 || idx[static_cast<size_t>(j)] == n - 1) boundary = true;
        if (boundary) m = std::max(m, std::abs(samples_[i]));
    }
    return m;
}

void GridFunction::check_compatible(const GridFunction& o) const {
    if (spec_.d != o.spec_.d || m_ != o.m_ || spec_.h != o.spec_.h)
        throw std::invalid_argument("GridFunction: incompatible grids");
}

GridFunction& GridFunction::operator+=(const GridFunction& o) {
    check_compatible(o);
    for (std::size_t i = 0; i < samples_.size(); ++i) samples_[i] += o.samples_[i];
    eval_ = nullptr;
    return *this;
}

GridFunction& GridFunction::operator-=(const GridFunction& o) {
    check_compatible(o);
    for (std::size_t i = 0; i < samples_.size(); ++i) samples_[i] -= o.samples_[i];
    eval_ = nullptr;
    return *this;
}

GridFunction& GridFunction::operator*=(cplx c) {
    for (auto& v : samples_) v *= c;
    eval_ = nullptr;
    return *this;
}

cplx grid_inner(const GridFunction& f, const GridFunction& g) {
    if (f.dim() != g.dim() || f.nodes_per_axis() != g.nodes_per_axis() || f.spacing() != g.spacing())
        throw std::invalid_argument("grid_inner: incompatible grids");
    cplx s(0.0, 0.0);
    const auto& a = f.samples();
    const auto& b = g.samples();
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * std::conj(b[i]);
    double hd = 1.0;
    for (int j = 0; j < f.dim(); ++j) hd *= f.spacing();
    return s * hd;
}

double grid_norm_l2(const GridFunction& f) {
    double s = 0.0;
    for (const cplx& v : f.samples()) s += std::norm(v);
    double hd = 1.0;
    for (int j = 0; j < f.dim(); ++j) hd *= f.spacing();
    return std::sqrt(s * hd);
}

ModTranslateResult mod_translate(const GridFunction& f, const std::vector<double>& x,
                                 const std::vector<double>& xi) {
    const int d = f.dim();
    if (static_cast<int>(x.size()) != d || static_cast<int>(xi.size()) != d)
        throw std::invalid_argument("mod_translate: x/xi dimension mismatch");

    const double h = f.spacing();
    std::vector<int> shift(static_cast<size_t>(d));
    ModTranslateResult r;
    r.snapped_x.resize(static_cast<size_t>(d));
    for (int j = 0; j < d; ++j) {
        const long long k = std::llround(x[static_cast<size_t>(j)] / h);
        shift[static_cast<size_t>(j)] = static_cast<int>(k);
        r.snapped_x[static_cast<size_t>(j)] = static_cast<double>(k) * h;
        r.snap_error = std::max(r.snap_error, std::abs(r.snapped_x[static_cast<size_t>(j)] - x[static_cast<size_t>(j)]));
    }

    const int n = f.nodes_per_axis();
    const double leak_tol = 1e-8 * f.max_abs();
    std::vector<cplx> out(f.size(), cplx(0.0, 0.0));
    std::vector<int> idx, src(static_cast<size_t>(d));
    std::vector<double> pt(static_cast<size_t>(d));
    double leak = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        f.unflatten(i, idx);
        bool inside = true;
        for (int j = 0; j < d; ++j) {
            src[static_cast<size_t>(j)] = idx[static_cast<size_t>(j)] - shift[static_cast<size_t>(j)];
            if (src[static_cast<size_t>(j)] < 0 || src[static_cast<size_t>(j)] >= n) inside = false;
        }
        if (!inside) continue;
        f.node_point(i, pt);
        double phase = 0.0;
        for (int j = 0; j < d; ++j) phase += pt[static_cast<size_t>(j)] * xi[static_cast<size_t>(j)];
        out[i] = std::polar(1.0, phase) * f.samples()[f.flat(src)];
    }
    // Samples shifted past the edge must have been negligible.
    std::vector<int> idx2(static_cast<size_t>(d));
    for (std::size_t i = 0; i < f.size(); ++i) {
        f.unflatten(i, idx2);
        bool lands_inside = true;
        for (int j = 0; j < d; ++j) {
            const int dst = idx2[static_cast<size_t>(j)] + shift[static_cast<size_t>(j)];
            if (dst < 0 || dst >= n) lands_inside = false;
        }
        if (!lands_inside) leak = std::max(leak, std::abs(f.samples()[i]));
    }
    if (leak > leak_tol)
        throw std::domain_error("mod_translate: translation pushes essential support off the grid");

    r.g = GridFunction(f.spec(), std::move(out));
    return r;
}

} // namespace tfinv
