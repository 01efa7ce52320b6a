#pragma once

#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

namespace tfinv {

using cplx = std::complex<double>;

/* Descriptor of a symmetric uniform grid: per axis, 2*floor(L/h)+1 nodes at
 * x_i = (i - floor(L/h)) * h, covering [-m h, m h] inside [-L, L]. */
struct GridSpec {
    int d = 1;
    double h = 0.0625;
    double L = 8.0;

    int half_count() const {
        if (h <= 0.0 || L <= 0.0) throw std::invalid_argument("GridSpec: h and L must be positive");
        return static_cast<int>(std::floor(L / h + 1e-12));
    }
    int nodes_per_axis() const { return 2 * half_count() + 1; }
};

/* Sampled realization of a function on R^d (d in {1,2} for the heavy paths,
 * higher d works but is untested at scale).  Samples are row-major over axes.
 * When the function came from an analytic description we keep the evaluator:
 * quadrature at off-grid nodes then uses it directly instead of interpolating. */
class GridFunction {
  public:
    GridFunction() = default;
    GridFunction(GridSpec spec, std::vector<cplx> samples);

    /* Sample a callable f(point) on the grid and remember it for off-grid use. */
    static GridFunction sample(GridSpec spec, std::function<cplx(const std::vector<double>&)> f);

    const GridSpec& spec() const { return spec_; }
    int dim() const { return spec_.d; }
    double spacing() const { return spec_.h; }
    int half_count() const { return m_; }
    int nodes_per_axis() const { return 2 * m_ + 1; }
    std::size_t size() const { return samples_.size(); }

    const std::vector<cplx>& samples() const { return samples_; }
    std::vector<cplx>& samples() { return samples_; }

    double node_coord(int i) const { return (i - m_) * spec_.h; }
    /* flatten/unflatten row-major multi-axis index */
    std::size_t flat(const std::vector<int>& idx) const;
    void unflatten(std::size_t flat_idx, std::vector<int>& idx) const;
    void node_point(std::size_t flat_idx, std::vector<double>& pt) const;

    bool has_evaluator() const { return static_cast<bool>(eval_); }
    void set_evaluator(std::function<cplx(const std::vector<double>&)> f) { eval_ = std::move(f); }

    /* Value at an arbitrary point: analytic evaluator when available, else
     * tensor Lagrange interpolation of order 8 (approximate; documented). */
    cplx value_at(const std::vector<double>& pt) const;

    double max_abs() const;
    /* Largest |sample| on the outermost index shell; the support-leakage
     * checks compare this against 1e-8 * max_abs(). */
    double boundary_max_abs() const;

    GridFunction& operator+=(const GridFunction& o);
    GridFunction& operator-=(const GridFunction& o);
    GridFunction& operator*=(cplx c);

    friend GridFunction operator+(GridFunction a, const GridFunction& b) { return a += b; }
    friend GridFunction operator-(GridFunction a, const GridFunction& b) { return a -= b; }
    friend GridFunction operator*(GridFunction a, cplx c) { return a *= c; }

  private:
    GridSpec spec_;
    int m_ = 0;
    std::vector<cplx> samples_;
    std::function<cplx(const std::vector<double>&)> eval_;

    void check_compatible(const GridFunction& o) const;
};

/* h^d * sum conj-free trapezoid-type quadrature; on these symmetric grids the
 * uniform sum is spectrally accurate for smooth decaying integrands. */
cplx grid_inner(const GridFunction& f, const GridFunction& g); // (f, g) = integral f conj(g)
double grid_norm_l2(const GridFunction& f);

/* e^{i<y,xi>} f(y - x) with x snapped to the grid.  Translation is an index
 * shift with zero fill; the modulation phase is applied exactly.  Throws when
 * the shift pushes essential support (relative level 1e-8) off the grid. */
struct ModTranslateResult {
    GridFunction g;
    std::vector<double> snapped_x; // the translation actually applied
    double snap_error = 0.0;       // L_inf distance between requested and snapped x
};
ModTranslateResult mod_translate(const GridFunction& f, const std::vector<double>& x,
                                 const std::vector<double>& xi);

} // namespace tfinv
