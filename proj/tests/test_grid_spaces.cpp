#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "tfinv/analysis.hpp"
#include "tfinv/grid.hpp"
#include "tfinv/hermite.hpp"
#include "tfinv/rng.hpp"
#include "tfinv/spaces.hpp"

using namespace tfinv;

namespace {

GridFunction basis_on(const GridSpec& spec, int k) {
    return GridFunction::sample(spec, [k](const std::vector<double>& p) {
        double v = 1.0;
        for (std::size_t j = 0; j < p.size(); ++j) v *= hermite_value_1d(j == 0 ? k : 0, p[j]);
        return cplx(v, 0.0);
    });
}

const GridSpec kSpec1{1, 0.0625, 8.0};

} // namespace

TEST_CASE("grid geometry") {
    CHECK(kSpec1.half_count() == 128);
    CHECK(kSpec1.nodes_per_axis() == 257);
    GridFunction f = basis_on(kSpec1, 0);
    CHECK(f.node_coord(128) == 0.0);
    CHECK(f.node_coord(0) == doctest::Approx(-8.0));
    CHECK(f.size() == 257);

    // flatten/unflatten round trip on a 2-d grid
    GridSpec s2{2, 0.25, 2.0};
    GridFunction g = GridFunction::sample(s2, [](const std::vector<double>&) { return cplx(1.0, 0.0); });
    std::vector<int> idx{3, 11};
    std::vector<int> back;
    g.unflatten(g.flat(idx), back);
    CHECK(back == idx);
}

TEST_CASE("grid quadrature: norms and inner products of the basis") {
    GridFunction f0 = basis_on(kSpec1, 0);
    GridFunction f1 = basis_on(kSpec1, 1);
    CHECK(grid_norm_l2(f0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(grid_norm_l2(f1) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(grid_inner(f0, f1)) < 1e-12);
    // sesquilinearity: (i f, g) = i (f, g), (f, i g) = -i (f, g)
    const cplx ip = grid_inner(f0, f0);
    CHECK(std::abs(grid_inner(f0 * cplx(0, 1), f0) - cplx(0, 1) * ip) < 1e-12);
    CHECK(std::abs(grid_inner(f0, f0 * cplx(0, 1)) + cplx(0, 1) * ip) < 1e-12);
}

TEST_CASE("coefficient norm transfers to the grid") {
    // random expansion: quadrature l2 equals coefficient l2
    Rng rng(19);
    HermiteExpansion c(2, 10);
    for (const MultiIndex& a : indices_up_to(2, 10)) c.set(a, rng.complex_normal());
    GridFunction f = synthesize(c, default_grid_for_order(2, 10));
    CHECK(grid_norm_l2(f) == doctest::Approx(c.l2_norm()).epsilon(1e-10));
}

TEST_CASE("translate-modulate on the grid") {
    GridFunction f = basis_on(kSpec1, 0);

    SUBCASE("aligned translation with exact phase") {
        auto r = mod_translate(f, {0.5}, {0.7});
        CHECK(r.snap_error == doctest::Approx(0.0).epsilon(1e-15));
        CHECK(r.snapped_x[0] == doctest::Approx(0.5));
        // compare samples against the closed form e^{i 0.7 y} h_0(y - 0.5)
        for (int i : {40, 128, 200}) {
            const double y = r.g.node_coord(i);
            const cplx expect = std::polar(1.0, 0.7 * y) * hermite_value_1d(0, y - 0.5);
            CHECK(std::abs(r.g.samples()[static_cast<std::size_t>(i)] - expect) < 1e-13);
        }
        CHECK(grid_norm_l2(r.g) == doctest::Approx(1.0).epsilon(1e-12));
    }

    SUBCASE("off-grid request snaps to the nearest node") {
        const double want = 0.5 + 0.0625 / 3.0;
        auto r = mod_translate(f, {want}, {0.0});
        CHECK(r.snapped_x[0] == doctest::Approx(0.5).epsilon(1e-15));
        CHECK(r.snap_error == doctest::Approx(0.0625 / 3.0).epsilon(1e-12));
    }

    SUBCASE("support pushed off the grid is an error") {
        CHECK_THROWS_AS(mod_translate(f, {20.0}, {0.0}), std::domain_error);
    }
}

TEST_CASE("weight grammar") {
    Weight c4 = Weight::parse("const:4");
    CHECK(c4.lo == 4.0);
    CHECK(c4.hi == 4.0);
    CHECK(c4(1.7) == 4.0);

    Weight ts = Weight::parse("2+sin");
    CHECK(ts.lo == 1.0);
    CHECK(ts.hi == 3.0);
    CHECK(ts(0.0) == doctest::Approx(2.0));
    CHECK(ts(M_PI / 2) == doctest::Approx(3.0));

    Weight st = Weight::parse("step:1,4,0,1");
    CHECK(st.lo == 1.0);
    CHECK(st.hi == 4.0);
    CHECK(st(-50.0) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(st(50.0) == doctest::Approx(4.0).epsilon(1e-6));

    CHECK_THROWS_AS(Weight::parse("linear:1"), std::invalid_argument);
    CHECK_THROWS_AS(Weight::parse("step:4,1,0,1"), std::invalid_argument); // hi < lo
}

TEST_CASE("space model norms against closed forms") {
    GridFunction f0 = basis_on(kSpec1, 0);

    SUBCASE("plain") {
        SpaceModel m = SpaceModel::plain_l2(1);
        CHECK(m.norm(f0) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(m.declared_c0().value() == doctest::Approx(1.0));
        CHECK(m.xi_independent_norm());
    }

    SUBCASE("constant weight 4: norm doubles") {
        SpaceModel m = SpaceModel::weighted_l2(1, "const:4");
        CHECK(m.norm(f0) == doctest::Approx(2.0).epsilon(1e-12));
    }

    SUBCASE("2+sin weight: integral of sin against the squared Gaussian vanishes") {
        SpaceModel m = SpaceModel::weighted_l2(1, "2+sin");
        CHECK(m.norm(f0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
        CHECK(m.declared_c0().value() == doctest::Approx(std::sqrt(3.0)).epsilon(1e-13));
        CHECK(m.xi_independent_norm());

        // || T_x h_0 ||^2 = 2 + sin(x) e^{-1/4} for this weight
        const double x = 1.5;
        const double expect = std::sqrt(2.0 + std::sin(x) * std::exp(-0.25));
        CHECK(m.norm_shifted(f0, {x}, {0.0}) == doctest::Approx(expect).epsilon(1e-10));
        // and the materialized translate agrees
        auto r = mod_translate(f0, {x}, {0.0});
        CHECK(m.norm(r.g) == doctest::Approx(expect).epsilon(1e-10));
        // modulation alone never changes an L2-type norm
        CHECK(m.norm_shifted(f0, {0.0}, {3.3}) == doctest::Approx(m.norm(f0)).epsilon(1e-12));
    }

    SUBCASE("first-order Sobolev: Gaussian moments of the spectrum") {
        SpaceModel m = SpaceModel::sobolev(1, 1.0);
        CHECK(!m.declared_c0().has_value());
        CHECK(!m.xi_independent_norm());
        CHECK(m.norm(f0) == doctest::Approx(std::sqrt(1.5)).epsilon(1e-10));
        // modulation by 3 shifts the spectrum: 1 + 9 + 1/2 = 10.5
        CHECK(m.norm_shifted(f0, {0.0}, {3.0}) == doctest::Approx(std::sqrt(10.5)).epsilon(1e-10));
        auto r = mod_translate(f0, {0.0}, {3.0});
        CHECK(m.norm(r.g) == doctest::Approx(std::sqrt(10.5)).epsilon(1e-10));
        // translation alone never changes a Fourier-side norm
        CHECK(m.norm_shifted(f0, {2.0}, {0.0}) == doctest::Approx(m.norm(f0)).epsilon(1e-12));
    }
}

TEST_CASE("inner products follow the norms") {
    GridFunction f0 = basis_on(kSpec1, 0);
    GridFunction f2 = basis_on(kSpec1, 2);
    SpaceModel m = SpaceModel::weighted_l2(1, "2+sin");
    // polarization: 4 Re(f,g) = ||f+g||^2 - ||f-g||^2
    const double lhs = 4.0 * m.inner(f0, f2).real();
    const double np = m.norm(f0 + f2), nm = m.norm(f0 - f2);
    CHECK(lhs == doctest::Approx(np * np - nm * nm).epsilon(1e-9));
    // shifted inner matches shifted norm on the diagonal
    const cplx self = m.inner_shifted(f0, f0, {1.0}, {0.5});
    const double ns = m.norm_shifted(f0, {1.0}, {0.5});
    CHECK(std::abs(self - cplx(ns * ns, 0.0)) < 1e-10);
}

TEST_CASE("spectrum of the Gaussian") {
    GridFunction f0 = basis_on(kSpec1, 0);
    Spectrum sp = dft(f0);
    CHECK(sp.n == 257);
    const int mid = (sp.n - 1) / 2;
    CHECK(sp.freq_coord(mid) == doctest::Approx(0.0));
    // fhat(0) = integral h_0 = sqrt(2 pi) pi^{-1/4}
    const double expect = std::sqrt(2.0 * M_PI) * std::pow(M_PI, -0.25);
    CHECK(std::abs(sp.value[static_cast<std::size_t>(mid)] - cplx(expect, 0.0)) < 1e-10);
    // Parseval: sum |fhat|^2 domega / 2pi = ||f||^2
    double s = 0.0;
    for (const cplx& v : sp.value) s += std::norm(v);
    s *= sp.domega / (2.0 * M_PI);
    CHECK(s == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("support guard") {
    GridFunction ok = basis_on(kSpec1, 0);
    CHECK_NOTHROW(require_supported(ok, "test"));
    GridFunction bad =
        GridFunction::sample(kSpec1, [](const std::vector<double>&) { return cplx(1.0, 0.0); });
    CHECK_THROWS_AS(require_supported(bad, "test"), std::domain_error);
}
