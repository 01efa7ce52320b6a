#include <doctest.h>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "tfinv/analysis.hpp"
#include "tfinv/averaging.hpp"
#include "tfinv/rng.hpp"

using namespace tfinv;

namespace {

GridSpec wide_spec() { return GridSpec{1, 0.0625, 12.0}; }

GridFunction basis1(int k, const GridSpec& spec) {
    HermiteExpansion c(1, k);
    c.set(MultiIndex::unit(1, 0, k), {1.0, 0.0});
    return synthesize(c, spec);
}

/* Discrete midpoint average of sin over [-R,R] with n nodes of spacing
 * delta = 2R/n picks up the Dirichlet-kernel factor (delta/2)/sin(delta/2)
 * relative to the continuum value (sin R)/R. */
double midpoint_sin_factor(double R, double spacing) {
    const int n = static_cast<int>(std::ceil(2.0 * R / spacing - 1e-12));
    const double delta = 2.0 * R / n;
    return (std::sin(R) / R) * (0.5 * delta) / std::sin(0.5 * delta);
}

} // namespace

TEST_CASE("cube spec validation and axis nodes") {
    CubeSpec bad{5.0, 2.0, CubeRule::Midpoint};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument); // spacing must resolve the cube
    CHECK_THROWS_AS((CubeSpec{-1.0, 0.125, CubeRule::Midpoint}).validate(), std::invalid_argument);

    CubeSpec cube{5.0, 0.125, CubeRule::Midpoint};
    std::vector<double> node, weight;
    cube.axis_nodes(node, weight);
    REQUIRE(node.size() == 80); // 2R/spacing is integral here
    REQUIRE(weight.size() == node.size());
    double wsum = 0.0;
    for (double w : weight) wsum += w;
    CHECK(wsum == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(node.front() == doctest::Approx(-5.0 + 0.0625).epsilon(1e-13)); // midpoint of first cell
    CHECK(node.back() == doctest::Approx(5.0 - 0.0625).epsilon(1e-13));
    CHECK(node[1] - node[0] == doctest::Approx(0.125).epsilon(1e-13));
}

TEST_CASE("plain average equals the L2 norm") {
    SpaceModel plain = SpaceModel::plain_l2(1);
    GridSpec spec = wide_spec();
    Rng rng(11);
    HermiteExpansion c(1, 9);
    for (const MultiIndex& a : indices_up_to(1, 9)) c.set(a, rng.complex_normal());
    GridFunction f = synthesize(c, spec);
    for (double R : {5.0, 20.0, 160.0}) {
        CubeSpec cube{R, 0.125, CubeRule::Midpoint};
        CHECK(averaged_norm(plain, f, cube) ==
              doctest::Approx(grid_norm_l2(f)).epsilon(1e-12));
    }
}

TEST_CASE("constant weight scales the average exactly") {
    SpaceModel m = SpaceModel::weighted_l2(1, "const:4");
    GridFunction f = basis1(3, wide_spec());
    CubeSpec cube{10.0, 0.125, CubeRule::Midpoint};
    CHECK(averaged_norm(m, f, cube) == doctest::Approx(2.0 * grid_norm_l2(f)).epsilon(1e-12));
}

TEST_CASE("oscillating weight: closed-form discrete average") {
    /* For w = 2 + sin and g = T_1 h_0:
     *   ||T_x g||_w^2 = 2 + int sin(y + x) |g(y)|^2 dy
     * and the midpoint average over x in [-R,R] leaves
     *   avg^2 = 2 + m1 * (sin R / R) * kappa,   m1 = int sin(y)|g|^2 dy.
     * Here m1 = sin(1) e^{-1/4} since |g|^2 recentres the Gaussian at 1. */
    SpaceModel m = SpaceModel::weighted_l2(1, "2+sin");
    GridSpec spec = wide_spec();
    GridFunction g = mod_translate(basis1(0, spec), {1.0}, {0.0}).g;
    const double m1 = std::sin(1.0) * std::exp(-0.25);

    for (double R : {5.0, 10.0, 40.0}) {
        CubeSpec cube{R, 0.125, CubeRule::Midpoint};
        const double expected = std::sqrt(2.0 + m1 * midpoint_sin_factor(R, 0.125));
        CHECK(averaged_norm(m, g, cube) == doctest::Approx(expected).epsilon(1e-11));
    }

    SUBCASE("Gauss-Legendre panels agree with the continuum law") {
        CubeSpec cube{5.0, 0.125, CubeRule::GaussLegendrePanels};
        const double expected = std::sqrt(2.0 + m1 * std::sin(5.0) / 5.0);
        CHECK(averaged_norm(m, g, cube) == doctest::Approx(expected).epsilon(1e-9));
    }

    SUBCASE("h_0 has no odd mass: average is sqrt(2) at every R") {
        GridFunction h0 = basis1(0, spec);
        for (double R : {5.0, 80.0}) {
            CubeSpec cube{R, 0.125, CubeRule::Midpoint};
            CHECK(averaged_norm(m, h0, cube) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
        }
    }
}

TEST_CASE("averaged inner product polarizes the averaged norm") {
    GridSpec spec = wide_spec();
    GridFunction h0 = basis1(0, spec), h1 = basis1(1, spec), h2 = basis1(2, spec);

    SUBCASE("diagonal recovers the squared norm") {
        SpaceModel m = SpaceModel::weighted_l2(1, "2+sin");
        CubeSpec cube{5.0, 0.125, CubeRule::Midpoint};
        const double n = averaged_norm(m, h2, cube);
        cplx ip = averaged_inner(m, h2, h2, cube);
        CHECK(std::abs(ip - cplx(n * n, 0.0)) < 1e-10);
    }
    SUBCASE("plain orthogonality survives averaging") {
        SpaceModel plain = SpaceModel::plain_l2(1);
        CubeSpec cube{5.0, 0.125, CubeRule::Midpoint};
        CHECK(std::abs(averaged_inner(plain, h0, h1, cube)) < 1e-9);
    }
    SUBCASE("polarization identity, both paths") {
        SpaceModel m = SpaceModel::weighted_l2(1, "2+sin");
        CubeSpec cube{50.0, 0.125, CubeRule::Midpoint};
        cplx ip = averaged_inner(m, h0, h2, cube);
        // 4 Re(f,g) = ||f+g||^2 - ||f-g||^2
        GridFunction sum = h0, diff = h0;
        for (std::size_t i = 0; i < sum.size(); ++i) {
            sum.samples()[i] += h2.samples()[i];
            diff.samples()[i] -= h2.samples()[i];
        }
        const double np = averaged_norm(m, sum, cube), nm = averaged_norm(m, diff, cube);
        CHECK(4.0 * ip.real() == doctest::Approx(np * np - nm * nm).epsilon(1e-8));
        // 4 Im(f,g) = ||f+ig||^2 - ||f-ig||^2
        GridFunction sum_i = h0, diff_i = h0;
        for (std::size_t i = 0; i < sum_i.size(); ++i) {
            sum_i.samples()[i] += cplx(0.0, 1.0) * h2.samples()[i];
            diff_i.samples()[i] -= cplx(0.0, 1.0) * h2.samples()[i];
        }
        const double nip = averaged_norm(m, sum_i, cube), nim = averaged_norm(m, diff_i, cube);
        CHECK(4.0 * ip.imag() == doctest::Approx(nip * nip - nim * nim).epsilon(1e-8));
    }
    SUBCASE("parallelogram law for the averaged norm") {
        SpaceModel m = SpaceModel::weighted_l2(1, "2+sin");
        CubeSpec cube{5.0, 0.125, CubeRule::Midpoint};
        Rng rng(23);
        for (int trial = 0; trial < 5; ++trial) {
            HermiteExpansion ca(1, 6), cb(1, 6);
            for (const MultiIndex& a : indices_up_to(1, 6)) {
                ca.set(a, rng.complex_normal());
                cb.set(a, rng.complex_normal());
            }
            GridFunction f = synthesize(ca, wide_spec()), g = synthesize(cb, wide_spec());
            GridFunction sum = f, diff = f;
            for (std::size_t i = 0; i < sum.size(); ++i) {
                sum.samples()[i] += g.samples()[i];
                diff.samples()[i] -= g.samples()[i];
            }
            const double nf = averaged_norm(m, f, cube), ng = averaged_norm(m, g, cube);
            const double np = averaged_norm(m, sum, cube), nm = averaged_norm(m, diff, cube);
            CHECK(np * np + nm * nm ==
                  doctest::Approx(2.0 * (nf * nf + ng * ng)).epsilon(1e-8));
        }
    }
}

TEST_CASE("averaged norm is absolutely homogeneous") {
    SpaceModel m = SpaceModel::weighted_l2(1, "2+sin");
    CubeSpec cube{5.0, 0.125, CubeRule::Midpoint};
    GridFunction f = basis1(1, wide_spec());
    const cplx lam(0.3, -1.2);
    GridFunction g = f;
    for (auto& s : g.samples()) s *= lam;
    CHECK(averaged_norm(m, g, cube) ==
          doctest::Approx(std::abs(lam) * averaged_norm(m, f, cube)).epsilon(1e-10));
}

TEST_CASE("invariance defect and its a-priori bound") {
    GridSpec spec = wide_spec();
    GridFunction h0 = basis1(0, spec);

    SUBCASE("plain space is exactly invariant") {
        SpaceModel plain = SpaceModel::plain_l2(1);
        CubeSpec cube{10.0, 0.125, CubeRule::Midpoint};
        InvarianceDefect d = invariance_defect(plain, h0, cube, {1.0}, {0.0});
        CHECK(d.defect < 1e-12);
        CHECK(d.bound == doctest::Approx(1.0 / 10.0).epsilon(1e-12)); // C0 = 1
    }
    SUBCASE("oscillating weight: defect obeys the 1/R bound") {
        SpaceModel m = SpaceModel::weighted_l2(1, "2+sin");
        for (double R : {10.0, 20.0, 40.0, 80.0}) {
            CubeSpec cube{R, 0.125, CubeRule::Midpoint};
            InvarianceDefect d = invariance_defect(m, h0, cube, {1.0}, {0.0});
            CAPTURE(R);
            CHECK(d.defect <= d.bound + 1e-6);
            CHECK(d.bound == doctest::Approx(3.0 * 1.0 * 1.0 * 2.0 / R).epsilon(1e-9)); // C0^2 |x0| ||f||_H^2 / R
            CHECK(d.base_norm == doctest::Approx(std::sqrt(2.0)).epsilon(1e-10));
        }
    }
    SUBCASE("modulation leaves a xi-independent norm alone") {
        SpaceModel m = SpaceModel::weighted_l2(1, "2+sin");
        CubeSpec cube{10.0, 0.125, CubeRule::Midpoint};
        InvarianceDefect d = invariance_defect(m, h0, cube, {0.0}, {0.7});
        CHECK(d.defect < 1e-12);
    }
    SUBCASE("degenerate cube is rejected") {
        SpaceModel m = SpaceModel::weighted_l2(1, "2+sin");
        CubeSpec cube{0.5, 0.125, CubeRule::Midpoint};
        CHECK_THROWS_AS(invariance_defect(m, h0, cube, {1.0}, {0.0}), std::invalid_argument);
    }
}

TEST_CASE("doubling schedule") {
    std::vector<double> s = doubling_schedule(5.0, 3);
    REQUIRE(s.size() == 4);
    CHECK(s[0] == 5.0);
    CHECK(s[3] == 40.0);
    CHECK_THROWS_AS(doubling_schedule(-1.0, 3), std::invalid_argument);
    CHECK_THROWS_AS(doubling_schedule(5.0, -1), std::invalid_argument);
}

TEST_CASE("full schedule report") {
    SpaceModel m = SpaceModel::weighted_l2(1, "2+sin");
    GridSpec spec = wide_spec();
    std::vector<GridFunction> family{basis1(0, spec), basis1(1, spec),
                                     mod_translate(basis1(0, spec), {1.0}, {0.0}).g};
    std::vector<std::string> ids{"h0", "h1", "shifted-h0"};
    AveragingReport rep = run_schedule(m, family, ids, 5.0, 3, {1.0}, {0.5});

    REQUIRE(rep.schedule == std::vector<double>{5.0, 10.0, 20.0, 40.0});
    REQUIRE(rep.rows.size() == 12); // 3 members x 4 radii
    CHECK(rep.C0 == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
    // every member is L2-normalized, so C should sit near sqrt(2)
    CHECK(std::abs(rep.C - std::sqrt(2.0)) < 0.01);
    CHECK(rep.bracket_ok);
    for (const auto& row : rep.rows) {
        CAPTURE(row.f_id);
        CAPTURE(row.R);
        CHECK(row.avg_norm >= row.sandwich_lo - 1e-9);
        CHECK(row.avg_norm <= row.sandwich_hi + 1e-9);
        CHECK(row.defect_translation <= row.er_bound + 1e-6);
    }
    // squared-norm Cauchy differences decay like 1/R (oscillation makes the
    // fitted slope the stable statement)
    REQUIRE(rep.cauchy_diffs.size() == 3);
    CHECK(rep.cauchy_decay_rate < -0.5);

    SUBCASE("serialization is loss-free and deterministic") {
        const std::string csv1 = rep.to_csv(), csv2 = rep.to_csv();
        CHECK(csv1 == csv2);
        CHECK(csv1.substr(0, csv1.find('\n')) == "f_id,R,avg_norm,lo,hi,defect_t,defect_m,bound,C_est");
        const nlohmann::json j = rep.to_json();
        CHECK(j.at("C").get<double>() == rep.C);
        CHECK(j.at("rows").size() == 12);
        CHECK(j.dump() == rep.to_json().dump());
    }
}
