#include <doctest.h>

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "tfinv/growth.hpp"
#include "tfinv/rng.hpp"

using namespace tfinv;

namespace {

/* Diagonal expansion c_n = e^{y(n)} on shells 0..N in one dimension. */
HermiteExpansion diag_expansion(int N, const std::function<double(int)>& log_mag) {
    HermiteExpansion c(1, N);
    for (int n = 0; n <= N; ++n) c.set(MultiIndex::unit(1, 0, n), {std::exp(log_mag(n)), 0.0});
    return c;
}

double half_lgamma(int n) { return 0.5 * std::lgamma(static_cast<double>(n) + 1.0); }

const std::array<SpaceClassTag, 7> kChain{SpaceClassTag::HFlat,      SpaceClassTag::Sigma1,
                                          SpaceClassTag::Schwartz,   SpaceClassTag::SchwartzDual,
                                          SpaceClassTag::Sigma1Dual, SpaceClassTag::HFlatDual,
                                          SpaceClassTag::Unbounded};

} // namespace

TEST_CASE("six canonical generators land in six distinct classes") {
    struct Canonical {
        const char* name;
        std::function<double(int)> log_mag;
        SpaceClassTag expect;
        double margin; // frozen, same-libm reproducible
        bool boundary;
    };
    const double ln2 = std::log(2.0), ln3 = std::log(3.0);
    const std::vector<Canonical> cases{
        {"geometric-over-root-factorial", [&](int n) { return -half_lgamma(n) - ln2 * n; },
         SpaceClassTag::HFlat, std::numeric_limits<double>::infinity(), false},
        {"exponential", [](int n) { return -static_cast<double>(n); }, SpaceClassTag::Sigma1,
         0.0910, true},
        {"log-squared", [](int n) { return -std::pow(std::log1p(n), 2.0); },
         SpaceClassTag::Schwartz, 0.6681, false},
        {"cubic", [](int n) { return 3.0 * std::log1p(n); }, SpaceClassTag::SchwartzDual, 0.5000,
         false},
        {"root-exponential-growth", [](int n) { return 2.0 * std::sqrt(static_cast<double>(n)); },
         SpaceClassTag::Sigma1Dual, 0.5292, false},
        {"root-factorial-times-geometric", [&](int n) { return half_lgamma(n) - ln3 * n; },
         SpaceClassTag::HFlatDual, 3.0320, false},
    };

    std::vector<SpaceClassTag> seen;
    for (const auto& cse : cases) {
        CAPTURE(cse.name);
        HermiteExpansion c = diag_expansion(48, cse.log_mag);
        GrowthProfile p = profile(c);
        SpaceClass cls = classify(p);
        CHECK(cls.tag == cse.expect);
        if (std::isinf(cse.margin))
            CHECK(std::isinf(cls.margin));
        else
            CHECK(std::abs(cls.margin - cse.margin) < 5e-3);
        CHECK(cls.boundary == cse.boundary);
        seen.push_back(cls.tag);

        // chain coherence: satisfied exactly at and above the assigned rank
        for (SpaceClassTag k : kChain) {
            CAPTURE(space_class_name(k));
            CHECK(satisfies(p, k) == (space_class_rank(k) >= space_class_rank(cls.tag)));
        }
    }
    // all six distinct and in chain order
    for (std::size_t i = 0; i + 1 < seen.size(); ++i)
        CHECK(space_class_rank(seen[i]) < space_class_rank(seen[i + 1]));
}

TEST_CASE("factorial-law fit on the flat generator") {
    HermiteExpansion c = diag_expansion(48, [](int n) { return -half_lgamma(n) - std::log(2.0) * n; });
    GrowthProfile p = profile(c);
    CHECK(p.factorial_law == "factorial-minus");
    CHECK(p.h_exp == doctest::Approx(-std::log(2.0)).epsilon(1e-9));
    CHECK(p.h_residual < 1e-6);
    CHECK(p.order == 48);
    CHECK_FALSE(p.zero);
}

TEST_CASE("textbook rates are recovered") {
    SUBCASE("root-exponential decay sits cleanly inside Schwartz") {
        HermiteExpansion c = diag_expansion(48, [](int n) { return -2.0 * std::sqrt(static_cast<double>(n)); });
        SpaceClass cls = classify(c);
        CHECK(cls.tag == SpaceClassTag::Schwartz);
        CHECK(cls.margin == doctest::Approx(0.5).epsilon(1e-6));
        CHECK(cls.boundary == false); // 0.5 < 0.5 is false
    }
    SUBCASE("slow root-exponential growth needs a longer tail") {
        HermiteExpansion c = diag_expansion(64, [](int n) { return std::sqrt(static_cast<double>(n)); });
        SpaceClass cls = classify(c);
        CHECK(cls.tag == SpaceClassTag::Sigma1Dual);
        CHECK(std::abs(cls.margin - 0.0927) < 5e-3);
        CHECK(cls.boundary);
    }
    SUBCASE("inverse-cubic decay") {
        HermiteExpansion c = diag_expansion(48, [](int n) { return -3.0 * std::log1p(n); });
        GrowthProfile p = profile(c);
        SpaceClass cls = classify(p);
        CHECK(cls.tag == SpaceClassTag::SchwartzDual);
        CHECK(cls.margin == doctest::Approx(0.5).epsilon(1e-6));
        CHECK(p.poly_deg == doctest::Approx(-3.0).epsilon(1e-6));
    }
    SUBCASE("exponential decay: fitted sub-exponential rate grows with truncation") {
        HermiteExpansion c48 = diag_expansion(48, [](int n) { return -static_cast<double>(n); });
        HermiteExpansion c64 = diag_expansion(64, [](int n) { return -static_cast<double>(n); });
        const double r48 = profile(c48).r_sub, r64 = profile(c64).r_sub;
        CHECK(r48 > 5.0);
        CHECK(r64 > r48); // e^{-n} beats e^{-r sqrt n} for every fixed r
    }
    SUBCASE("factorial growth exceeds every law in the chain") {
        HermiteExpansion c = diag_expansion(48, [](int n) { return 2.0 * half_lgamma(n); });
        SpaceClass cls = classify(c);
        CHECK(cls.tag == SpaceClassTag::Unbounded);
        CHECK(cls.margin > 0.0);
    }
}

TEST_CASE("degenerate inputs") {
    SUBCASE("zero expansion is flat with infinite margin") {
        HermiteExpansion c(1, 48);
        GrowthProfile p = profile(c);
        CHECK(p.zero);
        SpaceClass cls = classify(p);
        CHECK(cls.tag == SpaceClassTag::HFlat);
        CHECK(std::isinf(cls.margin));
        CHECK_FALSE(cls.boundary);
    }
    SUBCASE("truncation too small") {
        HermiteExpansion c(1, 6);
        c.set(MultiIndex::unit(1, 0, 3), {1.0, 0.0});
        CHECK_THROWS_AS(profile(c), std::invalid_argument);
    }
    SUBCASE("sparse window") {
        HermiteExpansion c(1, 48);
        c.set(MultiIndex::unit(1, 0, 48), {1.0, 0.0});
        CHECK_THROWS_AS(profile(c), std::runtime_error);
    }
}

TEST_CASE("property: random members of each law classify correctly and coherently") {
    constexpr int kTrials = 200, kTrunc = 48;
    for (int seed = 0; seed < kTrials; ++seed) {
        CAPTURE(seed);
        Rng rng(1000 + seed);
        const int kind = seed % 6;
        SpaceClassTag expect{};
        std::function<double(int)> law;
        switch (kind) {
            case 0: {
                const double a = rng.uniform(-1.5, 1.5);
                law = [a](int n) { return -half_lgamma(n) + a * n; };
                expect = SpaceClassTag::HFlat;
                break;
            }
            case 1: {
                const double p = rng.uniform(0.9, 1.0), cc = rng.uniform(0.9, 2.0);
                law = [p, cc](int n) { return -cc * std::pow(static_cast<double>(n), p); };
                expect = SpaceClassTag::Sigma1;
                break;
            }
            case 2: {
                const double q = rng.uniform(2.0, 2.6), cc = rng.uniform(1.0, 1.6);
                law = [q, cc](int n) { return -cc * std::pow(std::log1p(n), q); };
                expect = SpaceClassTag::Schwartz;
                break;
            }
            case 3: {
                const double M = rng.uniform(-6.0, 6.0);
                law = [M](int n) { return M * std::log1p(n); };
                expect = SpaceClassTag::SchwartzDual;
                break;
            }
            case 4: {
                const double r = rng.uniform(1.3, 2.5);
                law = [r](int n) { return r * std::sqrt(static_cast<double>(n)); };
                expect = SpaceClassTag::Sigma1Dual;
                break;
            }
            default: {
                const double a = rng.uniform(-1.5, 1.5);
                law = [a](int n) { return half_lgamma(n) + a * n; };
                expect = SpaceClassTag::HFlatDual;
                break;
            }
        }
        std::vector<double> noise(kTrunc + 1);
        for (double& e : noise) e = rng.uniform(-0.02, 0.02);
        HermiteExpansion c = diag_expansion(kTrunc, [&](int n) { return law(n) + noise[n]; });
        GrowthProfile p = profile(c);
        SpaceClass cls = classify(p);
        CHECK(cls.tag == expect);

        // coherence of satisfies() with the assigned rank
        for (SpaceClassTag k : kChain)
            CHECK(satisfies(p, k) == (space_class_rank(k) >= space_class_rank(cls.tag)));

        // scaling invariance: a constant factor never changes the verdict
        const double u = rng.uniform(-3.0, 3.0);
        HermiteExpansion scaled = c * std::complex<double>(std::exp(u), 0.0);
        SpaceClass cls2 = classify(scaled);
        CHECK(cls2.tag == cls.tag);
        if (std::isfinite(cls.margin))
            CHECK(cls2.margin == doctest::Approx(cls.margin).epsilon(1e-9));

        // dominance: extra decay never coarsens the class
        const double eps = rng.uniform(0.0, 0.8), del = rng.uniform(0.0, 3.0);
        HermiteExpansion damped = diag_expansion(kTrunc, [&](int n) {
            return law(n) + noise[n] - eps * n - del * std::sqrt(static_cast<double>(n));
        });
        SpaceClass cls3 = classify(damped);
        CHECK(space_class_rank(cls3.tag) <= space_class_rank(cls.tag));
    }
}
