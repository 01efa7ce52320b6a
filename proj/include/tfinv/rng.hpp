#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace tfinv {

/* Deterministic RNG helpers.  We draw raw 64-bit words from mt19937_64 and map
 * them ourselves; std::*_distribution sequences are implementation-defined and
 * would break byte-reproducible outputs across standard libraries. */
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    /* uniform in [0,1) with 53 random bits */
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /* standard normal via Box-Muller (deterministic, portable) */
    double normal() {
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    }

    std::complex<double> complex_normal() {
        const double a = normal();
        const double b = normal();
        return {a, b};
    }

    std::uint64_t bits() { return eng_(); }

  private:
    std::mt19937_64 eng_;
};

} // namespace tfinv
