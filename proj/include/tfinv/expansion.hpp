#pragma once

#include <complex>
#include <map>

#include <json.hpp>

#include "tfinv/multi_index.hpp"

namespace tfinv {

/* Finite Hermite expansion sum_alpha c(alpha) h_alpha, |alpha| <= truncation.
 * Coefficients live in a graded-lex map so iteration order is deterministic. */
struct HermiteExpansion {
    int d = 1;
    int truncation = 0;
    std::map<MultiIndex, std::complex<double>, GradedLexLess> coef;

    HermiteExpansion() = default;
    HermiteExpansion(int dim, int trunc) : d(dim), truncation(trunc) {
        if (dim < 1) throw std::invalid_argument("HermiteExpansion: dimension must be positive");
        if (trunc < 0) throw std::invalid_argument("HermiteExpansion: negative truncation");
    }

    void set(const MultiIndex& alpha, std::complex<double> c) {
        if (alpha.dim() != d) throw std::invalid_argument("HermiteExpansion::set: index dimension mismatch");
        if (alpha.order() > truncation)
            throw std::invalid_argument("HermiteExpansion::set: index order above truncation");
        coef[alpha] = c;
    }
    std::complex<double> at(const MultiIndex& alpha) const {
        auto it = coef.find(alpha);
        return it == coef.end() ? std::complex<double>(0.0, 0.0) : it->second;
    }

    int order() const { // largest populated shell
        int o = 0;
        for (const auto& [a, c] : coef)
            if (std::abs(c) > 0.0) o = std::max(o, a.order());
        return o;
    }

    double l2_norm() const {
        double s = 0.0;
        for (const auto& [a, c] : coef) s += std::norm(c);
        return std::sqrt(s);
    }

    HermiteExpansion& operator+=(const HermiteExpansion& o);
    HermiteExpansion& operator*=(std::complex<double> z);
    friend HermiteExpansion operator+(HermiteExpansion a, const HermiteExpansion& b) { return a += b; }
    friend HermiteExpansion operator*(HermiteExpansion a, std::complex<double> z) { return a *= z; }

    nlohmann::json to_json() const;
    static HermiteExpansion from_json(const nlohmann::json& j);
};

} // namespace tfinv
