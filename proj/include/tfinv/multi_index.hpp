#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace tfinv {

/* Multi-index over d axes.  Entries are nonnegative; used both as Hermite
 * basis labels and as monomial exponents on C^d. */
struct MultiIndex {
    std::vector<int> e;

    MultiIndex() = default;
    explicit MultiIndex(std::vector<int> entries) : e(std::move(entries)) {
        for (int k : e)
            if (k < 0) throw std::invalid_argument("MultiIndex: negative entry");
    }
    static MultiIndex zeros(int d) { return MultiIndex(std::vector<int>(d, 0)); }
    static MultiIndex unit(int d, int axis, int value) {
        std::vector<int> v(d, 0);
        v.at(axis) = value;
        return MultiIndex(std::move(v));
    }

    int dim() const { return static_cast<int>(e.size()); }
    int order() const {
        int s = 0;
        for (int k : e) s += k;
        return s;
    }

    /* alpha! as a double.  Exact only while every entry stays in the integer
     * range of double; callers needing large orders should use log_factorial. */
    double factorial() const {
        double p = 1.0;
        for (int k : e) {
            if (k > 170) throw std::domain_error("MultiIndex::factorial: entry too large, use log_factorial");
            for (int j = 2; j <= k; ++j) p *= j;
        }
        return p;
    }
    double log_factorial() const {
        double s = 0.0;
        for (int k : e) s += std::lgamma(static_cast<double>(k) + 1.0);
        return s;
    }

    bool operator==(const MultiIndex& o) const { return e == o.e; }
};

/* Graded lexicographic order: by |alpha| first, then lexicographically.
 * Gives a deterministic, dimension-stable iteration order for coefficient maps. */
struct GradedLexLess {
    bool operator()(const MultiIndex& a, const MultiIndex& b) const {
        const int oa = a.order(), ob = b.order();
        if (oa != ob) return oa < ob;
        return a.e < b.e;
    }
};

/* All alpha with |alpha| = n over d axes, in lexicographic order. */
inline void enumerate_shell(int d, int n, std::vector<MultiIndex>& out) {
    std::vector<int> cur(static_cast<size_t>(d), 0);
    // iterative composition enumeration
    auto rec = [&](auto&& self, int axis, int rem) -> void {
        if (axis == d - 1) {
            cur[static_cast<size_t>(axis)] = rem;
            out.emplace_back(cur);
            return;
        }
        for (int k = rem; k >= 0; --k) {
            cur[static_cast<size_t>(axis)] = k;
            self(self, axis + 1, rem - k);
        }
    };
    if (d <= 0) throw std::invalid_argument("enumerate_shell: d must be positive");
    rec(rec, 0, n);
}

inline std::vector<MultiIndex> shell(int d, int n) {
    std::vector<MultiIndex> out;
    enumerate_shell(d, n, out);
    return out;
}

/* All alpha with |alpha| <= N, graded lexicographic. */
inline std::vector<MultiIndex> indices_up_to(int d, int N) {
    std::vector<MultiIndex> out;
    for (int n = 0; n <= N; ++n) enumerate_shell(d, n, out);
    return out;
}

/* log of min / max of alpha! over the shell |alpha| = n.  The minimum is
 * attained at the most balanced composition, the maximum at a single-axis
 * spike.  Needed to turn coefficient laws written in alpha! into laws on
 * shell maxima. */
inline double log_min_factorial_on_shell(int d, int n) {
    const int q = n / d, r = n % d;
    // r axes carry q+1, the rest carry q
    return r * std::lgamma(q + 2.0) + (d - r) * std::lgamma(q + 1.0);
}
inline double log_max_factorial_on_shell(int /*d*/, int n) {
    return std::lgamma(static_cast<double>(n) + 1.0);
}

} // namespace tfinv
