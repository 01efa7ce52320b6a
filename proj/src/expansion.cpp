#include "tfinv/expansion.hpp"

namespace tfinv {

HermiteExpansion& HermiteExpansion::operator+=(const HermiteExpansion& o) {
    if (o.d != d) throw std::invalid_argument("HermiteExpansion: dimension mismatch");
    truncation = std::max(truncation, o.truncation);
    for (const auto& [a, c] : o.coef) coef[a] += c;
    return *this;
}

HermiteExpansion& HermiteExpansion::operator*=(std::complex<double> z) {
    for (auto& [a, c] : coef) c *= z;
    return *this;
}

nlohmann::json HermiteExpansion::to_json() const {
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& [a, c] : coef) {
        entries.push_back({{"alpha", a.e}, {"re", c.real()}, {"im", c.imag()}});
    }
    return {{"dimension", d}, {"truncation_order", truncation}, {"entries", entries}};
}

HermiteExpansion HermiteExpansion::from_json(const nlohmann::json& j) {
    HermiteExpansion f(j.at("dimension").get<int>(), j.at("truncation_order").get<int>());
    for (const auto& e : j.at("entries")) {
        MultiIndex a(e.at("alpha").get<std::vector<int>>());
        f.set(a, {e.at("re").get<double>(), e.at("im").get<double>()});
    }
    return f;
}

} // namespace tfinv
