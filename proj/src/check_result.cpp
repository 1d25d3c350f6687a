#include "schatten/check_result.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <utility>

#include "schatten/errors.hpp"

namespace schatten {

namespace {

constexpr std::array<std::pair<ClaimId, std::string_view>, 12> kClaimNames{{
    {ClaimId::eq13, "eq13"},
    {ClaimId::thm21, "thm21"},
    {ClaimId::prop22, "prop22"},
    {ClaimId::cor23, "cor23"},
    {ClaimId::cor24, "cor24"},
    {ClaimId::prop25, "prop25"},
    {ClaimId::remark_i, "remark_i"},
    {ClaimId::lemmaA, "lemmaA"},
    {ClaimId::lemmaA_refined, "lemmaA_refined"},
    {ClaimId::power_id, "power_id"},
    {ClaimId::identity14, "identity14"},
    {ClaimId::probe12, "probe12"},
}};

nlohmann::json number(double x) {
    if (!std::isfinite(x)) return nullptr;
    return x;
}

} // namespace

std::string_view to_string(ClaimId id) {
    for (const auto& [k, name] : kClaimNames) {
        if (k == id) return name;
    }
    return "unknown";
}

std::string_view to_string(Direction d) {
    switch (d) {
    case Direction::geq: return "geq";
    case Direction::leq: return "leq";
    case Direction::eq: return "eq";
    }
    return "eq";
}

std::string_view to_string(Verdict v) {
    switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::equality: return "equality";
    case Verdict::violated: return "violated";
    case Verdict::degenerate: return "degenerate";
    }
    return "violated";
}

ClaimId parse_claim(std::string_view s) {
    for (const auto& [k, name] : kClaimNames) {
        if (name == s) return k;
    }
    throw ValidationError("unknown claim id '" + std::string(s) + "'");
}

const std::vector<ClaimId>& all_claims() {
    static const std::vector<ClaimId> claims = [] {
        std::vector<ClaimId> v;
        for (const auto& [k, name] : kClaimNames) v.push_back(k);
        return v;
    }();
    return claims;
}

void TolerancePolicy::validate() const {
    if (!(rel > 0) || !(abs > 0) || !std::isfinite(rel) || !std::isfinite(abs)) {
        throw ValidationError("tolerance policy: rel and abs must be finite and > 0");
    }
}

void adjudicate(CheckResult& r, const TolerancePolicy& tol, bool degenerate) {
    double scale = 1;
    if (tol.scale_mode == ScaleMode::max_side) {
        scale = std::max({1.0, std::abs(r.lhs), std::abs(r.rhs)});
        for (const double t : r.terms) scale = std::max(scale, std::abs(t));
    }
    r.scale = scale;
    r.abs_tol = tol.abs;
    r.rel_tol = tol.rel;

    const double gap = r.lhs - r.rhs;
    switch (r.direction) {
    case Direction::geq: r.slack = gap; break;
    case Direction::leq: r.slack = -gap; break;
    case Direction::eq: r.slack = -std::abs(gap); break;
    }

    const double band = r.tolerance();
    if (degenerate) {
        r.verdict = Verdict::degenerate;
    } else if (std::abs(gap) <= band) {
        r.verdict = Verdict::equality;
    } else if (r.slack >= -band) {
        r.verdict = Verdict::holds;
    } else {
        r.verdict = Verdict::violated;
    }
}

nlohmann::json to_json(const CheckResult& r) {
    nlohmann::json j;
    j["claim_id"] = std::string(to_string(r.claim_id));
    if (!r.variant.empty()) j["variant"] = r.variant;
    j["p"] = number(r.p);
    j["n"] = r.n;
    j["dim"] = {r.rows, r.cols};
    j["lhs"] = number(r.lhs);
    j["rhs"] = number(r.rhs);
    j["direction"] = std::string(to_string(r.direction));
    j["slack"] = number(r.slack);
    j["verdict"] = std::string(to_string(r.verdict));
    j["abs_tol"] = number(r.abs_tol);
    j["rel_tol"] = number(r.rel_tol);
    j["scale"] = number(r.scale);
    if (!r.terms.empty()) {
        auto& terms = j["terms"] = nlohmann::json::array();
        for (const double t : r.terms) terms.push_back(number(t));
    }
    j["witness_ref"] = r.witness_ref ? nlohmann::json(*r.witness_ref) : nlohmann::json(nullptr);
    return j;
}

} // namespace schatten
