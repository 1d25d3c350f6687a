#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace schatten {

enum class ClaimId {
    eq13,
    thm21,
    prop22,
    cor23,
    cor24,
    prop25,
    remark_i,
    lemmaA,
    lemmaA_refined,
    power_id,
    identity14,
    probe12, // spectral-norm reading of the unsubscripted parallelogram equality; measured only
};

enum class Direction { geq, leq, eq };

enum class Verdict { holds, equality, violated, degenerate };

std::string_view to_string(ClaimId id);
std::string_view to_string(Direction d);
std::string_view to_string(Verdict v);

/// Parses a stable claim string such as "thm21"; throws ValidationError on unknown ids.
ClaimId parse_claim(std::string_view s);
const std::vector<ClaimId>& all_claims();

enum class ScaleMode { max_side, one };

/// Absolute plus scale-relative tolerance used to adjudicate every check.
struct TolerancePolicy {
    double rel = 1e-9;
    double abs = 1e-12;
    ScaleMode scale_mode = ScaleMode::max_side;

    void validate() const;
};

/// One evaluated identity or inequality instance.
///
/// `slack >= 0` means the claim holds: lhs - rhs for geq, rhs - lhs for leq,
/// -|lhs - rhs| for eq. `terms` carries the intermediate quantities of
/// chain-shaped claims (Lemma A, Remark (i)) in the order they are printed.
struct CheckResult {
    ClaimId claim_id = ClaimId::eq13;
    double p = 2;
    int n = 0;
    long rows = 0;
    long cols = 0;
    double lhs = 0;
    double rhs = 0;
    Direction direction = Direction::eq;
    double slack = 0;
    Verdict verdict = Verdict::equality;
    double abs_tol = 0;
    double rel_tol = 0;
    double scale = 1;
    std::vector<double> terms;
    std::string variant;
    std::optional<std::string> witness_ref;

    double tolerance() const { return abs_tol + rel_tol * scale; }
    bool ok() const { return verdict != Verdict::violated; }
};

/// Fills slack, scale, tolerances and verdict from lhs, rhs and direction.
/// `degenerate` marks instances whose every quantity vanishes identically.
void adjudicate(CheckResult& r, const TolerancePolicy& tol, bool degenerate = false);

nlohmann::json to_json(const CheckResult& r);

} // namespace schatten
