#pragma once

// Evaluators for the Schatten p-norm generalizations of the parallelogram
// equality: the three-family inequality, the two-sided two-family bounds,
// the equal-sum and zero-sum corollaries, and the coefficient chain remark.
//
// Every evaluator orients itself by p: "geq" below 2, "leq" above 2, and an
// equality claim exactly at p = 2 where both orientations are asserted.

#include <utility>

#include "schatten/check_result.hpp"
#include "schatten/evaluation.hpp"
#include "schatten/matrix.hpp"
#include "schatten/spectral.hpp"

namespace schatten {

/// Three families with common size and shape.
class ThreeFamilyInstance {
public:
    ThreeFamilyInstance(Family a, Family b, Family c);

    const Family& a() const noexcept { return a_; }
    const Family& b() const noexcept { return b_; }
    const Family& c() const noexcept { return c_; }

private:
    Family a_;
    Family b_;
    Family c_;
};

/// sum_{i,j} |X_i - Y_j|_p^p over the full grid, (i,i) and both (i,j), (j,i) included.
double grid_power_sum(const Family& x, const Family& y, const SchattenOrder& p, const SpectralOptions& spectral = {});

/// |sum_i (X_i - Y_i)|_p^p.
double summed_difference_power(const Family& x, const Family& y, const SchattenOrder& p,
                               const SpectralOptions& spectral = {});

/// Direction asserted at exponent p: geq for p < 2, leq for p > 2, eq at 2.
Direction orientation(const SchattenOrder& p);

bool is_zero_family(const Family& f);

/// Hilbert-Schmidt parallelogram equality for two families.
CheckResult eval_equality_13(const Family& a, const Family& b, const EvalOptions& opts = {});

/// Three-family inequality with grid nonzero-count weights D^{(p-2)/2}.
CheckResult eval_theorem21(const ThreeFamilyInstance& inst, const SchattenOrder& p, const EvalOptions& opts = {});

/// within(A) + within(B)  vs  2 n^{p-2} grid(A,B) - 2 |sum(A_i - B_i)|_p^p.
CheckResult eval_prop22(const Family& a, const Family& b, const SchattenOrder& p, const EvalOptions& opts = {});

/// prop22 without the summed term, for families with equal sums.
/// Throws PreconditionError when |sum A - sum B|_F exceeds 1e-10 * scale.
CheckResult eval_cor23(const Family& a, const Family& b, const SchattenOrder& p, const EvalOptions& opts = {});

/// within(A) vs 2 n^{p-1} sum |A_i|_p^p for a zero-sum family.
CheckResult eval_cor24(const Family& a, const SchattenOrder& p, const EvalOptions& opts = {});

/// 2 (n^2-n+1)^{(2-p)/2} grid(A,B) - 2 |sum(A_i - B_i)|_p^p  vs  within(A) + within(B).
CheckResult eval_prop25(const Family& a, const Family& b, const SchattenOrder& p, const EvalOptions& opts = {});

/// prop22 and prop25 on the same instance; they bracket the same quantity.
std::pair<CheckResult, CheckResult> sandwich(const Family& a, const Family& b, const SchattenOrder& p,
                                             const EvalOptions& opts = {});

enum class RemarkVariant {
    paper_2n2,     // 2n^2 - n + 1 as printed
    consistent_n2, // n^2 - n + 1, the constant of the reverse proposition
};

std::string_view to_string(RemarkVariant v);
RemarkVariant parse_remark_variant(std::string_view s);

/// Strict chain n^{p-2} < c^{(2-p)/2} < n^{2-p}; terms = the three quantities.
/// holds when both gaps exceed tolerance, degenerate when the chain collapses
/// to equalities, violated otherwise. Scoped to 0 < p <= 2.
CheckResult remark_constants(int n, const SchattenOrder& p, RemarkVariant variant, const EvalOptions& opts = {});

} // namespace schatten
