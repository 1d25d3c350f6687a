#include "schatten/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "schatten/parallelogram.hpp"

namespace schatten {

namespace {

double within_power_sum(const Family& x, const SchattenOrder& p, const SpectralOptions& spectral) {
    return grid_power_sum(x, x, p, spectral);
}

// D^{exponent} * sum with the D = 0 cross-term contributing 0.
double d_weighted(int d, double exponent, double sum) {
    return d == 0 ? 0.0 : std::pow(static_cast<double>(d), exponent) * sum;
}

CheckResult make(ClaimId id, const SchattenOrder& p, const Family& f) {
    CheckResult r;
    r.claim_id = id;
    r.p = p.value();
    r.n = static_cast<int>(f.size());
    r.rows = f.rows();
    r.cols = f.cols();
    return r;
}

std::string sci(double x) {
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << x;
    return os.str();
}

} // namespace

ThreeFamilyInstance::ThreeFamilyInstance(Family a, Family b, Family c)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {
    require_same_layout(a_, b_, "ThreeFamilyInstance");
    require_same_layout(b_, c_, "ThreeFamilyInstance");
}

double grid_power_sum(const Family& x, const Family& y, const SchattenOrder& p, const SpectralOptions& spectral) {
    require_same_layout(x, y, "grid_power_sum");
    double acc = 0;
    for (const auto& xi : x) {
        for (const auto& yj : y) acc += schatten_pth_power(Matrix(xi - yj), p, spectral);
    }
    return acc;
}

double summed_difference_power(const Family& x, const Family& y, const SchattenOrder& p,
                               const SpectralOptions& spectral) {
    require_same_layout(x, y, "summed_difference_power");
    return schatten_pth_power(Matrix(family_sum(x) - family_sum(y)), p, spectral);
}

Direction orientation(const SchattenOrder& p) {
    if (p.value() < 2) return Direction::geq;
    if (p.value() > 2) return Direction::leq;
    return Direction::eq;
}

bool is_zero_family(const Family& f) {
    return std::all_of(f.begin(), f.end(), [](const Matrix& m) { return m.squaredNorm() == 0; });
}

CheckResult eval_equality_13(const Family& a, const Family& b, const EvalOptions& opts) {
    require_same_layout(a, b, "eval_equality_13");
    const SchattenOrder two(2);
    auto r = make(ClaimId::eq13, two, a);
    r.lhs = within_power_sum(a, two, opts.spectral) + within_power_sum(b, two, opts.spectral);
    r.rhs = 2 * grid_power_sum(a, b, two, opts.spectral) - 2 * summed_difference_power(a, b, two, opts.spectral);
    r.direction = Direction::eq;
    adjudicate(r, opts.tolerance, is_zero_family(a) && is_zero_family(b));
    return r;
}

CheckResult eval_theorem21(const ThreeFamilyInstance& inst, const SchattenOrder& p, const EvalOptions& opts) {
    const auto& a = inst.a();
    const auto& b = inst.b();
    const auto& c = inst.c();
    const auto& sp = opts.spectral;
    const double exponent = (p.value() - 2) / 2;

    auto r = make(ClaimId::thm21, p, a);
    r.lhs = within_power_sum(a, p, sp) + within_power_sum(b, p, sp) + within_power_sum(c, p, sp);

    const double cross = d_weighted(d_constant_grid(a, b, opts.epsilon_zero).count, exponent, grid_power_sum(a, b, p, sp)) +
                         d_weighted(d_constant_grid(b, c, opts.epsilon_zero).count, exponent, grid_power_sum(b, c, p, sp)) +
                         d_weighted(d_constant_grid(c, a, opts.epsilon_zero).count, exponent, grid_power_sum(c, a, p, sp));
    const double sums = summed_difference_power(a, b, p, sp) + summed_difference_power(b, c, p, sp) +
                        summed_difference_power(c, a, p, sp);
    r.rhs = cross - sums;
    r.terms = {cross, sums};
    r.direction = orientation(p);
    adjudicate(r, opts.tolerance, is_zero_family(a) && is_zero_family(b) && is_zero_family(c));
    return r;
}

CheckResult eval_prop22(const Family& a, const Family& b, const SchattenOrder& p, const EvalOptions& opts) {
    require_same_layout(a, b, "eval_prop22");
    const auto& sp = opts.spectral;
    const double n = static_cast<double>(a.size());
    auto r = make(ClaimId::prop22, p, a);
    r.lhs = within_power_sum(a, p, sp) + within_power_sum(b, p, sp);
    r.rhs = 2 * std::pow(n, p.value() - 2) * grid_power_sum(a, b, p, sp) - 2 * summed_difference_power(a, b, p, sp);
    r.direction = orientation(p);
    adjudicate(r, opts.tolerance, is_zero_family(a) && is_zero_family(b));
    return r;
}

CheckResult eval_cor23(const Family& a, const Family& b, const SchattenOrder& p, const EvalOptions& opts) {
    require_same_layout(a, b, "eval_cor23");
    const double residual = frobenius(Matrix(family_sum(a) - family_sum(b)));
    const double scale = std::max({1.0, a.max_frobenius(), b.max_frobenius()});
    if (residual > 1e-10 * scale) {
        throw PreconditionError("cor23 requires equal family sums; |sum A - sum B|_F = " + sci(residual), residual);
    }
    const auto& sp = opts.spectral;
    const double n = static_cast<double>(a.size());
    auto r = make(ClaimId::cor23, p, a);
    r.lhs = within_power_sum(a, p, sp) + within_power_sum(b, p, sp);
    r.rhs = 2 * std::pow(n, p.value() - 2) * grid_power_sum(a, b, p, sp);
    r.direction = orientation(p);
    adjudicate(r, opts.tolerance, is_zero_family(a) && is_zero_family(b));
    return r;
}

CheckResult eval_cor24(const Family& a, const SchattenOrder& p, const EvalOptions& opts) {
    const double residual = frobenius(family_sum(a));
    const double scale = std::max(1.0, a.max_frobenius());
    if (residual > 1e-10 * scale) {
        throw PreconditionError("cor24 requires a zero-sum family; |sum A|_F = " + sci(residual), residual);
    }
    const auto& sp = opts.spectral;
    const double n = static_cast<double>(a.size());
    double members = 0;
    for (const auto& x : a) members += schatten_pth_power(x, p, sp);
    auto r = make(ClaimId::cor24, p, a);
    r.lhs = within_power_sum(a, p, sp);
    r.rhs = 2 * std::pow(n, p.value() - 1) * members;
    r.direction = orientation(p);
    adjudicate(r, opts.tolerance, is_zero_family(a));
    return r;
}

CheckResult eval_prop25(const Family& a, const Family& b, const SchattenOrder& p, const EvalOptions& opts) {
    require_same_layout(a, b, "eval_prop25");
    const auto& sp = opts.spectral;
    const double n = static_cast<double>(a.size());
    const double coefficient = std::pow(n * n - n + 1, (2 - p.value()) / 2);
    auto r = make(ClaimId::prop25, p, a);
    r.lhs = 2 * coefficient * grid_power_sum(a, b, p, sp) - 2 * summed_difference_power(a, b, p, sp);
    r.rhs = within_power_sum(a, p, sp) + within_power_sum(b, p, sp);
    r.direction = orientation(p);
    adjudicate(r, opts.tolerance, is_zero_family(a) && is_zero_family(b));
    return r;
}

std::pair<CheckResult, CheckResult> sandwich(const Family& a, const Family& b, const SchattenOrder& p,
                                             const EvalOptions& opts) {
    return {eval_prop22(a, b, p, opts), eval_prop25(a, b, p, opts)};
}

std::string_view to_string(RemarkVariant v) {
    return v == RemarkVariant::paper_2n2 ? "paper_2n2" : "consistent_n2";
}

RemarkVariant parse_remark_variant(std::string_view s) {
    if (s == "paper_2n2") return RemarkVariant::paper_2n2;
    if (s == "consistent_n2") return RemarkVariant::consistent_n2;
    throw ValidationError("unknown remark variant '" + std::string(s) + "'");
}

CheckResult remark_constants(int n, const SchattenOrder& p, RemarkVariant variant, const EvalOptions& opts) {
    if (n < 1) throw DomainError("remark_constants: n must be >= 1");
    if (p.value() > 2) throw DomainError("remark_constants: chain is stated for 0 < p <= 2 only");
    const double nn = n;
    const double constant = variant == RemarkVariant::paper_2n2 ? 2 * nn * nn - nn + 1 : nn * nn - nn + 1;
    const double left = std::pow(nn, p.value() - 2);
    const double middle = std::pow(constant, (2 - p.value()) / 2);
    const double right = 1 / left;

    CheckResult r;
    r.claim_id = ClaimId::remark_i;
    r.variant = std::string(to_string(variant));
    r.p = p.value();
    r.n = n;
    r.rows = 0;
    r.cols = 0;
    r.terms = {left, middle, right};
    r.lhs = middle;
    if (middle - left <= right - middle) {
        r.direction = Direction::geq;
        r.rhs = left;
    } else {
        r.direction = Direction::leq;
        r.rhs = right;
    }
    adjudicate(r, opts.tolerance);
    // The chain is strict: a collapsed gap is not a pass.
    if (r.verdict == Verdict::equality) r.verdict = Verdict::degenerate;
    return r;
}

} // namespace schatten
