#include "schatten/evaluation.hpp"

#include <cmath>

namespace schatten {

CheckResult verify_power_identity(const Matrix& a, const SchattenOrder& p, const EvalOptions& opts) {
    const double half = p.value() / 2;
    double gram_power = 0;
    for (const double lambda : gram_eigenvalues(gram(a), opts.spectral)) gram_power += std::pow(lambda, half);
    const double norm_power = schatten_pth_power(a, p, opts.spectral);

    CheckResult r;
    r.claim_id = ClaimId::power_id;
    r.p = p.value();
    r.n = 1;
    r.rows = a.rows();
    r.cols = a.cols();
    r.lhs = gram_power == 0 ? 0.0 : std::pow(gram_power, 1 / half);
    r.rhs = norm_power == 0 ? 0.0 : std::pow(norm_power, 2 / p.value());
    r.direction = Direction::eq;
    adjudicate(r, opts.tolerance, frobenius(a) == 0);
    return r;
}

} // namespace schatten
