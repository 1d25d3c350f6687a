#pragma once

#include "schatten/check_result.hpp"
#include "schatten/matrix.hpp"
#include "schatten/spectral.hpp"

namespace schatten {

/// Knobs shared by every evaluator.
struct EvalOptions {
    TolerancePolicy tolerance;
    double epsilon_zero = 1e-13; // zero-member cutoff, relative to max(1, family max |.|_F)
    SpectralOptions spectral;
};

/// Checks | |A|^2 |_{p/2} = |A|_p^2. The left side eigensolves gram(a)
/// directly; the right side goes through singular_values.
CheckResult verify_power_identity(const Matrix& a, const SchattenOrder& p, const EvalOptions& opts = {});

} // namespace schatten
