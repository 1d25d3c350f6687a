#pragma once

// Exact operator identity for two families and the positive-operator
// p-th power bounds with their nonzero-count refinement.

#include "schatten/check_result.hpp"
#include "schatten/evaluation.hpp"
#include "schatten/matrix.hpp"
#include "schatten/spectral.hpp"

namespace schatten {

/// Number of members classified as nonzero.
struct DConstant {
    int count = 0;
    int maximum = 0; // n for a family, n^2 for a difference grid
    double epsilon_zero = 1e-13;
};

/// Counts members with |A_i|_F > epsilon_zero * max(1, max_k |A_k|_F).
DConstant d_constant(const Family& f, double epsilon_zero = 1e-13);

/// Same count over the n^2 differences A_i - B_j.
DConstant d_constant_grid(const Family& a, const Family& b, double epsilon_zero = 1e-13);

/// |LHS - RHS|_F for
///   sum_{i<j} |A_i - A_j|^2 + sum_{i<j} |B_i - B_j|^2
///     = sum_{i,j} |A_i - B_j|^2 - |sum_i (A_i - B_i)|^2,
/// with |X|^2 = X*X. Zero up to roundoff for every input.
double operator_identity_residual(const Family& a, const Family& b);

/// sum_{i,j} |A_i - B_j|_F^2, the natural scale of the residual above.
double cross_mass(const Family& a, const Family& b);

/// The operator identity as a CheckResult: lhs = residual, rhs = 0.
CheckResult check_identity14(const Family& a, const Family& b, const EvalOptions& opts = {});

/// For PSD members: n^{p-1} S <= |sum A_i|_p^p <= S with S = sum |A_i|_p^p
/// when p <= 1, reversed when p >= 1. terms = {n^{p-1} S, |sum A_i|_p^p, S}.
CheckResult lemma_a_bounds(const Family& f, const SchattenOrder& p, const EvalOptions& opts = {});

/// lemma_a_bounds with n replaced by the nonzero count D; D = 0 is degenerate.
CheckResult refined_lemma_bounds(const Family& f, const SchattenOrder& p, const EvalOptions& opts = {});

/// Throws DomainError naming the first member that is not Hermitian PSD.
void require_psd_family(const Family& f, const SpectralOptions& spectral = {});

} // namespace schatten
