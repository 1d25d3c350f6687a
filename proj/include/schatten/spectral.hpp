#pragma once

// Hermitian eigendecomposition by cyclic complex Jacobi rotations, singular
// values through the smaller Gram matrix, and Schatten p-(quasi-)norms.

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "schatten/errors.hpp"
#include "schatten/matrix.hpp"

namespace schatten {

/// Validated Schatten exponent p > 0 with its regime tags.
///
/// p = 1 is both quasi-boundary and Banach; p = 2 is both below2 and above2.
template <typename Real>
class SchattenOrderT {
public:
    explicit SchattenOrderT(Real p) : p_(p) {
        if (!std::isfinite(p) || !(p > 0)) {
            throw DomainError("Schatten order must be finite and > 0, got " + std::to_string(p));
        }
    }

    Real value() const noexcept { return p_; }
    bool quasi() const noexcept { return p_ <= 1; }
    bool banach() const noexcept { return p_ >= 1; }
    bool below_two() const noexcept { return p_ <= 2; }
    bool above_two() const noexcept { return p_ >= 2; }

private:
    Real p_;
};

using SchattenOrder = SchattenOrderT<double>;

/// Tolerances of the eigensolver and of the Gram clamp.
template <typename Real>
struct SpectralOptionsT {
    Real convergence = Real(1e-14);       // off-diagonal Frobenius norm / max(1, |h|_F)
    int max_sweeps = 60;
    Real hermitian_tolerance = Real(1e-12); // entrywise |h - h*| / |h|_F
    Real clamp_tolerance = Real(1e-12);     // admissible negative Gram eigenvalue / |gram|_F
    Real rank_tolerance = Real(64) * std::numeric_limits<Real>::epsilon(); // |lambda| / |gram|_F treated as 0

    /// Same options with the convergence threshold divided by `factor`.
    SpectralOptionsT tightened(Real factor = Real(100)) const {
        SpectralOptionsT t = *this;
        t.convergence /= factor;
        return t;
    }
};

using SpectralOptions = SpectralOptionsT<double>;

template <typename Real>
struct HermitianEigen {
    std::vector<Real> eigenvalues; // descending
    ComplexMatrix<Real> eigenvectors; // columns
    int sweeps = 0;
    Real off_diagonal = 0;
};

template <typename Real>
struct SingularSpectrum {
    std::vector<Real> values; // descending, nonnegative, length min(rows, cols)

    Real largest() const { return values.empty() ? Real(0) : values.front(); }
};

namespace detail {

template <typename Real>
Real off_diagonal_norm(const ComplexMatrix<Real>& h) {
    Real ssq = 0;
    const auto n = h.rows();
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) ssq += std::norm(h(i, j));
    }
    return std::sqrt(Real(2) * ssq);
}

// One unitary rotation in the (p, q) plane annihilating h(p, q).
template <typename Real>
void jacobi_rotate(ComplexMatrix<Real>& h, ComplexMatrix<Real>& v, Eigen::Index p, Eigen::Index q) {
    using C = std::complex<Real>;
    const C g = h(p, q);
    const Real mag = std::abs(g);
    const Real a = h(p, p).real();
    const Real b = h(q, q).real();
    const C phase = g / mag;
    const Real zeta = (b - a) / (Real(2) * mag);
    const Real t = (zeta >= 0 ? Real(1) : Real(-1)) / (std::abs(zeta) + std::sqrt(Real(1) + zeta * zeta));
    const Real c = Real(1) / std::sqrt(Real(1) + t * t);
    const Real s = t * c;
    const C sp = s * phase;          // s e^{i phi}
    const C sm = s * std::conj(phase); // s e^{-i phi}
    const auto n = h.rows();

    // columns: H <- H G
    for (Eigen::Index k = 0; k < n; ++k) {
        const C hp = h(k, p);
        const C hq = h(k, q);
        h(k, p) = c * hp - sm * hq;
        h(k, q) = sp * hp + c * hq;
    }
    // rows: H <- G* H
    for (Eigen::Index k = 0; k < n; ++k) {
        const C hp = h(p, k);
        const C hq = h(q, k);
        h(p, k) = c * hp - sp * hq;
        h(q, k) = sm * hp + c * hq;
    }
    h(p, q) = C(0);
    h(q, p) = C(0);
    h(p, p) = C(a - t * mag, 0);
    h(q, q) = C(b + t * mag, 0);

    for (Eigen::Index k = 0; k < v.rows(); ++k) {
        const C vp = v(k, p);
        const C vq = v(k, q);
        v(k, p) = c * vp - sm * vq;
        v(k, q) = sp * vp + c * vq;
    }
}

} // namespace detail

/// Eigenpairs of a Hermitian matrix, eigenvalues in descending order.
///
/// The input must be square and Hermitian to within
/// `opts.hermitian_tolerance * |h|_F` entrywise; the solver works on the
/// symmetrized copy. Throws ConvergenceError when `max_sweeps` sweeps do not
/// bring the off-diagonal norm under `opts.convergence * max(1, |h|_F)`.
template <typename Real>
HermitianEigen<Real> hermitian_eigen(const ComplexMatrix<Real>& h,
                                     const SpectralOptionsT<Real>& opts = SpectralOptionsT<Real>{}) {
    if (h.rows() != h.cols()) {
        throw DimensionError("hermitian_eigen: matrix is " + detail::shape_string(h.rows(), h.cols()) +
                             ", expected square");
    }
    if (!all_finite(h)) throw DomainError("hermitian_eigen: non-finite entries");
    const Real scale_f = frobenius(h);
    const Real defect = hermitian_defect(h);
    if (defect > opts.hermitian_tolerance * scale_f) {
        throw DomainError("hermitian_eigen: matrix is not Hermitian (max |h - h*| = " + std::to_string(defect) + ")");
    }

    const auto n = h.rows();
    ComplexMatrix<Real> work = h;
    symmetrize(work);
    ComplexMatrix<Real> vecs = ComplexMatrix<Real>::Identity(n, n);
    const Real threshold = opts.convergence * std::max(Real(1), scale_f);

    HermitianEigen<Real> out;
    Real off = detail::off_diagonal_norm(work);
    int sweep = 0;
    while (off > threshold) {
        if (sweep == opts.max_sweeps) {
            throw ConvergenceError("hermitian_eigen: no convergence after " + std::to_string(sweep) +
                                       " sweeps (off-diagonal norm " + std::to_string(off) + ")",
                                   static_cast<double>(off));
        }
        ++sweep;
        for (Eigen::Index p = 0; p < n; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                const Real mag = std::abs(work(p, q));
                if (mag == Real(0)) continue;
                // Negligible against both diagonal entries: drop it instead of rotating.
                const Real app = std::abs(work(p, p).real());
                const Real aqq = std::abs(work(q, q).real());
                if (sweep > 3 && app + Real(100) * mag == app && aqq + Real(100) * mag == aqq) {
                    work(p, q) = 0;
                    work(q, p) = 0;
                    continue;
                }
                detail::jacobi_rotate(work, vecs, p, q);
            }
        }
        off = detail::off_diagonal_norm(work);
    }

    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index i, Eigen::Index j) { return work(i, i).real() > work(j, j).real(); });

    out.eigenvalues.reserve(order.size());
    out.eigenvectors.resize(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        const auto src = order[static_cast<std::size_t>(k)];
        out.eigenvalues.push_back(work(src, src).real());
        out.eigenvectors.col(k) = vecs.col(src);
    }
    out.sweeps = sweep;
    out.off_diagonal = off;
    return out;
}

/// Singular values from the eigenvalues of the smaller of A*A and AA*.
///
/// Eigenvalues of a Gram matrix, cleaned for use as squared singular values:
/// values within rank_tolerance * |g|_F of zero are exact zeros (numerical
/// rank), negatives down to -clamp_tolerance * |g|_F are roundoff and become
/// 0, anything more negative raises NumericalConsistencyError.
template <typename Real>
std::vector<Real> gram_eigenvalues(const ComplexMatrix<Real>& g,
                                   const SpectralOptionsT<Real>& opts = SpectralOptionsT<Real>{}) {
    auto eig = hermitian_eigen(g, opts);
    const Real norm = frobenius(g);
    const Real floor = -opts.clamp_tolerance * norm;
    const Real rank_floor = opts.rank_tolerance * norm;
    for (Real& lambda : eig.eigenvalues) {
        if (lambda < floor) {
            std::ostringstream msg;
            msg << std::setprecision(17) << "gram_eigenvalues: eigenvalue " << lambda
                << " is below the roundoff floor " << floor;
            throw NumericalConsistencyError(msg.str());
        }
        if (lambda <= rank_floor) lambda = Real(0);
    }
    return eig.eigenvalues;
}

/// Square roots of the cleaned eigenvalues of the smaller Gram (A*A or AA*).
template <typename Real>
SingularSpectrum<Real> singular_values(const ComplexMatrix<Real>& a,
                                       const SpectralOptionsT<Real>& opts = SpectralOptionsT<Real>{}) {
    const auto lambdas = gram_eigenvalues(a.cols() <= a.rows() ? gram(a) : cogram(a), opts);
    SingularSpectrum<Real> out;
    out.values.reserve(lambdas.size());
    for (const Real lambda : lambdas) out.values.push_back(std::sqrt(lambda));
    return out;
}

/// Sum of s_j^p, the quantity every p-th power term is built from.
template <typename Real>
Real schatten_pth_power(const SingularSpectrum<Real>& s, const SchattenOrderT<Real>& p) {
    Real acc = 0;
    for (const Real v : s.values) acc += std::pow(v, p.value());
    return acc;
}

template <typename Real>
Real schatten_pth_power(const ComplexMatrix<Real>& a, const SchattenOrderT<Real>& p,
                        const SpectralOptionsT<Real>& opts = SpectralOptionsT<Real>{}) {
    return schatten_pth_power(singular_values(a, opts), p);
}

/// (sum s_j^p)^{1/p}; a norm for p >= 1 and a quasi-norm below.
template <typename Real>
Real schatten_norm(const ComplexMatrix<Real>& a, const SchattenOrderT<Real>& p,
                   const SpectralOptionsT<Real>& opts = SpectralOptionsT<Real>{}) {
    const Real power = schatten_pth_power(a, p, opts);
    return power == Real(0) ? Real(0) : std::pow(power, Real(1) / p.value());
}

/// Largest singular value.
template <typename Real>
Real spectral_norm(const ComplexMatrix<Real>& a, const SpectralOptionsT<Real>& opts = SpectralOptionsT<Real>{}) {
    return singular_values(a, opts).largest();
}

} // namespace schatten
