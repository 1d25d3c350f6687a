#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "schatten/errors.hpp"

namespace schatten {

/// Dense complex matrix, row-major. Stands in for a Schatten-class operator.
template <typename Real>
using ComplexMatrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

using Matrix = ComplexMatrix<double>;
using Complex = std::complex<double>;

namespace detail {

inline std::string shape_string(Eigen::Index r, Eigen::Index c) {
    return std::to_string(r) + "x" + std::to_string(c);
}

template <typename Real>
void require_same_shape(const ComplexMatrix<Real>& a, const ComplexMatrix<Real>& b, const char* op) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError(std::string(op) + ": shape mismatch " + shape_string(a.rows(), a.cols()) +
                             " vs " + shape_string(b.rows(), b.cols()));
    }
}

} // namespace detail

template <typename Real>
bool all_finite(const ComplexMatrix<Real>& a) {
    for (Eigen::Index k = 0; k < a.size(); ++k) {
        const auto& z = a.data()[k];
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    }
    return true;
}

/// Builds a matrix from nested row lists; rows must all have the same length.
template <typename Real = double>
ComplexMatrix<Real> from_rows(
    std::initializer_list<std::initializer_list<std::type_identity_t<std::complex<Real>>>> rows) {
    const auto r = static_cast<Eigen::Index>(rows.size());
    const auto c = r == 0 ? Eigen::Index{0} : static_cast<Eigen::Index>(rows.begin()->size());
    if (r == 0 || c == 0) throw DimensionError("from_rows: empty matrix");
    ComplexMatrix<Real> m(r, c);
    Eigen::Index i = 0;
    for (const auto& row : rows) {
        if (static_cast<Eigen::Index>(row.size()) != c) throw DimensionError("from_rows: ragged rows");
        Eigen::Index j = 0;
        for (const auto& z : row) m(i, j++) = z;
        ++i;
    }
    return m;
}

template <typename Real>
ComplexMatrix<Real> add(const ComplexMatrix<Real>& a, const ComplexMatrix<Real>& b) {
    detail::require_same_shape(a, b, "add");
    return a + b;
}

template <typename Real>
ComplexMatrix<Real> sub(const ComplexMatrix<Real>& a, const ComplexMatrix<Real>& b) {
    detail::require_same_shape(a, b, "sub");
    return a - b;
}

template <typename Real>
ComplexMatrix<Real> adjoint(const ComplexMatrix<Real>& a) {
    return a.adjoint();
}

template <typename Real>
ComplexMatrix<Real> mul(const ComplexMatrix<Real>& a, const ComplexMatrix<Real>& b) {
    if (a.cols() != b.rows()) {
        throw DimensionError("mul: inner dimension mismatch " + detail::shape_string(a.rows(), a.cols()) +
                             " * " + detail::shape_string(b.rows(), b.cols()));
    }
    return a * b;
}

/// Largest entrywise |M - M*|; zero for an exactly Hermitian representation.
template <typename Real>
Real hermitian_defect(const ComplexMatrix<Real>& m) {
    if (m.rows() != m.cols()) throw DimensionError("hermitian_defect: matrix is not square");
    Real worst = 0;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = i; j < m.cols(); ++j) {
            worst = std::max(worst, std::abs(m(i, j) - std::conj(m(j, i))));
        }
    }
    return worst;
}

/// Replaces m by (m + m*)/2 so the stored representation is exactly Hermitian.
template <typename Real>
void symmetrize(ComplexMatrix<Real>& m) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        m(i, i) = std::complex<Real>(m(i, i).real(), Real(0));
        for (Eigen::Index j = i + 1; j < m.cols(); ++j) {
            const auto avg = (m(i, j) + std::conj(m(j, i))) * Real(0.5);
            m(i, j) = avg;
            m(j, i) = std::conj(avg);
        }
    }
}

/// |A|^2 = A*A, symmetrized.
template <typename Real>
ComplexMatrix<Real> gram(const ComplexMatrix<Real>& a) {
    ComplexMatrix<Real> g = a.adjoint() * a;
    symmetrize(g);
    return g;
}

/// AA*, the co-Gram; same nonzero spectrum as gram(a).
template <typename Real>
ComplexMatrix<Real> cogram(const ComplexMatrix<Real>& a) {
    ComplexMatrix<Real> g = a * a.adjoint();
    symmetrize(g);
    return g;
}

template <typename Real>
Real frobenius(const ComplexMatrix<Real>& a) {
    Real ssq = 0;
    for (Eigen::Index k = 0; k < a.size(); ++k) ssq += std::norm(a.data()[k]);
    return std::sqrt(ssq);
}

/// Ordered list of n >= 1 same-shaped matrices with finite entries.
template <typename Real>
class OperatorFamily {
public:
    using matrix_type = ComplexMatrix<Real>;

    explicit OperatorFamily(std::vector<matrix_type> members) : members_(std::move(members)) {
        if (members_.empty()) throw DimensionError("OperatorFamily: a family needs at least one member");
        const auto r = members_.front().rows();
        const auto c = members_.front().cols();
        if (r == 0 || c == 0) throw DimensionError("OperatorFamily: members must be non-empty");
        for (std::size_t i = 0; i < members_.size(); ++i) {
            if (members_[i].rows() != r || members_[i].cols() != c) {
                throw DimensionError("OperatorFamily: member " + std::to_string(i) + " has shape " +
                                     detail::shape_string(members_[i].rows(), members_[i].cols()) +
                                     ", expected " + detail::shape_string(r, c));
            }
            if (!all_finite(members_[i])) {
                throw DomainError("OperatorFamily: member " + std::to_string(i) + " has non-finite entries");
            }
        }
    }

    OperatorFamily(std::initializer_list<matrix_type> members)
        : OperatorFamily(std::vector<matrix_type>(members)) {}

    std::size_t size() const noexcept { return members_.size(); }
    Eigen::Index rows() const noexcept { return members_.front().rows(); }
    Eigen::Index cols() const noexcept { return members_.front().cols(); }

    const matrix_type& operator[](std::size_t i) const { return members_[i]; }
    const std::vector<matrix_type>& members() const noexcept { return members_; }

    auto begin() const noexcept { return members_.begin(); }
    auto end() const noexcept { return members_.end(); }

    bool same_layout(const OperatorFamily& other) const noexcept {
        return size() == other.size() && rows() == other.rows() && cols() == other.cols();
    }

    /// Largest member Frobenius norm.
    Real max_frobenius() const {
        Real m = 0;
        for (const auto& x : members_) m = std::max(m, frobenius(x));
        return m;
    }

    OperatorFamily negated() const {
        std::vector<matrix_type> out;
        out.reserve(members_.size());
        for (const auto& x : members_) out.push_back(-x);
        return OperatorFamily(std::move(out));
    }

    friend bool operator==(const OperatorFamily& a, const OperatorFamily& b) {
        if (!a.same_layout(b)) return false;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] != b[i]) return false;
        }
        return true;
    }

private:
    std::vector<matrix_type> members_;
};

using Family = OperatorFamily<double>;

template <typename Real>
ComplexMatrix<Real> family_sum(const OperatorFamily<Real>& f) {
    ComplexMatrix<Real> s = ComplexMatrix<Real>::Zero(f.rows(), f.cols());
    for (const auto& x : f) s += x;
    return s;
}

template <typename Real>
void require_same_layout(const OperatorFamily<Real>& a, const OperatorFamily<Real>& b, const char* op) {
    if (!a.same_layout(b)) {
        throw DimensionError(std::string(op) + ": families differ in size or shape (n=" + std::to_string(a.size()) +
                             " " + detail::shape_string(a.rows(), a.cols()) + " vs n=" + std::to_string(b.size()) +
                             " " + detail::shape_string(b.rows(), b.cols()) + ")");
    }
}

} // namespace schatten
