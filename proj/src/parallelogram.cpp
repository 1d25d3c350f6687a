#include "schatten/parallelogram.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace schatten {

namespace {

void require_positive_epsilon(double epsilon_zero) {
    if (!(epsilon_zero > 0)) throw DomainError("epsilon_zero must be > 0");
}

int count_nonzero(const std::vector<double>& norms, double epsilon_zero) {
    double top = 1;
    for (const double v : norms) top = std::max(top, v);
    const double cutoff = epsilon_zero * top;
    return static_cast<int>(std::count_if(norms.begin(), norms.end(), [&](double v) { return v > cutoff; }));
}

// count^{exponent} * sum, with 0^{anything} * 0 := 0.
double weighted(int count, double exponent, double sum) {
    if (count == 0) return 0;
    return std::pow(static_cast<double>(count), exponent) * sum;
}

CheckResult chain_bounds(ClaimId claim, const Family& f, const SchattenOrder& p, int count, const EvalOptions& opts) {
    require_psd_family(f, opts.spectral);

    double plain = 0;
    for (const auto& x : f) plain += schatten_pth_power(x, p, opts.spectral);
    const double middle = schatten_pth_power(family_sum(f), p, opts.spectral);
    const double bound = weighted(count, p.value() - 1, plain);

    CheckResult r;
    r.claim_id = claim;
    r.p = p.value();
    r.n = static_cast<int>(f.size());
    r.rows = f.rows();
    r.cols = f.cols();
    r.terms = {bound, middle, plain};
    r.lhs = middle;

    if (p.value() == 1) {
        r.direction = Direction::eq;
        r.rhs = std::abs(middle - bound) >= std::abs(middle - plain) ? bound : plain;
    } else {
        // quasi regime: bound <= middle <= plain; Banach regime: plain <= middle <= bound
        const double lower = p.value() < 1 ? bound : plain;
        const double upper = p.value() < 1 ? plain : bound;
        if (middle - lower <= upper - middle) {
            r.direction = Direction::geq;
            r.rhs = lower;
        } else {
            r.direction = Direction::leq;
            r.rhs = upper;
        }
    }
    adjudicate(r, opts.tolerance, count == 0);
    return r;
}

} // namespace

DConstant d_constant(const Family& f, double epsilon_zero) {
    require_positive_epsilon(epsilon_zero);
    std::vector<double> norms;
    norms.reserve(f.size());
    for (const auto& x : f) norms.push_back(frobenius(x));
    return {count_nonzero(norms, epsilon_zero), static_cast<int>(f.size()), epsilon_zero};
}

DConstant d_constant_grid(const Family& a, const Family& b, double epsilon_zero) {
    require_positive_epsilon(epsilon_zero);
    require_same_layout(a, b, "d_constant_grid");
    std::vector<double> norms;
    norms.reserve(a.size() * b.size());
    for (const auto& x : a) {
        for (const auto& y : b) norms.push_back(frobenius(Matrix(x - y)));
    }
    const int n = static_cast<int>(a.size());
    return {count_nonzero(norms, epsilon_zero), n * n, epsilon_zero};
}

double operator_identity_residual(const Family& a, const Family& b) {
    require_same_layout(a, b, "operator_identity_residual");
    const auto n = a.size();
    const auto d = a.cols();
    Matrix lhs = Matrix::Zero(d, d);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            lhs += gram(Matrix(a[i] - a[j]));
            lhs += gram(Matrix(b[i] - b[j]));
        }
    }
    Matrix rhs = Matrix::Zero(d, d);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) rhs += gram(Matrix(a[i] - b[j]));
    }
    rhs -= gram(Matrix(family_sum(a) - family_sum(b)));
    return frobenius(Matrix(lhs - rhs));
}

double cross_mass(const Family& a, const Family& b) {
    require_same_layout(a, b, "cross_mass");
    double mass = 0;
    for (const auto& x : a) {
        for (const auto& y : b) mass += (x - y).squaredNorm();
    }
    return mass;
}

CheckResult check_identity14(const Family& a, const Family& b, const EvalOptions& opts) {
    CheckResult r;
    r.claim_id = ClaimId::identity14;
    r.p = 2;
    r.n = static_cast<int>(a.size());
    r.rows = a.rows();
    r.cols = a.cols();
    r.lhs = operator_identity_residual(a, b);
    r.rhs = 0;
    r.direction = Direction::eq;
    r.terms = {1 + cross_mass(a, b)};
    adjudicate(r, opts.tolerance);
    return r;
}

void require_psd_family(const Family& f, const SpectralOptions& spectral) {
    if (f.rows() != f.cols()) throw DomainError("positive family: members must be square");
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double scale = frobenius(f[i]);
        if (hermitian_defect(f[i]) > spectral.hermitian_tolerance * scale) {
            throw DomainError("member " + std::to_string(i) + " is not Hermitian");
        }
        const auto eig = hermitian_eigen(f[i], spectral);
        const double smallest = eig.eigenvalues.back();
        if (smallest < -1e-10 * scale) {
            throw DomainError("member " + std::to_string(i) + " is not positive semidefinite (min eigenvalue " +
                              std::to_string(smallest) + ")");
        }
    }
}

CheckResult lemma_a_bounds(const Family& f, const SchattenOrder& p, const EvalOptions& opts) {
    const int nonzero = d_constant(f, opts.epsilon_zero).count;
    auto r = chain_bounds(ClaimId::lemmaA, f, p, static_cast<int>(f.size()), opts);
    if (nonzero == 0) adjudicate(r, opts.tolerance, true);
    return r;
}

CheckResult refined_lemma_bounds(const Family& f, const SchattenOrder& p, const EvalOptions& opts) {
    const auto d = d_constant(f, opts.epsilon_zero);
    return chain_bounds(ClaimId::lemmaA_refined, f, p, d.count, opts);
}

} // namespace schatten
