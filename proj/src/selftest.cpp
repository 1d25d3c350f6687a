#include "schatten/selftest.hpp"

#include <cmath>
#include <numbers>
#include <ostream>

#include "schatten/generators.hpp"
#include "schatten/harness.hpp"
#include "schatten/inequalities.hpp"
#include "schatten/parallelogram.hpp"
#include "schatten/spectral.hpp"

namespace schatten {

namespace {

using namespace std::complex_literals;

bool near(double a, double b, double tol = 1e-12) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(b)); }

bool same(const Matrix& a, const Matrix& b, double tol = 1e-14) {
    return a.rows() == b.rows() && a.cols() == b.cols() && frobenius(Matrix(a - b)) <= tol;
}

bool values_are(const std::vector<double>& got, std::initializer_list<double> want, double tol = 1e-12) {
    if (got.size() != want.size()) return false;
    std::size_t k = 0;
    for (const double w : want) {
        if (!near(got[k++], w, tol)) return false;
    }
    return true;
}

Matrix diag(std::initializer_list<double> d) {
    Matrix m = Matrix::Zero(static_cast<long>(d.size()), static_cast<long>(d.size()));
    long i = 0;
    for (const double v : d) m(i, i) = v, ++i;
    return m;
}

Matrix scalar(Complex z) { return from_rows({{z}}); }

Family scalars(std::initializer_list<Complex> zs) {
    std::vector<Matrix> m;
    for (const auto z : zs) m.push_back(scalar(z));
    return Family(std::move(m));
}

Family ginibre_family(int n, long dim, std::uint64_t seed) {
    GeneratorSpec s;
    s.n = n;
    s.rows = dim;
    s.cols = dim;
    s.seed = seed;
    return generate(s);
}

bool verdict_ok(const CheckResult& r) { return r.verdict != Verdict::violated; }

std::vector<SelftestCase> build() {
    const Matrix I2 = Matrix::Identity(2, 2);
    const Matrix Z2 = Matrix::Zero(2, 2);
    const Matrix D34 = diag({3, 4});
    const Matrix ones = from_rows({{1., 1.}, {1., 1.}});
    const double c = std::cos(0.3), s = std::sin(0.3);
    const Matrix U = from_rows({{Complex(c, 0), -s * 1i}, {-s * 1i, Complex(c, 0)}});

    std::vector<SelftestCase> cases{
        // matrix core
        {"add: additive identity", [=] { return same(add(I2, Z2), I2); }},
        {"add: additive inverse", [] {
             const Matrix a = from_rows({{1., 2.}, {3., 4.}});
             return same(add(a, Matrix(-a)), Matrix::Zero(2, 2), 0);
         }},
        {"add: disjoint support", [] {
             return same(add(from_rows({{1i, 0i}, {0i, 0i}}), from_rows({{0i, 0i}, {0i, 1i}})), from_rows({{1i, 0i}, {0i, 1i}}));
         }},
        {"sub: self-difference", [=] { return same(sub(D34, D34), Z2, 0); }},
        {"sub: zero subtrahend", [=] { return same(sub(D34, Z2), D34, 0); }},
        {"sub: diagonal arithmetic", [=] { return same(sub(diag({2, 2}), I2), I2, 0); }},
        {"adjoint: 1x1 conjugation", [] { return same(adjoint(scalar(1i)), scalar(-1i), 0); }},
        {"adjoint: real symmetric", [] {
             const Matrix a = from_rows({{1., 2.}, {2., 5.}});
             return same(adjoint(a), a, 0);
         }},
        {"adjoint: involution", [=] { return same(adjoint(adjoint(U)), U, 0); }},
        {"mul: identity", [=] { return same(mul(I2, D34), D34, 0); }},
        {"mul: nilpotent square", [] {
             const Matrix n = from_rows({{0., 1.}, {0., 0.}});
             return same(mul(n, n), Matrix::Zero(2, 2), 0);
         }},
        {"mul: rank-1 square", [=] { return same(mul(ones, ones), from_rows({{2., 2.}, {2., 2.}}), 0); }},
        {"gram: unitary", [=] { return same(gram(U), I2, 1e-15); }},
        {"gram: diagonal square", [=] { return same(gram(D34), diag({9, 16}), 0); }},
        {"gram: zero", [=] { return same(gram(Z2), Z2, 0); }},
        {"family_sum: {A, -A}", [=] { return same(family_sum(Family{D34, Matrix(-D34)}), Z2, 0); }},
        {"family_sum: zeros", [=] { return same(family_sum(Family{Z2, Z2, Z2}), Z2, 0); }},
        {"family_sum: {I, I, I}", [=] { return same(family_sum(Family{I2, I2, I2}), Matrix(3.0 * I2), 0); }},
        {"frobenius: 3-4-5", [] { return frobenius(from_rows({{3., 4.}})) == 5.0; }},
        {"frobenius: zero", [=] { return frobenius(Z2) == 0.0; }},
        {"frobenius: identity", [] { return near(frobenius(Matrix(Matrix::Identity(7, 7))), std::sqrt(7.0), 1e-15); }},

        // spectral
        {"hermitian_eigen: [[2,i],[-i,2]]", [] {
             return values_are(hermitian_eigen(from_rows({{2. + 0i, 1i}, {-1i, 2. + 0i}})).eigenvalues, {3, 1});
         }},
        {"hermitian_eigen: diagonal", [] { return values_are(hermitian_eigen(diag({5, 1, 3})).eigenvalues, {5, 3, 1}, 0); }},
        {"hermitian_eigen: zero", [] {
             const auto e = hermitian_eigen(Matrix(Matrix::Zero(3, 3)));
             return values_are(e.eigenvalues, {0, 0, 0}, 0) && same(e.eigenvectors, Matrix::Identity(3, 3), 0);
         }},
        {"singular_values: diagonal", [=] { return values_are(singular_values(D34).values, {4, 3}); }},
        {"singular_values: rank one", [=] {
             const auto v = singular_values(ones).values;
             return near(v[0], 2) && std::abs(v[1]) <= 1e-7;
         }},
        {"singular_values: unitary", [] {
             for (const double v : singular_values(random_unitary(5, 3)).values) {
                 if (!near(v, 1, 1e-12)) return false;
             }
             return true;
         }},
        {"schatten_norm: p=1", [=] { return near(schatten_norm(D34, SchattenOrder(1)), 7); }},
        {"schatten_norm: p=2", [=] { return near(schatten_norm(D34, SchattenOrder(2)), 5); }},
        {"schatten_norm: p=1/2", [=] {
             return near(schatten_norm(D34, SchattenOrder(0.5)), std::pow(std::sqrt(3.0) + 2.0, 2));
         }},
        {"schatten_pth_power: p=2", [=] { return near(schatten_pth_power(D34, SchattenOrder(2)), 25); }},
        {"schatten_pth_power: zero", [=] { return schatten_pth_power(Z2, SchattenOrder(0.3)) == 0.0; }},
        {"schatten_pth_power: rank one p=1/2", [=] {
             return near(schatten_pth_power(ones, SchattenOrder(0.5)), std::sqrt(2.0), 1e-7);
         }},
        {"power identity: diagonal", [=] {
             const auto r = verify_power_identity(D34, SchattenOrder(2));
             return near(r.lhs, 25) && near(r.rhs, 25) && r.verdict == Verdict::equality;
         }},
        {"power identity: random 4x4 p=1", [] {
             const auto r = verify_power_identity(ginibre_family(1, 4, 11)[0], SchattenOrder(1));
             return std::abs(r.lhs - r.rhs) <= 1e-10 * r.rhs;
         }},
        {"power identity: zero", [=] {
             const auto r = verify_power_identity(Z2, SchattenOrder(1.5));
             return r.lhs == 0 && r.rhs == 0 && verdict_ok(r);
         }},

        // parallelogram
        {"d_constant: one zero member", [=] { return d_constant(Family{D34, Z2, I2}).count == 2; }},
        {"d_constant: all zero", [=] { return d_constant(Family{Z2, Z2}).count == 0; }},
        {"d_constant: none zero", [] { return d_constant(ginibre_family(4, 2, 5)).count == 4; }},
        {"d_constant_grid: identical constant families", [=] {
             return d_constant_grid(Family{U, U}, Family{U, U}).count == 0;
         }},
        {"d_constant_grid: zero second family", [=] {
             return d_constant_grid(ginibre_family(3, 2, 9), Family{Z2, Z2, Z2}).count == 9;
         }},
        {"d_constant_grid: one coincidence", [=] { return d_constant_grid(Family{U, D34}, Family{U, I2}).count == 3; }},
        {"identity residual: n=1", [=] { return operator_identity_residual(Family{D34}, Family{U}) <= 1e-13; }},
        {"identity residual: scalars (1,2),(0,0)", [] {
             return operator_identity_residual(scalars({1, 2}), scalars({0, 0})) == 0.0;
         }},
        {"identity residual: random 3 x 5x5", [] {
             const auto a = ginibre_family(3, 5, 21);
             const auto b = ginibre_family(3, 5, 22);
             return operator_identity_residual(a, b) <= 1e-10 * (1 + cross_mass(a, b));
         }},
        {"lemma A: n=1 tight", [=] {
             const auto r = lemma_a_bounds(Family{diag({2, 1})}, SchattenOrder(0.7));
             return r.terms[0] == r.terms[1] || near(r.terms[0], r.terms[1]);
         }},
        {"lemma A: {1, 1} at p=1/2", [] {
             const auto r = lemma_a_bounds(scalars({1, 1}), SchattenOrder(0.5));
             return near(r.terms[0], std::sqrt(2.0)) && near(r.terms[1], std::sqrt(2.0)) && near(r.terms[2], 2) &&
                    verdict_ok(r);
         }},
        {"lemma A: disjoint support upper bound tight", [] {
             const auto r = lemma_a_bounds(Family{diag({2, 0}), diag({0, 5})}, SchattenOrder(0.5));
             return near(r.terms[1], r.terms[2]) && verdict_ok(r);
         }},
        {"refined lemma: {I, 0, 0} tight", [=] {
             const auto r = refined_lemma_bounds(Family{I2, Z2, Z2}, SchattenOrder(0.5));
             return near(r.terms[0], r.terms[1]) && near(r.terms[1], r.terms[2]);
         }},
        {"refined lemma: all zero degenerate", [=] {
             return refined_lemma_bounds(Family{Z2, Z2}, SchattenOrder(0.5)).verdict == Verdict::degenerate;
         }},
        {"refined lemma: beats lemma A with a zero member", [=] {
             const Family f{diag({1, 2}), Z2};
             return refined_lemma_bounds(f, SchattenOrder(0.5)).terms[0] > lemma_a_bounds(f, SchattenOrder(0.5)).terms[0];
         }},

        // inequalities
        {"eq13: identical families", [] {
             const auto a = ginibre_family(3, 2, 31);
             return eval_equality_13(a, a).verdict == Verdict::equality;
         }},
        {"eq13: n=1", [=] {
             const auto r = eval_equality_13(Family{D34}, Family{U});
             return r.lhs == 0 && std::abs(r.rhs) <= 1e-12;
         }},
        {"eq13: random n=3 4x4", [] {
             const auto r = eval_equality_13(ginibre_family(3, 4, 41), ginibre_family(3, 4, 42));
             return std::abs(r.lhs - r.rhs) <= 1e-9 * r.scale;
         }},
        {"thm21: A=B=C at p=1", [] {
             const auto a = ginibre_family(3, 2, 51);
             return verdict_ok(eval_theorem21(ThreeFamilyInstance(a, a, a), SchattenOrder(1)));
         }},
        {"thm21: all zero", [=] {
             const Family z{Z2, Z2};
             return eval_theorem21(ThreeFamilyInstance(z, z, z), SchattenOrder(0.5)).verdict == Verdict::degenerate;
         }},
        {"thm21: p=2 equality", [] {
             const auto r = eval_theorem21(ThreeFamilyInstance(ginibre_family(3, 3, 61), ginibre_family(3, 3, 62),
                                                               ginibre_family(3, 3, 63)),
                                           SchattenOrder(2));
             return std::abs(r.slack) <= 1e-9 * r.scale;
         }},
        {"prop22: p=2 equality", [] {
             const auto r = eval_prop22(ginibre_family(3, 3, 71), ginibre_family(3, 3, 72), SchattenOrder(2));
             return std::abs(r.slack) <= 1e-9 * r.scale;
         }},
        {"prop22: n=1", [=] { return eval_prop22(Family{D34}, Family{U}, SchattenOrder(0.7)).verdict == Verdict::equality; }},
        {"prop22: scalars (1,-1),(0,0) p=1", [] {
             const auto r = eval_prop22(scalars({1, -1}), scalars({0, 0}), SchattenOrder(1));
             return near(r.lhs, 4) && near(r.rhs, 4) && r.verdict == Verdict::equality;
         }},
        {"cor23: permutation", [] {
             const auto a = ginibre_family(3, 2, 81);
             const Family b{a[2], a[0], a[1]};
             return verdict_ok(eval_cor23(a, b, SchattenOrder(0.5)));
         }},
        {"cor23: A = B", [] {
             const auto a = ginibre_family(3, 2, 82);
             return eval_cor23(a, a, SchattenOrder(1.5)).verdict == Verdict::holds;
         }},
        {"cor24: {A, -A} p=2", [=] {
             const auto r = eval_cor24(Family{D34, Matrix(-D34)}, SchattenOrder(2));
             return near(r.lhs, 8 * 25) && near(r.rhs, 8 * 25) && r.verdict == Verdict::equality;
         }},
        {"cor24: {A, -A} p=1", [=] {
             const auto r = eval_cor24(Family{D34, Matrix(-D34)}, SchattenOrder(1));
             return near(r.lhs, 4 * 7) && near(r.rhs, 4 * 7) && r.verdict == Verdict::equality;
         }},
        {"cor24: all zero", [=] { return eval_cor24(Family{Z2, Z2}, SchattenOrder(1)).verdict == Verdict::degenerate; }},
        {"prop25: p=2 equality", [] {
             const auto r = eval_prop25(ginibre_family(2, 3, 91), ginibre_family(2, 3, 92), SchattenOrder(2));
             return std::abs(r.slack) <= 1e-9 * r.scale;
         }},
        {"prop25: n=1", [=] { return eval_prop25(Family{D34}, Family{U}, SchattenOrder(3)).verdict == Verdict::equality; }},
        {"prop25: scalars (1,-1),(0,0) p=1", [] {
             const auto r = eval_prop25(scalars({1, -1}), scalars({0, 0}), SchattenOrder(1));
             return near(r.lhs, 8 * std::sqrt(3.0)) && near(r.rhs, 4) && r.verdict == Verdict::holds;
         }},
        {"sandwich: p=1 and p=3", [] {
             const auto a = ginibre_family(3, 2, 101);
             const auto b = ginibre_family(3, 2, 102);
             const auto [lo1, hi1] = sandwich(a, b, SchattenOrder(1));
             const auto [lo3, hi3] = sandwich(a, b, SchattenOrder(3));
             return lo1.verdict == Verdict::holds && hi1.verdict == Verdict::holds && lo3.verdict == Verdict::holds &&
                    hi3.verdict == Verdict::holds;
         }},
        {"remark: n=3 p=1 consistent", [] {
             const auto r = remark_constants(3, SchattenOrder(1), RemarkVariant::consistent_n2);
             return r.verdict == Verdict::holds && near(r.terms[1], std::sqrt(7.0));
         }},
        {"remark: n=3 p=1 printed constant fails", [] {
             const auto r = remark_constants(3, SchattenOrder(1), RemarkVariant::paper_2n2);
             return r.verdict == Verdict::violated && near(r.terms[1], 4);
         }},
        {"remark: n=1 consistent collapses", [] {
             return remark_constants(1, SchattenOrder(1), RemarkVariant::consistent_n2).verdict == Verdict::degenerate;
         }},

        // generators
        {"generate: determinism", [] {
             GeneratorSpec s;
             s.kind = GeneratorKind::scalar;
             s.seed = 7;
             return generate(s) == generate(s);
         }},
        {"generate: mean_centered", [] {
             GeneratorSpec s;
             s.kind = GeneratorKind::mean_centered;
             s.n = 4;
             s.rows = s.cols = 3;
             return frobenius(family_sum(generate(s))) <= 1e-13 * s.scale;
         }},
        {"generate: with_zeros", [] {
             GeneratorSpec s;
             s.kind = GeneratorKind::with_zeros;
             s.n = 5;
             s.zeros = 2;
             return d_constant(generate(s)).count == 3;
         }},
        {"generate_pair_equal_sums: residual", [] {
             GeneratorSpec s;
             s.kind = GeneratorKind::pair_equal_sums;
             s.n = 4;
             const auto [a, b] = generate_pair_equal_sums(s);
             return frobenius(Matrix(family_sum(a) - family_sum(b))) <= 1e-13;
         }},
        {"random_unitary: dim 1", [] { return near(std::abs(random_unitary(1, 4)(0, 0)), 1, 1e-14); }},

        // harness
        {"fit_kset_ansatz: k=2", [] {
             GeneratorSpec s;
             s.n = 3;
             const auto fit = fit_kset_ansatz(2, s, 12);
             return near(fit.coefficients[0], 2, 1e-6) && near(fit.coefficients[1], -2, 1e-6) &&
                    fit.residual_rms <= 1e-8 * fit.scale;
         }},
        {"probe: n=1", [=] {
             return probe_spectral_norm_identity(Family{D34}, Family{U}).slack >= -1e-12;
         }},
    };

    cases.push_back({"eigensolver residual suite", [] {
                         for (std::uint64_t seed = 0; seed < 40; ++seed) {
                             GeneratorSpec s;
                             s.kind = GeneratorKind::hermitian;
                             s.n = 1;
                             s.rows = s.cols = 1 + static_cast<long>(seed % 16);
                             s.seed = seed;
                             const Matrix h = generate(s)[0];
                             const auto e = hermitian_eigen(h);
                             Matrix lambda = Matrix::Zero(h.rows(), h.cols());
                             for (long i = 0; i < h.rows(); ++i) lambda(i, i) = e.eigenvalues[static_cast<std::size_t>(i)];
                             const double resid = frobenius(Matrix(h * e.eigenvectors - e.eigenvectors * lambda));
                             const double unit = frobenius(Matrix(e.eigenvectors.adjoint() * e.eigenvectors -
                                                                  Matrix::Identity(h.rows(), h.cols())));
                             if (resid > 1e-12 * std::max(1.0, frobenius(h))) return false;
                             if (unit > 1e-12 * static_cast<double>(h.rows())) return false;
                         }
                         return true;
                     }});
    return cases;
}

} // namespace

const std::vector<SelftestCase>& selftest_cases() {
    static const std::vector<SelftestCase> cases = build();
    return cases;
}

int run_selftest(std::ostream& out) {
    int failures = 0;
    for (const auto& c : selftest_cases()) {
        bool ok = false;
        std::string detail;
        try {
            ok = c.check();
        } catch (const std::exception& e) {
            detail = std::string(" (") + e.what() + ")";
        }
        out << (ok ? "PASS " : "FAIL ") << c.name << detail << '\n';
        if (!ok) ++failures;
    }
    out << (failures == 0 ? "selftest: all " : "selftest: ") << (selftest_cases().size() - failures) << "/"
        << selftest_cases().size() << " passed\n";
    return failures;
}

} // namespace schatten
