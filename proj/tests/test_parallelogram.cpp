#include "doctest.h"

#include <random>

#include "oracle.hpp"
#include "schatten/parallelogram.hpp"

using namespace schatten;

namespace {

Matrix scalar(Complex z) { return Matrix::Constant(1, 1, z); }

} // namespace

TEST_CASE("D-constant counts nonzero members") {
    const Matrix z = Matrix::Zero(2, 2);
    const Matrix i = Matrix::Identity(2, 2);
    CHECK(d_constant(Family{z, i, z}).count == 1);
    CHECK(d_constant(Family{z, i, z}).maximum == 3);
    CHECK(d_constant(Family{z, z}).count == 0);
    CHECK(d_constant(Family{Matrix(1e-20 * i), i}).count == 1);
    CHECK(d_constant_grid(Family{i, z}, Family{i, z}).count == 2);
    CHECK(d_constant_grid(Family{i, z}, Family{i, z}).maximum == 4);
}

TEST_CASE("operator identity residual is roundoff on random families") {
    std::mt19937_64 gen(31);
    for (int n : {1, 2, 3, 5}) {
        for (long d : {1, 3, 6}) {
            const auto a = oracle::random_family(n, d, d + 1, gen);
            const auto b = oracle::random_family(n, d, d + 1, gen);
            const double residual = operator_identity_residual(a, b);
            CHECK(residual <= 1e-10 * (1 + cross_mass(a, b)));
            const auto r = check_identity14(a, b);
            CHECK(r.verdict == Verdict::equality);
            CHECK(r.ok());
        }
    }
}

TEST_CASE("cross mass is the Hilbert-Schmidt grid mass") {
    std::mt19937_64 gen(32);
    const auto a = oracle::random_family(3, 2, 2, gen);
    const auto b = oracle::random_family(3, 2, 2, gen);
    CHECK(oracle::close(cross_mass(a, b), oracle::grid(a, b, 2.0), 1e-12));
}

TEST_CASE("Lemma A on scalar PSD families matches direct arithmetic") {
    const Family f{scalar(1), scalar(2), scalar(0)};
    for (double p : {0.25, 0.5, 1.0, 2.0, 3.0}) {
        const double s = 1 + std::pow(2.0, p);
        const double whole = std::pow(3.0, p);
        const auto plain = lemma_a_bounds(f, SchattenOrder(p));
        const auto refined = refined_lemma_bounds(f, SchattenOrder(p));
        REQUIRE(plain.terms.size() == 3);
        CHECK(plain.terms[0] == doctest::Approx(std::pow(3.0, p - 1) * s));
        CHECK(plain.terms[1] == doctest::Approx(whole));
        CHECK(plain.terms[2] == doctest::Approx(s));
        CHECK(refined.terms[0] == doctest::Approx(std::pow(2.0, p - 1) * s));
        CHECK(plain.ok());
        CHECK(refined.ok());
        if (p == 1.0) {
            CHECK(plain.direction == Direction::eq);
            CHECK(plain.verdict == Verdict::equality);
        } else if (p < 1) {
            CHECK(plain.terms[0] <= plain.terms[1]);
            CHECK(plain.terms[1] <= plain.terms[2]);
        } else {
            CHECK(plain.terms[0] >= plain.terms[1]);
            CHECK(plain.terms[1] >= plain.terms[2]);
        }
    }
}

TEST_CASE("refined chain is never weaker on families with zero members") {
    std::mt19937_64 gen(33);
    for (double p : {0.25, 0.5, 2.0, 3.0}) {
        for (int t = 0; t < 20; ++t) {
            const Family f{oracle::random_psd(3, gen), Matrix(Matrix::Zero(3, 3)), oracle::random_psd(3, gen)};
            const auto plain = lemma_a_bounds(f, SchattenOrder(p));
            const auto refined = refined_lemma_bounds(f, SchattenOrder(p));
            CHECK(refined.ok());
            // D^{p-1} vs n^{p-1}: refined is closer to the middle term
            CHECK(std::abs(refined.terms[0] - refined.terms[1]) <= std::abs(plain.terms[0] - plain.terms[1]) + 1e-12);
        }
    }
}

TEST_CASE("Lemma A on random PSD families") {
    std::mt19937_64 gen(34);
    for (double p : {0.25, 0.5, 1.0, 1.5, 2.0, 3.0, 4.0}) {
        for (int t = 0; t < 20; ++t) {
            const Family f{oracle::random_psd(3, gen), oracle::random_psd(3, gen)};
            const auto r = lemma_a_bounds(f, SchattenOrder(p));
            CHECK(r.ok());
            const double middle = oracle::pth_power(oracle::sum(f), p);
            CHECK(oracle::close(r.terms[1], middle, 1e-9));
        }
    }
}

TEST_CASE("Lemma A rejects non-positive families and flags the zero family") {
    const Matrix h = from_rows({{1.0, 0.0}, {0.0, -1.0}});
    CHECK_THROWS_AS(lemma_a_bounds(Family{h}, SchattenOrder(1)), DomainError);
    CHECK_THROWS_AS(lemma_a_bounds(Family{Matrix(Matrix::Ones(2, 3))}, SchattenOrder(1)), DomainError);
    const auto z = lemma_a_bounds(Family{Matrix(Matrix::Zero(2, 2))}, SchattenOrder(0.5));
    CHECK(z.verdict == Verdict::degenerate);
    CHECK(refined_lemma_bounds(Family{Matrix(Matrix::Zero(2, 2))}, SchattenOrder(0.5)).verdict ==
          Verdict::degenerate);
}
