#include "doctest.h"

#include <Eigen/Eigenvalues>

#include <random>

#include "oracle.hpp"
#include "schatten/generators.hpp"
#include "schatten/spectral.hpp"

using namespace schatten;
using namespace std::complex_literals;

namespace {

double residual(const Matrix& h, const HermitianEigen<double>& e) {
    const Eigen::VectorXd lambda = Eigen::Map<const Eigen::VectorXd>(e.eigenvalues.data(), e.eigenvalues.size());
    return frobenius(Matrix(h * e.eigenvectors - e.eigenvectors * lambda.cast<Complex>().asDiagonal()));
}

double unitarity(const Matrix& v) {
    return frobenius(Matrix(v.adjoint() * v - Matrix::Identity(v.cols(), v.cols())));
}

} // namespace

TEST_CASE("SchattenOrder domain and regimes") {
    CHECK_THROWS_AS(SchattenOrder(0), DomainError);
    CHECK_THROWS_AS(SchattenOrder(-1), DomainError);
    CHECK_THROWS_AS(SchattenOrder(std::numeric_limits<double>::infinity()), DomainError);
    CHECK(SchattenOrder(0.5).quasi());
    CHECK(SchattenOrder(1).banach());
    CHECK(SchattenOrder(1).below_two());
    CHECK(SchattenOrder(2).below_two());
    CHECK(SchattenOrder(2).above_two());
    CHECK(!SchattenOrder(3).below_two());
}

TEST_CASE("hermitian_eigen closed forms") {
    const auto e = hermitian_eigen(from_rows({{2.0, 1i}, {-1i, 2.0}}));
    REQUIRE(e.eigenvalues.size() == 2);
    CHECK(e.eigenvalues[0] == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(e.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-14));

    const auto d = hermitian_eigen(from_rows({{5.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 3.0}}));
    CHECK(d.eigenvalues == std::vector<double>{5, 3, 1});

    const auto z = hermitian_eigen(Matrix(Matrix::Zero(4, 4)));
    CHECK(z.eigenvalues == std::vector<double>(4, 0.0));
    CHECK(z.eigenvectors == Matrix::Identity(4, 4));
}

TEST_CASE("hermitian_eigen rejects bad input") {
    CHECK_THROWS_AS(hermitian_eigen(Matrix(Matrix::Ones(2, 3))), DimensionError);
    CHECK_THROWS_AS(hermitian_eigen(from_rows({{1.0, 2.0}, {0.0, 1.0}})), DomainError);
    SpectralOptions starved;
    starved.max_sweeps = 1;
    std::mt19937_64 gen(3);
    try {
        hermitian_eigen(oracle::random_hermitian(12, gen), starved);
        FAIL("expected ConvergenceError");
    } catch (const ConvergenceError& e) {
        CHECK(e.off_diagonal() > 0);
    }
}

TEST_CASE("hermitian_eigen agrees with Eigen's SelfAdjointEigenSolver") {
    std::mt19937_64 gen(11);
    for (long d : {1, 2, 3, 5, 8, 13, 21, 32}) {
        for (int t = 0; t < 5; ++t) {
            const Matrix h = oracle::random_hermitian(d, gen);
            const auto e = hermitian_eigen(h);
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ref(Eigen::MatrixXcd(h), Eigen::EigenvaluesOnly);
            const double scale = std::max(1.0, frobenius(h));
            for (long k = 0; k < d; ++k) {
                // Eigen sorts ascending
                CHECK(std::abs(e.eigenvalues[k] - ref.eigenvalues()[d - 1 - k]) <= 1e-12 * scale);
            }
            CHECK(residual(h, e) <= 1e-12 * scale);
            CHECK(unitarity(e.eigenvectors) <= 1e-12 * d);
        }
    }
}

TEST_CASE("singular values against JacobiSVD, including rectangular shapes") {
    std::mt19937_64 gen(5);
    for (auto [r, c] : std::vector<std::pair<long, long>>{{1, 1}, {2, 5}, {5, 2}, {4, 4}, {7, 3}, {16, 16}}) {
        const Matrix a = oracle::random(r, c, gen);
        const auto s = singular_values(a);
        const Eigen::VectorXd ref = oracle::svd(a);
        REQUIRE(s.values.size() == static_cast<std::size_t>(std::min(r, c)));
        for (std::size_t k = 0; k < s.values.size(); ++k) {
            CHECK(oracle::close(s.values[k], ref[static_cast<long>(k)], 1e-10));
            if (k > 0) CHECK(s.values[k] <= s.values[k - 1]);
        }
    }
}

TEST_CASE("singular value closed forms") {
    CHECK(singular_values(from_rows({{3.0, 0.0}, {0.0, 4.0}})).values == std::vector<double>{4, 3});
    const auto rank1 = singular_values(from_rows({{1.0, 1.0}, {1.0, 1.0}})).values;
    CHECK(rank1[0] == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(rank1[1] == 0.0);
    const auto u = random_unitary(6, 99);
    for (double s : singular_values(u).values) CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("exactly rank-deficient input has exact zero singular values") {
    std::mt19937_64 gen(17);
    for (int t = 0; t < 50; ++t) {
        const Matrix a = oracle::random(4, 1, gen) * oracle::random(1, 4, gen);
        const auto s = singular_values(a).values;
        CHECK(s[0] > 0);
        CHECK(s[1] == 0.0);
        CHECK(s[3] == 0.0);
    }
}

TEST_CASE("schatten norms") {
    const Matrix d = from_rows({{3.0, 0.0}, {0.0, 4.0}});
    CHECK(schatten_norm(d, SchattenOrder(1)) == doctest::Approx(7.0));
    CHECK(schatten_norm(d, SchattenOrder(2)) == doctest::Approx(5.0));
    CHECK(schatten_norm(d, SchattenOrder(0.5)) == doctest::Approx(13.928203230275509).epsilon(1e-14));
    CHECK(schatten_norm(Matrix(Matrix::Zero(3, 2)), SchattenOrder(0.25)) == 0.0);
    CHECK(spectral_norm(d) == doctest::Approx(4.0));

    std::mt19937_64 gen(23);
    for (int t = 0; t < 20; ++t) {
        const Matrix a = oracle::random(3, 4, gen);
        CHECK(oracle::close(schatten_norm(a, SchattenOrder(2)), frobenius(a), 1e-12));
        for (double p : {0.5, 1.0, 3.0}) {
            CHECK(oracle::close(schatten_pth_power(a, SchattenOrder(p)), oracle::pth_power(a, p), 1e-10));
        }
    }
}

TEST_CASE("roundoff-negative Gram eigenvalues clamp, real negatives throw") {
    const auto vals = gram_eigenvalues(from_rows({{1.0, 0.0}, {0.0, -1e-15}}));
    CHECK(vals[1] == 0.0);
    CHECK_THROWS_AS(gram_eigenvalues(from_rows({{1.0, 0.0}, {0.0, -1e-3}})), NumericalConsistencyError);
}
