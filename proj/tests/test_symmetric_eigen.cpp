#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "dirspec/symmetric_eigen.hpp"

using namespace dirspec;

namespace {

constexpr double pi = std::numbers::pi_v<double>;

// largest |A v - lambda v| component over all eigenpairs
double residual(const SymMatrix& A, const EigenSystem& sys) {
    double worst = 0.0;
    for (std::size_t j = 0; j < sys.n; ++j) {
        for (std::size_t i = 0; i < sys.n; ++i) {
            double av = 0.0;
            for (std::size_t k = 0; k < sys.n; ++k) {
                av += A.at(i, k) * sys.vector_component(k, j);
            }
            worst = std::max(worst,
                             std::fabs(av - sys.values[j] * sys.vector_component(i, j)));
        }
    }
    return worst;
}

double dot_columns(const EigenSystem& sys, std::size_t j, std::size_t k) {
    double d = 0.0;
    for (std::size_t i = 0; i < sys.n; ++i) {
        d += sys.vector_component(i, j) * sys.vector_component(i, k);
    }
    return d;
}

}  // namespace

TEST_CASE("one by one and two by two") {
    SymMatrix m1 = SymMatrix::zero(1);
    m1.at(0, 0) = -3.5;
    CHECK(symmetric_eigenvalues(m1) == std::vector<double>{-3.5});

    SymMatrix m2 = SymMatrix::zero(2);
    m2.at(0, 0) = 2.0;
    m2.at(0, 1) = 1.0;
    m2.at(1, 0) = 1.0;
    m2.at(1, 1) = 2.0;
    const auto vals = symmetric_eigenvalues(m2);
    REQUIRE(vals.size() == 2);
    CHECK(vals[0] == Catch::Approx(1.0).margin(1e-14));
    CHECK(vals[1] == Catch::Approx(3.0).margin(1e-14));

    const EigenSystem sys = symmetric_eigensystem(m2);
    CHECK(residual(m2, sys) < 1e-14);
    // eigenvector of lambda=1 is (1,-1)/sqrt(2) up to sign
    CHECK(std::fabs(sys.vector_component(0, 0)) == Catch::Approx(1.0 / std::sqrt(2.0)));
    CHECK(sys.vector_component(0, 0) * sys.vector_component(1, 0) < 0.0);
}

TEST_CASE("diagonal matrices come back sorted and exact") {
    SymMatrix m = SymMatrix::zero(5);
    const double diag[5] = {4.0, -1.0, 3.0, 0.0, 2.0};
    for (std::size_t i = 0; i < 5; ++i) m.at(i, i) = diag[i];
    const auto vals = symmetric_eigenvalues(m);
    const std::vector<double> expect = {-1.0, 0.0, 2.0, 3.0, 4.0};
    CHECK(vals == expect);
}

TEST_CASE("tridiagonal toeplitz closed form") {
    // diagonal 2, off-diagonal -1: lambda_k = 2 - 2 cos(k pi / (n+1))
    const std::size_t n = 12;
    SymMatrix m = SymMatrix::zero(n);
    for (std::size_t i = 0; i < n; ++i) {
        m.at(i, i) = 2.0;
        if (i + 1 < n) {
            m.at(i, i + 1) = -1.0;
            m.at(i + 1, i) = -1.0;
        }
    }
    const auto vals = symmetric_eigenvalues(m);
    for (std::size_t k = 1; k <= n; ++k) {
        const double exact = 2.0 - 2.0 * std::cos(k * pi / (n + 1.0));
        CHECK(vals[k - 1] == Catch::Approx(exact).margin(1e-12));
    }

    const EigenSystem sys = symmetric_eigensystem(m);
    CHECK(residual(m, sys) < 1e-12);
    // eigenvector components are sin(i k pi / (n+1)) up to normalization/sign
    const double scale = sys.vector_component(0, 0) / std::sin(pi / (n + 1.0));
    for (std::size_t i = 0; i < n; ++i) {
        CHECK(sys.vector_component(i, 0) ==
              Catch::Approx(scale * std::sin((i + 1) * pi / (n + 1.0))).margin(1e-12));
    }
}

TEST_CASE("dense random symmetric matrix") {
    const std::size_t n = 24;
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    SymMatrix m = SymMatrix::zero(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            const double v = uni(rng);
            m.at(i, j) = v;
            m.at(j, i) = v;
        }
    }
    const EigenSystem sys = symmetric_eigensystem(m);

    SECTION("values ascend and match the values-only path") {
        const auto vals = symmetric_eigenvalues(m);
        REQUIRE(vals.size() == n);
        for (std::size_t i = 0; i + 1 < n; ++i) CHECK(vals[i] <= vals[i + 1]);
        for (std::size_t i = 0; i < n; ++i) CHECK(sys.values[i] == vals[i]);
    }
    SECTION("eigenpair residuals") {
        CHECK(residual(m, sys) < 1e-11);
    }
    SECTION("columns are orthonormal") {
        for (std::size_t j = 0; j < n; ++j) {
            CHECK(dot_columns(sys, j, j) == Catch::Approx(1.0).margin(1e-12));
            for (std::size_t k = j + 1; k < n; ++k) {
                CHECK(std::fabs(dot_columns(sys, j, k)) < 1e-12);
            }
        }
    }
    SECTION("trace is preserved") {
        double tr = 0.0, sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            tr += m.at(i, i);
            sum += sys.values[i];
        }
        CHECK(sum == Catch::Approx(tr).margin(1e-12));
    }
}

TEST_CASE("clustered eigenvalues stay resolved") {
    // two nearly degenerate values via a 2x2 block plus spectators
    SymMatrix m = SymMatrix::zero(4);
    m.at(0, 0) = 1.0;
    m.at(1, 1) = 1.0 + 1e-9;
    m.at(0, 1) = m.at(1, 0) = 1e-10;
    m.at(2, 2) = 5.0;
    m.at(3, 3) = -2.0;
    const EigenSystem sys = symmetric_eigensystem(m);
    CHECK(residual(m, sys) < 1e-13);
    CHECK(sys.values[1] == Catch::Approx(1.0).margin(1e-8));
    CHECK(sys.values[2] == Catch::Approx(1.0 + 1e-9).margin(1e-8));
}

TEST_CASE("asymmetry and shape mismatches are rejected") {
    SymMatrix bad = SymMatrix::zero(2);
    bad.at(0, 1) = 1.0;
    bad.at(1, 0) = 2.0;
    CHECK_THROWS_AS(symmetric_eigenvalues(bad), std::invalid_argument);

    SymMatrix shape;
    shape.n = 3;
    shape.a.assign(4, 0.0);
    CHECK_THROWS_AS(symmetric_eigenvalues(shape), std::invalid_argument);

    CHECK_THROWS_AS(symmetric_eigenvalues(SymMatrix{}), std::invalid_argument);
}
