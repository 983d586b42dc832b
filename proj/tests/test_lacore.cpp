#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "pfaff/errors.hpp"
#include "pfaff/generators.hpp"
#include "pfaff/linalg.hpp"
#include "pfaff/matrix.hpp"
#include "support/oracles.hpp"

using namespace pfaff;
using namespace std::complex_literals;
using pfaff::testing::distance;
using pfaff::testing::relative_error;

TEST_CASE("matrix construction validates shape and finiteness") {
    CHECK_THROWS_AS(ComplexMatrix(0, 3), DimensionError);
    CHECK_THROWS_AS(ComplexMatrix(2, 2, std::vector<Complex>(3)), DimensionError);
    CHECK_THROWS_AS(ComplexMatrix(1, 2, {Complex{1.0, 0.0}, Complex{std::nan(""), 0.0}}), NonFiniteError);
    CHECK_THROWS_AS(ComplexMatrix(1, 1, {Complex{0.0, INFINITY}}), NonFiniteError);

    const ComplexMatrix a{{1.0, 2.0i}, {3.0, 4.0}};
    CHECK(a.rows() == 2);
    CHECK(a(0, 1) == 2.0i);
    CHECK(a.transpose()(1, 0) == 2.0i);
    CHECK(a.adjoint()(1, 0) == -2.0i);
    CHECK(a.frobenius_norm() == doctest::Approx(std::sqrt(30.0)));
}

TEST_CASE("matmul") {
    const ComplexMatrix j{{0.0, 1.0}, {-1.0, 0.0}};
    CHECK(matmul(j, j) == -1.0 * ComplexMatrix::identity(2));

    const ComplexMatrix a = random_ginibre(5, 11);
    CHECK(matmul(ComplexMatrix::identity(5), a) == a);
    CHECK(matmul(a, ComplexMatrix::identity(5)) == a);

    const ComplexMatrix g = random_ginibre(15, 12);
    const ComplexMatrix b(5, 3, std::vector<Complex>(g.entries().begin(), g.entries().begin() + 15));
    CHECK(distance(matmul(a, b), testing::naive_product(a, b)) < 1e-13);
    CHECK_THROWS_AS(matmul(b, a), DimensionError);
    CHECK(distance(matmul_transposed(a, a), matmul(a, a.transpose())) < 1e-13);
}

TEST_CASE("det_lu examples") {
    CHECK(det_lu(ComplexMatrix::identity(6)) == Complex{1.0, 0.0});
    const std::vector<Complex> d{2.0, 3.0i};
    CHECK(relative_error(det_lu(ComplexMatrix::diagonal(d)), 6.0i) < 1e-15);
    const ComplexMatrix a{{0.0, 1.0 + 1.0i}, {1.0 - 1.0i, 0.0}};
    CHECK(relative_error(det_lu(a), -2.0) < 1e-15);
    CHECK_THROWS_AS(det_lu(ComplexMatrix(2, 3)), DimensionError);
}

TEST_CASE("det_lu agrees with the Leibniz formula") {
    for (std::uint64_t s = 0; s < 20; ++s) {
        const ComplexMatrix a = random_ginibre(1 + s % 7, 100 + s);
        CHECK(relative_error(det_lu(a), testing::leibniz_det(a)) < 1e-12);
    }
}

TEST_CASE("det_lu is multiplicative on 16x16") {
    for (std::uint64_t s = 0; s < 10; ++s) {
        const ComplexMatrix a = random_ginibre(16, 200 + s);
        const ComplexMatrix b = random_ginibre(16, 300 + s);
        CHECK(relative_error(det_lu(matmul(a, b)), det_lu(a) * det_lu(b)) < 1e-10);
    }
}

TEST_CASE("inverse") {
    const ComplexMatrix a = random_ginibre(9, 5);
    CHECK(distance(matmul(a, inverse(a)), ComplexMatrix::identity(9)) < 1e-12);
    CHECK_THROWS_AS(inverse(ComplexMatrix(3, 3)), SingularMatrixError);
}

TEST_CASE("qr_householder examples") {
    const auto id = qr_householder(ComplexMatrix::identity(3));
    CHECK(id.q == ComplexMatrix::identity(3));
    CHECK(id.r == ComplexMatrix::identity(3));

    const std::vector<Complex> d{-1.0, 1.0};
    const auto qr = qr_householder(ComplexMatrix::diagonal(d));
    CHECK(std::abs(qr.r(0, 0)) == doctest::Approx(1.0));
    CHECK(std::abs(qr.r(1, 1)) == doctest::Approx(1.0));
    CHECK(distance(matmul(qr.q, qr.r), ComplexMatrix::diagonal(d)) < 1e-15);

    const ComplexMatrix g = random_ginibre(8, 77);
    const auto f = qr_householder(g);
    CHECK(unitarity_residual(f.q) <= 1e-12);
    CHECK(distance(matmul(f.q, f.r), g) <= 1e-9 * g.frobenius_norm());
}

TEST_CASE("qr_householder property: R has exact zeros below the diagonal") {
    for (std::size_t n = 1; n <= 24; n += 3) {
        const ComplexMatrix g = random_ginibre(n, 900 + n);
        const auto f = qr_householder(g);
        CHECK(unitarity_residual(f.q) <= 1e-10 * std::sqrt(static_cast<double>(n)));
        CHECK(distance(matmul(f.q, f.r), g) <= 1e-9 * g.frobenius_norm());
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < i; ++j) {
                CHECK(f.r(i, j) == Complex{0.0, 0.0});
            }
        }
    }
}

TEST_CASE("eig_normal examples") {
    const std::vector<Complex> d{1.0, 2.0i};
    const auto e = eig_normal(ComplexMatrix::diagonal(d));
    REQUIRE(e.values.size() == 2);
    // Each eigenvector is a unit coordinate vector up to phase.
    for (std::size_t k = 0; k < 2; ++k) {
        const std::size_t idx = std::abs(e.values[k] - 1.0) < 1e-12 ? 0 : 1;
        CHECK(std::abs(e.values[k] - d[idx]) < 1e-12);
        CHECK(std::abs(e.vectors(idx, k)) == doctest::Approx(1.0));
    }

    const auto x = eig_normal(ComplexMatrix{{0.0, 1.0}, {1.0, 0.0}});
    std::vector<double> re{x.values[0].real(), x.values[1].real()};
    std::sort(re.begin(), re.end());
    CHECK(re[0] == doctest::Approx(-1.0));
    CHECK(re[1] == doctest::Approx(1.0));

    const Complex p = std::polar(1.0, std::numbers::pi / 3);
    const ComplexMatrix a{{0.0, p}, {std::conj(p), 0.0}};
    const auto l = eig_normal(matmul(a, a.conj()));
    const Complex w = std::polar(1.0, 2 * std::numbers::pi / 3);
    const bool order = std::abs(l.values[0] - w) < 1e-12;
    CHECK(std::abs(l.values[order ? 0 : 1] - w) < 1e-12);
    CHECK(std::abs(l.values[order ? 1 : 0] - std::conj(w)) < 1e-12);
}

TEST_CASE("eig_normal rejects non-normal input") {
    CHECK_THROWS_AS(eig_normal(ComplexMatrix{{1.0, 1.0}, {0.0, 1.0}}), NotNormalError);
}

TEST_CASE("eig_normal contract on 500 random normal matrices") {
    const Tolerances tol;
    for (std::uint64_t s = 0; s < 500; ++s) {
        const std::size_t n = 2 + s % 63;
        const ComplexMatrix v = random_unitary(n, derive_seed(41, s));
        GaussianStream g(derive_seed(42, s));
        std::vector<Complex> d(n);
        for (auto& x : d) {
            x = g.next_complex();
        }
        // Every tenth matrix gets a repeated eigenvalue.
        if (s % 10 == 0) {
            d[n - 1] = d[0];
        }
        const ComplexMatrix m = matmul(matmul(v, ComplexMatrix::diagonal(d)), v.adjoint());
        const auto e = eig_normal(m, tol);
        CHECK(unitarity_residual(e.vectors) <= tol.unitarity_abs(n));
        CHECK(e.residual <= tol.eig_residual * m.frobenius_norm());

        ComplexMatrix mv = matmul(m, e.vectors);
        ComplexMatrix vd = matmul(e.vectors, ComplexMatrix::diagonal(e.values));
        CHECK(distance(mv, vd) <= tol.eig_residual * m.frobenius_norm());
    }
}

TEST_CASE("complex_schur on a general matrix") {
    const ComplexMatrix a = random_ginibre(30, 3);
    const auto s = complex_schur(a);
    CHECK(s.converged);
    CHECK(unitarity_residual(s.z) < 1e-12);
    CHECK(distance(matmul(matmul(s.z, s.t), s.z.adjoint()), a) < 1e-12 * a.frobenius_norm());
    for (std::size_t i = 1; i < 30; ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            CHECK(s.t(i, j) == Complex{0.0, 0.0});
        }
    }
}

TEST_CASE("singular_values") {
    const std::vector<Complex> d{3.0, -4.0i, 0.5};
    const ComplexMatrix u = random_unitary(3, 1);
    const ComplexMatrix w = random_unitary(3, 2);
    auto sv = singular_values(matmul(matmul(u, ComplexMatrix::diagonal(d)), w));
    REQUIRE(sv.size() == 3);
    std::sort(sv.begin(), sv.end());
    CHECK(sv[0] == doctest::Approx(0.5));
    CHECK(sv[1] == doctest::Approx(3.0));
    CHECK(sv[2] == doctest::Approx(4.0));
}

TEST_CASE("kron, direct_sum, trace, swap") {
    const ComplexMatrix a{{1.0, 2.0}, {3.0, 4.0}};
    const ComplexMatrix b{{0.0, 1.0i}, {1.0, 0.0}};
    const ComplexMatrix k = kron(a, b);
    CHECK(k(0, 1) == 1.0i);
    CHECK(k(3, 2) == 4.0);
    CHECK(k(2, 1) == 3.0i);
    const ComplexMatrix s = direct_sum(a, b);
    CHECK(s(1, 1) == 4.0);
    CHECK(s(2, 3) == 1.0i);
    CHECK(s(0, 3) == 0.0);
    CHECK(trace(s) == 5.0);
    ComplexMatrix t = a;
    swap_rows_and_columns(t, 0, 1);
    CHECK(t == ComplexMatrix{{4.0, 3.0}, {2.0, 1.0}});
}

TEST_CASE("tolerances validation") {
    Tolerances t;
    CHECK_NOTHROW(t.validate());
    t.cluster = 1e-12;
    CHECK_THROWS_AS(t.validate(), std::invalid_argument);
    t = Tolerances{};
    t.unitarity = 0.0;
    CHECK_THROWS_AS(t.validate(), std::invalid_argument);
}
