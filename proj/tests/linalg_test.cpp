#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mubkit/catalog.hpp"
#include "mubkit/linalg.hpp"
#include "mubkit/mub.hpp"
#include "test_support.hpp"

using namespace mubkit;
using namespace mubkit::testing;

TEST_CASE("kron identity case") {
    const ComplexMatrix i2 = ComplexMatrix::identity(2);
    const ComplexMatrix i3 = ComplexMatrix::identity(3);
    CHECK(max_abs_diff(kron(i2, i3), ComplexMatrix::identity(6)) == 0.0);
}

TEST_CASE("kron reproduces the rank-one Hadamard product form") {
    const double s2 = 1.0 / std::sqrt(2.0);
    ComplexMatrix h(2, 2, {Complex(s2, 0), Complex(s2, 0), Complex(s2, 0), Complex(-s2, 0)});
    CHECK(max_abs_diff(kron(h, fourier3()), h1()) < 1e-15);
}

TEST_CASE("kron dimension law and associativity") {
    std::mt19937_64 rng(7);
    const ComplexMatrix a = random_unitary(2, rng);
    const ComplexMatrix b = random_unitary(3, rng);
    const ComplexMatrix c = random_unitary(2, rng);
    CHECK(kron(a, b).rows == a.rows * b.rows);
    CHECK(kron(a, b).cols == a.cols * b.cols);
    CHECK(max_abs_diff(kron(kron(a, b), c), kron(a, kron(b, c))) < 1e-15);
}

TEST_CASE("singular values of the identity and a diagonal matrix") {
    const auto sv6 = singular_values(ComplexMatrix::identity(6));
    for (double s : sv6) CHECK(s == doctest::Approx(1.0).epsilon(1e-14));

    ComplexMatrix d(2, 2);
    d(0, 0) = Complex(2.0, 0.0);
    d(1, 1) = Complex(1.0, 0.0);
    const auto sv = singular_values(d);
    CHECK(sv[0] == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(sv[1] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("svd reconstructs random rectangular matrices") {
    std::mt19937_64 rng(11);
    for (const auto [r, c] : {std::pair<std::size_t, std::size_t>{4, 9},
                              {9, 4},
                              {6, 6},
                              {3, 5}}) {
        ComplexMatrix a(r, c);
        for (auto& e : a.entries) e = random_gaussian(rng);
        const SvdResult dec = svd(a);
        ComplexMatrix rebuilt(r, c);
        for (std::size_t t = 0; t < dec.singular_values.size(); ++t) {
            for (std::size_t i = 0; i < r; ++i)
                for (std::size_t j = 0; j < c; ++j)
                    rebuilt(i, j) += dec.singular_values[t] * dec.u(i, t) * std::conj(dec.v(j, t));
        }
        CHECK(max_abs_diff(a, rebuilt) < 1e-12);
        for (std::size_t t = 1; t < dec.singular_values.size(); ++t) {
            CHECK(dec.singular_values[t - 1] >= dec.singular_values[t]);
        }
    }
}

TEST_CASE("numeric rank basics") {
    CHECK(numeric_rank(ComplexMatrix(3, 3)) == 0);
    CHECK(numeric_rank(ComplexMatrix::identity(6)) == 6);

    const double v = 1.0 / std::sqrt(6.0);
    ComplexMatrix flat(3, 2);
    for (auto& e : flat.entries) e = Complex(v, 0.0);
    CHECK(numeric_rank(flat) == 1);
}

TEST_CASE("realigned spectral matrix has exactly four singular values above threshold") {
    const ComplexMatrix r = [] {
        // inline realignment of the spectral matrix against the 2x3 split
        const ComplexMatrix s = spectral();
        ComplexMatrix out(4, 9);
        for (std::size_t j = 0; j < 2; ++j)
            for (std::size_t k = 0; k < 2; ++k)
                for (std::size_t p = 0; p < 3; ++p)
                    for (std::size_t q = 0; q < 3; ++q)
                        out(j * 2 + k, p * 3 + q) = s(j * 3 + p, k * 3 + q);
        return out;
    }();

    const auto sv = singular_values(r);
    REQUIRE(sv.size() == 4);
    std::size_t above = 0;
    for (double s : sv) {
        if (s > 1e-10) ++above;
    }
    CHECK(above == 4);

    // Independent cross-check: eigenvalues of R R^H from the characteristic
    // polynomial of the 4x4 Gram matrix.
    const auto gram_evals = charpoly_eigenvalues(multiply(r, dagger(r)));
    REQUIRE(gram_evals.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(std::sqrt(std::max(gram_evals[i], 0.0)) ==
              doctest::Approx(sv[3 - i]).epsilon(1e-8));
        CHECK(gram_evals[i] > 1e-4);
    }
}

TEST_CASE("partial transpose product law and involution") {
    std::mt19937_64 rng(3);
    const ComplexMatrix a = random_unitary(2, rng);
    const ComplexMatrix b = random_unitary(3, rng);
    const ComplexMatrix m = kron(a, b);
    CHECK(max_abs_diff(partial_transpose(m, {}), kron(transpose(a), b)) < 1e-14);

    std::mt19937_64 rng2(5);
    ComplexMatrix g(6, 6);
    for (auto& e : g.entries) e = random_gaussian(rng2);
    CHECK(partial_transpose(partial_transpose(g, {}), {}) == g);

    ComplexMatrix wrong(5, 5);
    CHECK_THROWS_AS(partial_transpose(wrong, BipartiteShape{2, 3}), std::invalid_argument);
}

TEST_CASE("partial transpose of the Bell projector has eigenvalues {1/2,1/2,1/2,-1/2}") {
    // Projector onto (|00> + |11>)/sqrt(2) in the 2x2 split.
    ComplexVector bell = {Complex(1 / std::sqrt(2.0), 0), Complex(0, 0), Complex(0, 0),
                          Complex(1 / std::sqrt(2.0), 0)};
    ComplexMatrix rho(4, 4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) rho(i, j) = bell[i] * std::conj(bell[j]);
    const auto eig = hermitian_eigen(partial_transpose(rho, BipartiteShape{2, 2}));
    CHECK(eig.eigenvalues[0] == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(eig.eigenvalues[1] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(eig.eigenvalues[2] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(eig.eigenvalues[3] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("adjoint contracts") {
    const ComplexMatrix i6 = ComplexMatrix::identity(6);
    CHECK(dagger(i6) == i6);
    const ComplexMatrix s = spectral();
    CHECK(dagger(dagger(s)) == s);
    for (const auto& u : catalog_hadamards()) {
        CHECK(max_abs_diff(multiply(dagger(u), u), i6) < 1e-12);
    }
}

TEST_CASE("singular values are invariant under dagger") {
    std::mt19937_64 rng(23);
    ComplexMatrix a(4, 9);
    for (auto& e : a.entries) e = random_gaussian(rng);
    const auto s1 = singular_values(a);
    const auto s2 = singular_values(dagger(a));
    REQUIRE(s1.size() == s2.size());
    for (std::size_t i = 0; i < s1.size(); ++i) {
        CHECK(s1[i] == doctest::Approx(s2[i]).epsilon(1e-12));
    }
}

TEST_CASE("block rank relation for partitioned order-6 unitaries") {
    std::mt19937_64 rng(101);
    const std::vector<std::size_t> lo{0, 1, 2}, hi{3, 4, 5};
    for (int trial = 0; trial < 200; ++trial) {
        const ComplexMatrix u = random_unitary(6, rng);
        const std::size_t r0 = numeric_rank(submatrix(u, lo, lo));
        const std::size_t r3 = numeric_rank(submatrix(u, hi, hi));
        CHECK((r0 == 3) == (r3 == 3));
        CHECK(r0 + r3 <= 6 - 2 * (3 - r0));
    }
    // Structured singular blocks: permutation matrices make V0 rank-deficient.
    for (int trial = 0; trial < 50; ++trial) {
        const ComplexMatrix p = random_permutation(6, rng);
        const std::size_t r0 = numeric_rank(submatrix(p, lo, lo));
        const std::size_t r3 = numeric_rank(submatrix(p, hi, hi));
        CHECK((r0 == 3) == (r3 == 3));
        CHECK(r0 + r3 <= 6 - 2 * (3 - r0));
    }
}

TEST_CASE("hermitian eigen reconstructs random Hermitian matrices") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 20; ++trial) {
        ComplexMatrix g(6, 6);
        for (auto& e : g.entries) e = random_gaussian(rng);
        const ComplexMatrix h = add(g, dagger(g));
        const auto eig = hermitian_eigen(h);
        ComplexMatrix rebuilt(6, 6);
        for (std::size_t t = 0; t < 6; ++t)
            for (std::size_t i = 0; i < 6; ++i)
                for (std::size_t j = 0; j < 6; ++j)
                    rebuilt(i, j) +=
                        eig.eigenvalues[t] * eig.eigenvectors(i, t) * std::conj(eig.eigenvectors(j, t));
        CHECK(max_abs_diff(h, rebuilt) < 1e-11);

        const auto oracle = charpoly_eigenvalues(h);
        for (std::size_t i = 0; i < 6; ++i) {
            CHECK(eig.eigenvalues[i] == doctest::Approx(oracle[i]).epsilon(1e-7));
        }
    }
}
