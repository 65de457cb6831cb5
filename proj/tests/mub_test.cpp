#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "mubkit/catalog.hpp"
#include "mubkit/linalg.hpp"
#include "mubkit/mub.hpp"
#include "test_support.hpp"

using namespace mubkit;
using namespace mubkit::testing;

TEST_CASE("is_chm and is_unitary basics") {
    CHECK(is_chm(fourier6()));
    CHECK_FALSE(is_chm(ComplexMatrix::identity(6)));
    CHECK(is_unitary(ComplexMatrix::identity(6)));
}

TEST_CASE("unbiasedness of the identity against catalog Hadamards") {
    const ComplexMatrix i6 = ComplexMatrix::identity(6);
    CHECK(are_unbiased(i6, fourier6()));
    CHECK(are_unbiased(i6, spectral()));
    CHECK_FALSE(are_unbiased(i6, i6));
}

TEST_CASE("unbiasedness is symmetric") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        const ComplexMatrix a = random_unitary(6, rng);
        const ComplexMatrix b = random_unitary(6, rng);
        CHECK(are_unbiased(a, b) == are_unbiased(b, a));
    }
    CHECK(are_unbiased(fourier6(), spectral()) == are_unbiased(spectral(), fourier6()));
}

TEST_CASE("trio verification rejects the obvious non-trios") {
    CHECK_FALSE(is_mub_trio(fourier6(), fourier6(), fourier6()));
    CHECK_FALSE(is_mub_trio(spectral(), fourier6(), h1()));
    CHECK_THROWS_AS(is_mub_trio(ComplexMatrix::identity(6), fourier6(), spectral()),
                    std::invalid_argument);
}

TEST_CASE("dephasing fixed points") {
    const auto [f_dephased, f_move] = dephase_matrix(fourier6());
    CHECK(f_dephased == fourier6());
    CHECK(max_abs_diff(f_move.left, ComplexMatrix::identity(6)) < 1e-15);
    CHECK(max_abs_diff(f_move.right, ComplexMatrix::identity(6)) < 1e-15);

    const auto [s_dephased, s_move] = dephase_matrix(spectral());
    CHECK(max_abs_diff(s_dephased, spectral()) < 1e-15);
}

TEST_CASE("dephasing inverts diagonal phase moves") {
    std::mt19937_64 rng(13);
    const ComplexMatrix phased =
        multiply(multiply(random_diagonal_unitary(6, rng), fourier6()),
                 random_diagonal_unitary(6, rng));
    const auto [recovered, move] = dephase_matrix(phased);
    CHECK(max_abs_diff(recovered, fourier6()) < 1e-12);
    CHECK(max_abs_diff(apply_equivalence(phased, move), recovered) < 1e-14);
}

TEST_CASE("dephase_matrix rejects a zero first-column entry") {
    CHECK_THROWS_AS(dephase_matrix(ComplexMatrix(6, 6)), std::invalid_argument);
}

TEST_CASE("vector dephasing") {
    const Complex i(0, 1);
    const ComplexVector v{i, i, i};
    const ComplexVector d = dephase_vector(v);
    for (const auto& e : d) CHECK(std::abs(e - Complex(1, 0)) < 1e-15);

    const ComplexVector zero(4, Complex(0, 0));
    CHECK(dephase_vector(zero) == zero);

    const ComplexVector fixed{Complex(0.5, 0), Complex(0.1, 0.3)};
    CHECK(dephase_vector(fixed) == fixed);
    CHECK(dephase_vector(dephase_vector(v)) == dephase_vector(v));
}

TEST_CASE("equivalence moves preserve the Hadamard property") {
    const ComplexMatrix f = fourier6();
    CHECK(apply_equivalence(f, EquivalenceMove::identity(6)) == f);

    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 100; ++trial) {
        const EquivalenceMove move{random_complex_permutation(6, rng),
                                   random_complex_permutation(6, rng)};
        CHECK(is_chm(apply_equivalence(f, move)));
    }

    ComplexMatrix bad(6, 6);  // zero matrix is not a complex permutation
    CHECK_THROWS_AS(apply_equivalence(f, EquivalenceMove{bad, bad}), std::invalid_argument);
}

TEST_CASE("product columns of the Fourier matrix and the Kronecker form") {
    const auto f_report = product_columns(fourier6());
    CHECK(f_report.columns.size() == 6);
    const auto h_report = product_columns(h1());
    CHECK(h_report.columns.size() == 6);

    // Factors reproduce each column within the structural tolerance.
    for (const auto& col : f_report.columns) {
        CHECK(col.residual < 1e-10);
    }
}

TEST_CASE("the rank-three construction has no product columns") {
    const ComplexMatrix u = sr3_example(fourier3());
    const auto report = product_columns(u);
    CHECK(report.columns.size() < 3);

    // Minor-based oracle: no column reshape is rank one.
    for (std::size_t col = 0; col < 6; ++col) {
        ComplexMatrix reshaped(2, 3);
        for (std::size_t a = 0; a < 2; ++a)
            for (std::size_t b = 0; b < 3; ++b) reshaped(a, b) = u(a * 3 + b, col);
        CHECK_FALSE(rank_one_by_minors(reshaped, 1e-10));
    }
}

TEST_CASE("Fourier columns pair by shared left factor") {
    const auto report = product_columns(fourier6());
    auto pairs = same_left_factor_pairs(report);
    std::sort(pairs.begin(), pairs.end());
    const std::vector<std::pair<std::size_t, std::size_t>> expected{
        {0, 2}, {0, 4}, {1, 3}, {1, 5}, {2, 4}, {3, 5}};
    CHECK(pairs == expected);

    CHECK(same_left_factor_pairs(ProductColumnReport{}).empty());
}

TEST_CASE("identical synthetic columns share a left factor") {
    // Non-unitary by construction; product_columns only reshapes columns.
    ComplexMatrix m(6, 6);
    const ComplexVector col{Complex(0.5, 0), Complex(0.5, 0), Complex(0, 0.5),
                            Complex(0.5, 0), Complex(0.5, 0), Complex(0, 0.5)};
    for (std::size_t i = 0; i < 6; ++i) {
        m(i, 0) = col[i];
        m(i, 1) = col[i];
    }
    const auto report = product_columns(m);
    const auto pairs = same_left_factor_pairs(report);
    CHECK(std::find(pairs.begin(), pairs.end(), std::pair<std::size_t, std::size_t>{0, 1}) !=
          pairs.end());
}

TEST_CASE("product column count is invariant under local moves") {
    std::mt19937_64 rng(53);
    for (const auto& u : {fourier6(), h1(), sr3_example(fourier3()), spectral()}) {
        const std::size_t base = product_columns(u).columns.size();
        for (int trial = 0; trial < 10; ++trial) {
            const ComplexMatrix left =
                kron(random_complex_permutation(2, rng), random_complex_permutation(3, rng));
            const ComplexMatrix moved =
                multiply(multiply(left, u), random_diagonal_unitary(6, rng));
            CHECK(product_columns(moved).columns.size() == base);
        }
    }
}

TEST_CASE("a vector unbiased to five basis columns is unbiased to the sixth") {
    std::mt19937_64 rng(59);
    const double target = 1.0 / std::sqrt(6.0);
    for (int trial = 0; trial < 50; ++trial) {
        const ComplexMatrix b = random_unitary(6, rng);
        // Coefficients with flat modulus on the first five columns; the sixth
        // coefficient is forced by normalisation.
        ComplexVector coeff(6);
        for (std::size_t i = 0; i < 5; ++i) coeff[i] = std::polar(target, uniform_phase(rng));
        coeff[5] = std::polar(std::sqrt(1.0 - 5.0 / 6.0), uniform_phase(rng));
        const ComplexVector v = matvec(b, coeff);

        ComplexVector col(6);
        for (std::size_t i = 0; i < 6; ++i) col[i] = b(i, 5);
        CHECK(std::abs(std::abs(inner_product(col, v)) - target) < 10.0 * 1e-10);
    }
}

TEST_CASE("five product columns force a product sixth column") {
    std::mt19937_64 rng(61);
    for (int trial = 0; trial < 20; ++trial) {
        const ComplexMatrix basis = kron(random_unitary(2, rng), random_unitary(3, rng));
        // Rebuild column 5 from the orthogonal complement of the first five.
        ComplexVector v(6);
        for (auto& e : v) e = random_gaussian(rng);
        for (std::size_t k = 0; k < 5; ++k) {
            ComplexVector col(6);
            for (std::size_t i = 0; i < 6; ++i) col[i] = basis(i, k);
            const Complex proj = inner_product(col, v);
            for (std::size_t i = 0; i < 6; ++i) v[i] -= proj * col[i];
        }
        const double norm = vector_norm(v);
        REQUIRE(norm > 1e-8);
        for (auto& e : v) e /= norm;

        ComplexMatrix reshaped(2, 3);
        for (std::size_t a = 0; a < 2; ++a)
            for (std::size_t b = 0; b < 3; ++b) reshaped(a, b) = v[a * 3 + b];
        CHECK(numeric_rank(reshaped) == 1);
        CHECK(rank_one_by_minors(reshaped, 1e-8));
    }
}

TEST_CASE("complex permutation recognition") {
    std::mt19937_64 rng(67);
    CHECK(is_complex_permutation(ComplexMatrix::identity(6)));
    CHECK(is_complex_permutation(random_complex_permutation(6, rng)));
    CHECK_FALSE(is_complex_permutation(fourier6()));
    ComplexMatrix two_hits = ComplexMatrix::identity(6);
    two_hits(0, 1) = Complex(1, 0);
    CHECK_FALSE(is_complex_permutation(two_hits));
    ComplexMatrix wrong_modulus = ComplexMatrix::identity(6);
    wrong_modulus(0, 0) = Complex(0.5, 0);
    CHECK_FALSE(is_complex_permutation(wrong_modulus));
}
