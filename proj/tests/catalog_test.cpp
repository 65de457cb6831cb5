#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "mubkit/catalog.hpp"
#include "mubkit/detectors.hpp"
#include "mubkit/linalg.hpp"
#include "mubkit/mub.hpp"
#include "mubkit/schmidt.hpp"
#include "test_support.hpp"

using namespace mubkit;
using namespace mubkit::testing;

namespace {

// Pull the sixteen parameters out of a matrix already in the block normal
// form (rows and columns paired as (0,1),(2,3),(4,5)).
KarlssonParams extract_karlsson(const ComplexMatrix& m) {
    const double root6 = std::sqrt(6.0);
    KarlssonParams p;
    p.z1 = m(1, 2) * root6;
    p.z2 = m(1, 4) * root6;
    p.z3 = m(2, 1) * root6;
    p.z4 = m(4, 1) * root6;
    p.a1 = m(2, 2) * root6;
    p.a2 = m(2, 3) * root6;
    p.a3 = m(3, 2) / m(2, 2);
    p.b1 = m(2, 4) * root6;
    p.b2 = m(2, 5) * root6;
    p.b3 = m(3, 4) / m(2, 4);
    p.c1 = m(4, 2) * root6;
    p.c2 = m(4, 3) * root6;
    p.c3 = m(5, 2) / m(4, 2);
    p.d1 = m(4, 4) * root6;
    p.d2 = m(4, 5) * root6;
    p.d3 = m(5, 4) / m(4, 4);
    return p;
}

}  // namespace

TEST_CASE("fourier6 is Hadamard with six product columns and a flat first row") {
    const ComplexMatrix f = fourier6();
    CHECK(is_chm(f));
    CHECK(product_columns(f).columns.size() == 6);
    const double v = 1.0 / std::sqrt(6.0);
    for (std::size_t k = 0; k < 6; ++k) {
        CHECK(std::abs(f(0, k) - Complex(v, 0.0)) < 1e-15);
    }
}

TEST_CASE("spectral pair: Hadamard property and Schmidt ranks") {
    CHECK(is_chm(spectral()));
    CHECK(is_chm(spectral_prime()));
    CHECK(schmidt_rank(spectral()) == 4);
    CHECK(schmidt_rank(spectral_prime()) == 3);
}

TEST_CASE("the printed move maps spectral onto spectral_prime") {
    const EquivalenceMove move = spectral_prime_move();
    const ComplexMatrix mapped = apply_equivalence(spectral(), move);
    CHECK(max_abs_diff(mapped, spectral_prime()) < 1e-12);
}

TEST_CASE("catalog constructors are bit-reproducible") {
    CHECK(fourier6() == fourier6());
    CHECK(spectral() == spectral());
    CHECK(spectral_prime() == spectral_prime());
    CHECK(bjorck() == bjorck());
    CHECK(dita() == dita());
}

TEST_CASE("fourier_family members are Hadamard for random unimodular parameters") {
    std::mt19937_64 rng(19);
    for (int i = 0; i < 100; ++i) {
        const ComplexMatrix u = fourier_family(random_unimodular(rng), random_unimodular(rng));
        CHECK(is_chm(u));
    }
    const ComplexMatrix base = fourier_family(Complex(1, 0), Complex(1, 0));
    const double v = 1.0 / std::sqrt(6.0);
    for (std::size_t i = 0; i < 6; ++i) {
        CHECK(std::abs(base(i, 0) - Complex(v, 0.0)) < 1e-15);
    }
    CHECK_THROWS_AS(fourier_family(Complex(2.0, 0.0), Complex(1.0, 0.0)), std::invalid_argument);
}

TEST_CASE("h1 has Schmidt rank one") {
    CHECK(is_chm(h1()));
    CHECK(schmidt_rank(h1()) == 1);
}

TEST_CASE("rank-two form at the corner point with w-proportional v") {
    // v = i w collapses the assembled matrix to a single Kronecker term: the
    // constraints hold but the factors are dependent, so the rank is one.
    H2Params p;
    p.alpha = std::numbers::pi / 4.0;
    p.beta = std::numbers::pi / 4.0;
    p.gamma = 0.0;
    p.w = fourier3();
    p.v = scale(p.w, Complex(0.0, 1.0));
    const H2Result r = h2(p);
    CHECK(r.report.satisfied);
    CHECK_FALSE(r.report.v_w_independent);
    CHECK(is_chm(r.matrix));
    CHECK(schmidt_rank(r.matrix) == 1);
}

TEST_CASE("rank-two form with an independent sign-twisted partner") {
    H2Params p;
    p.alpha = std::numbers::pi / 4.0;
    p.beta = std::numbers::pi / 4.0;
    p.gamma = 0.0;
    p.w = fourier3();
    ComplexMatrix signs(3, 3);
    signs(0, 0) = Complex(1, 0);
    signs(1, 1) = Complex(1, 0);
    signs(2, 2) = Complex(-1, 0);
    p.v = scale(multiply(p.w, signs), Complex(0.0, 1.0));
    const H2Result r = h2(p);
    CHECK(r.report.satisfied);
    CHECK(r.report.v_w_independent);
    CHECK(is_chm(r.matrix));
    CHECK(schmidt_rank(r.matrix) == 2);
}

TEST_CASE("rank-two form reports violated constraints without throwing") {
    H2Params p;
    p.alpha = std::numbers::pi / 4.0;
    p.beta = std::numbers::pi / 4.0;
    p.gamma = 0.0;
    p.v = ComplexMatrix::identity(3);
    p.w = fourier3();
    const H2Result r = h2(p);
    CHECK_FALSE(r.report.satisfied);
    CHECK(r.report.modulus_sum > 1e-2);
    CHECK(is_unitary(r.matrix));
    CHECK_FALSE(is_chm(r.matrix));
}

TEST_CASE("rank-two form rejects out-of-range angles") {
    H2Params p;
    p.alpha = 0.1;
    p.beta = 0.05;  // alpha + beta < pi/4
    p.v = fourier3();
    p.w = fourier3_alt();
    CHECK_THROWS_AS(h2(p), std::invalid_argument);
    p.alpha = 1.0;  // > pi/4
    p.beta = std::numbers::pi / 4.0;
    CHECK_THROWS_AS(h2(p), std::invalid_argument);
}

TEST_CASE("rank-three form with zero mixing angles is block diagonal") {
    H3Params p;
    p.alpha = {0.0, 0.0, 0.0};
    p.beta = {0.3, 1.1, 2.5};
    p.gamma = {0.7, 0.2, 4.0};
    p.v = fourier3();
    p.w = fourier3();  // first column already real nonnegative
    const ComplexMatrix u = h3(p);
    CHECK(is_unitary(u));
    CHECK(schmidt_rank(u) <= 3);
    const std::vector<std::size_t> lo{0, 1, 2}, hi{3, 4, 5};
    CHECK(norm_max(submatrix(u, lo, hi)) < 1e-14);
    CHECK(norm_max(submatrix(u, hi, lo)) < 1e-14);
    CHECK_FALSE(scan_singular_order3(u).empty());
}

TEST_CASE("rank-three form enforces the real first column of w") {
    H3Params p;
    p.alpha = {0.4, 0.4, 0.4};
    p.v = fourier3();
    ComplexMatrix bad = fourier3();
    for (std::size_t i = 0; i < 3; ++i) bad(i, 0) *= Complex(0.0, 1.0);
    p.w = bad;
    CHECK_THROWS_AS(h3(p), std::invalid_argument);
}

TEST_CASE("sr3_example builds a rank-three Hadamard from any order-3 core") {
    const ComplexMatrix u = sr3_example(fourier3());
    CHECK(is_chm(u));
    CHECK(schmidt_rank(u) == 3);

    // First block row is [diag(-i,i,1) V, V] / sqrt(2) entrywise.
    const double s = 1.0 / std::sqrt(2.0);
    const Complex d1[3] = {Complex(0, -1), Complex(0, 1), Complex(1, 0)};
    const ComplexMatrix v = fourier3();
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            CHECK(std::abs(u(i, j) - s * d1[i] * v(i, j)) < 1e-15);
            CHECK(std::abs(u(i, j + 3) - s * v(i, j)) < 1e-15);
        }

    // Random dephased core built from the standard one.
    std::mt19937_64 rng(5);
    const ComplexMatrix core =
        multiply(multiply(random_diagonal_unitary(3, rng), fourier3_alt()),
                 random_diagonal_unitary(3, rng));
    CHECK(is_unitary(sr3_example(core)));

    CHECK_THROWS_AS(sr3_example(ComplexMatrix::identity(3)), std::invalid_argument);
}

TEST_CASE("sr4_example yields Schmidt rank four and names its precondition failures") {
    ComplexMatrix d(3, 3);
    d(0, 0) = Complex(1, 0);
    d(1, 1) = omega();
    d(2, 2) = omega() * omega();
    const ComplexMatrix u = sr4_example(d, fourier3(), fourier3_alt());
    CHECK(is_chm(u));
    CHECK(schmidt_rank(u) == 4);

    // Independent rank oracle: eigenvalues of R R^H by characteristic
    // polynomial root finding.
    const ComplexMatrix r = realign(u);
    const auto evals = charpoly_eigenvalues(multiply(r, dagger(r)));
    std::size_t positive = 0;
    for (double e : evals) {
        if (e > 1e-8) ++positive;
    }
    CHECK(positive == 4);

    CHECK_THROWS_WITH_AS(sr4_example(ComplexMatrix::identity(3), fourier3(), fourier3_alt()),
                         "sr4_example: d-proportional-to-identity", std::invalid_argument);
    CHECK_THROWS_WITH_AS(sr4_example(d, fourier3(), fourier3()),
                         "sr4_example: v-w-dependent", std::invalid_argument);
    // w = D' v keeps w a Hadamard matrix but makes w v^H diagonal.
    ComplexMatrix phases(3, 3);
    phases(0, 0) = Complex(0, 1);
    phases(1, 1) = Complex(-1, 0);
    phases(2, 2) = Complex(0, -1);
    CHECK_THROWS_WITH_AS(sr4_example(d, fourier3(), multiply(phases, fourier3())),
                         "sr4_example: wv-dagger-diagonal", std::invalid_argument);
}

TEST_CASE("bjorck blocks are not subunitary and the matrix has rank two") {
    const ComplexMatrix b = bjorck();
    CHECK(is_chm(b));
    CHECK(schmidt_rank(b) == 2);
    CHECK(scan_subunitary(b, 3).empty());
}

TEST_CASE("dita is Hadamard and hides a real submatrix behind one row phase") {
    const ComplexMatrix d0 = dita();
    CHECK(is_chm(d0));
    CHECK(schmidt_rank(d0) == 4);

    bool found = false;
    for (std::size_t r = 0; r < 6 && !found; ++r) {
        ComplexMatrix phased = d0;
        for (std::size_t j = 0; j < 6; ++j) phased(r, j) *= Complex(0, 1);
        found = !scan_real_submatrix(phased).empty();
    }
    CHECK(found);
}

TEST_CASE("every catalog Hadamard passes is_chm") {
    for (const auto& u : catalog_hadamards()) CHECK(is_chm(u));
}

TEST_CASE("karlsson constraints hold for a Fourier-family member in the block frame") {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 10; ++trial) {
        const ComplexMatrix f = fourier_family(random_unimodular(rng), Complex(1.0, 0.0));
        CHECK_FALSE(detect_h2_reducible(f).empty());

        // Reorder columns so the sign pattern of row 1 pairs as (+,-) per block.
        const ComplexMatrix framed = submatrix(f, {0, 1, 2, 3, 4, 5}, {0, 5, 2, 3, 4, 1});
        const KarlssonParams params = extract_karlsson(framed);
        const KarlssonReport report = karlsson_validate(params);
        for (double r : report.residuals) CHECK(r < 1e-8);
        CHECK(report.satisfied);
        CHECK(report.assembled_is_chm);
        CHECK(max_abs_diff(report.assembled, framed) < 1e-12);
    }
}

TEST_CASE("karlsson all-ones parameters satisfy the product equations but fail unitarity") {
    const KarlssonReport report = karlsson_validate(KarlssonParams{});
    for (std::size_t i = 0; i < 4; ++i) CHECK(report.residuals[i] < 1e-15);
    CHECK_FALSE(report.assembled_is_unitary);
    CHECK_FALSE(report.assembled_is_chm);
}

TEST_CASE("karlsson residual reacts to a phase perturbation") {
    std::mt19937_64 rng(78);
    const ComplexMatrix f = fourier_family(random_unimodular(rng), Complex(1.0, 0.0));
    const ComplexMatrix framed = submatrix(f, {0, 1, 2, 3, 4, 5}, {0, 5, 2, 3, 4, 1});
    KarlssonParams params = extract_karlsson(framed);
    params.a1 *= std::polar(1.0, 0.1);
    const KarlssonReport report = karlsson_validate(params);
    CHECK(report.residuals[0] ==
          doctest::Approx(std::abs(std::polar(1.0, 0.1) - 1.0)).epsilon(1e-6));
    CHECK(report.residuals[0] > 1e-2);
    CHECK_FALSE(report.satisfied);
}

TEST_CASE("karlsson rejects non-unimodular parameters") {
    KarlssonParams params;
    params.z1 = Complex(2.0, 0.0);
    CHECK_THROWS_AS(karlsson_validate(params), std::invalid_argument);
}
