#pragma once

#include <string>
#include <vector>

#include "mubkit/mub.hpp"
#include "mubkit/types.hpp"

namespace mubkit {

enum class Pattern {
    SUBUNITARY_K,
    RANK_ONE_RXC,
    REAL_3X2,
    PHASE_REAL_3X2,
    SINGULAR_3,
    ORTHO_COLUMN_TRIPLE_KX3,
    H2_REDUCIBLE,
    ORTHO_3X2_COLUMNS,
    Y7_SHARED_LEFT_FACTOR,
    Y9_SUBUNITARY_PLUS_SINGULAR,
};

std::string pattern_name(Pattern p);

/// A witnessed structural pattern: the submatrix at (rows, cols) reproduces
/// the pattern's defining test with the stated residual.
struct PatternHit {
    Pattern pattern;
    std::vector<std::size_t> rows;  // strictly increasing
    std::vector<std::size_t> cols;  // strictly increasing
    double residual = 0.0;
};

/// All k x k submatrices M with M^H M within tol of (tr M^H M / k) I.
std::vector<PatternHit> scan_subunitary(const ComplexMatrix& u, std::size_t k,
                                        const Tolerances& tol = {});

/// All r x c submatrices of numeric rank one; (r, c) must be one of
/// (2,2), (2,3), (3,2) — larger rank-one shapes cannot occur in an order-six
/// Hadamard matrix and are rejected.
std::vector<PatternHit> scan_rank_one(const ComplexMatrix& u, std::size_t r, std::size_t c,
                                      const Tolerances& tol = {});

/// All 3 x 3 submatrices with smallest singular value below tol * largest.
std::vector<PatternHit> scan_singular_order3(const ComplexMatrix& u, const Tolerances& tol = {});

/// Literal all-real submatrices covering three rows by two columns, plus the
/// transposed orientation (two rows by three columns); both exclude a matrix
/// from trio membership since transposition preserves it.
std::vector<PatternHit> scan_real_submatrix(const ComplexMatrix& u, const Tolerances& tol = {});

/// 3 x 2 submatrices that row/column phases can make real, detected by the
/// cross-ratio criterion Im(M_ij M_kl / (M_il M_kj)) ~ 0. Entries must be
/// nonzero (guaranteed for Hadamard inputs).
std::vector<PatternHit> scan_phase_real_3x2(const ComplexMatrix& u, const Tolerances& tol = {});

/// k x 3 submatrices (k in 2..4) where one column is orthogonal to both others.
std::vector<PatternHit> scan_ortho_column_triple(const ComplexMatrix& u, std::size_t k,
                                                 const Tolerances& tol = {});

/// Order-2 subunitary submatrices; the defining property of H2-reducibility.
std::vector<PatternHit> detect_h2_reducible(const ComplexMatrix& u, const Tolerances& tol = {});

/// 3 x 2 submatrices with orthogonal columns.
std::vector<PatternHit> detect_ortho_3x2_columns(const ComplexMatrix& u,
                                                 const Tolerances& tol = {});

/// Column pairs carrying both a 2 x 2 subunitary and a 2 x 2 singular
/// submatrix (possibly on different row pairs).
std::vector<PatternHit> detect_y9(const ComplexMatrix& u, const Tolerances& tol = {});

/// Re-extract the witnessed submatrix and re-run the single-submatrix test.
bool verify_hit(const ComplexMatrix& u, const PatternHit& hit, const Tolerances& tol = {});

/// Aggregate admissibility report for membership in a trio of mutually
/// unbiased Hadamard matrices.
struct FilterReport {
    std::size_t product_column_count = 0;
    std::size_t schmidt_rank = 0;
    std::vector<PatternHit> hits;             // exclusion evidence
    std::vector<PatternHit> phase_real_hits;  // informational only
    bool excluded = false;
    std::vector<std::string> reasons;
};

/// Run every exclusion criterion against an order-six Hadamard matrix:
/// the product-column bound, the Schmidt-rank bound, and the structural
/// pattern scans. A hit excludes; a clean report certifies nothing.
FilterReport filter_trio_candidate(const ComplexMatrix& u, const Tolerances& tol = {});

}  // namespace mubkit
