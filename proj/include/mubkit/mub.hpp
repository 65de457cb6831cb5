#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "mubkit/linalg.hpp"
#include "mubkit/types.hpp"

namespace mubkit {

/// Two-sided multiplication by complex permutation matrices; the equivalence
/// relation on Hadamard matrices.
struct EquivalenceMove {
    ComplexMatrix left;
    ComplexMatrix right;

    static EquivalenceMove identity(std::size_t n) {
        return {ComplexMatrix::identity(n), ComplexMatrix::identity(n)};
    }
};

/// Parallel-column factorisation found by product_columns.
struct ProductColumn {
    std::size_t index = 0;
    ComplexVector left_factor;   // length d_A
    ComplexVector right_factor;  // length d_B
    double residual = 0.0;       // max |column - kron(left, right)|
};

struct ProductColumnReport {
    BipartiteShape shape;
    std::vector<ProductColumn> columns;

    std::vector<std::size_t> indices() const {
        std::vector<std::size_t> idx;
        idx.reserve(columns.size());
        for (const auto& c : columns) idx.push_back(c.index);
        return idx;
    }
};

/// ||u^H u - I||_max < structural_tol.
bool is_unitary(const ComplexMatrix& u, const Tolerances& tol = {});

/// Unitary with every entry of modulus 1/sqrt(d) within structural_tol.
bool is_chm(const ComplexMatrix& u, const Tolerances& tol = {});

/// Exactly one nonzero entry per row and column, each of modulus 1.
bool is_complex_permutation(const ComplexMatrix& m, const Tolerances& tol = {});

/// True iff every entry of b1^H b2 has modulus 1/sqrt(d), i.e. is_chm(b1^H b2).
bool are_unbiased(const ComplexMatrix& b1, const ComplexMatrix& b2, const Tolerances& tol = {});

/// True iff u^H v, v^H w and w^H u are all Hadamard. Verifies supplied triples
/// only; it never searches for them.
bool is_mub_trio(const ComplexMatrix& u, const ComplexMatrix& v, const ComplexMatrix& w,
                 const Tolerances& tol = {});

/// Bring a Hadamard matrix to dephased form (first row and column all
/// 1/sqrt(n)) by diagonal phase multiplications; returns the dephased matrix
/// and the realizing move. The left factor is fixed from the first column,
/// then the right factor from the adjusted first row.
std::pair<ComplexMatrix, EquivalenceMove> dephase_matrix(const ComplexMatrix& u);

/// Multiply by the unique phase making the first nonzero element real and
/// positive; the zero vector is returned unchanged.
ComplexVector dephase_vector(const ComplexVector& v);

/// left * u * right after validating both factors are complex permutations.
ComplexMatrix apply_equivalence(const ComplexMatrix& u, const EquivalenceMove& move,
                                const Tolerances& tol = {});

/// Columns whose d_A x d_B reshape has numeric rank one, with the factors
/// recovered from the dominant singular pair.
ProductColumnReport product_columns(const ComplexMatrix& u, const BipartiteShape& shape = {},
                                    const Tolerances& tol = {});

/// Pairs of product columns whose d_A-dimensional left factors are parallel.
std::vector<std::pair<std::size_t, std::size_t>> same_left_factor_pairs(
    const ProductColumnReport& report, const Tolerances& tol = {});

}  // namespace mubkit
