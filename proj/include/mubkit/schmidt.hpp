#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "mubkit/mub.hpp"
#include "mubkit/types.hpp"

namespace mubkit {

/// Operator-Schmidt data of a bipartite matrix u = sum_j kron(A_j, B_j).
struct SchmidtData {
    std::vector<double> singular_values;  // realignment spectrum, descending, length d_A^2
    std::size_t rank = 0;                 // values above structural_tol * max
    std::vector<std::pair<ComplexMatrix, ComplexMatrix>> terms;  // (A_j, B_j)
};

/// d_A^2 x d_B^2 matrix whose row (j,k) is the flattened (j,k) block of u.
/// Its numeric rank is the Schmidt rank of u.
ComplexMatrix realign(const ComplexMatrix& u, const BipartiteShape& shape = {});

std::size_t schmidt_rank(const ComplexMatrix& u, const BipartiteShape& shape = {},
                         const Tolerances& tol = {});

SchmidtData schmidt_decomposition(const ComplexMatrix& u, const BipartiteShape& shape = {},
                                  const Tolerances& tol = {});

/// Q u Q^H for the fixed order-6 permutation that interleaves the two
/// three-element index groups (0,2,4,1,3,5). Sends the Fourier-family
/// standard form to a matrix with equal upper blocks.
ComplexMatrix conjugate_by_Q(const ComplexMatrix& u);

/// The permutation matrix Q used by conjugate_by_Q.
ComplexMatrix fourier_family_Q();

struct MinSchmidtResult {
    std::size_t best_rank = 0;
    EquivalenceMove best_move;
    std::uint64_t evaluations = 0;  // objective evaluations spent
};

/// Heuristic upper bound on the minimum Schmidt rank over the equivalence
/// class of u: fixed analytic candidate moves first, then seeded random
/// permutation pairs with coordinate descent over the two-sided diagonal
/// phases, minimising the (r+1)-th relative singular value of the
/// realignment. Deterministic for a given seed. The result is an upper
/// bound only; no lower-bound certificate is attempted.
MinSchmidtResult min_schmidt_upper_bound(const ComplexMatrix& u, std::uint64_t budget,
                                         std::uint64_t seed, const Tolerances& tol = {},
                                         const BipartiteShape& shape = {});

/// Histogram of schmidt_rank over two-sided random diagonal-unitary
/// multiplications; trial 0 is the identity move. Deterministic per seed.
std::map<std::size_t, std::size_t> random_equivalence_rank_probe(const ComplexMatrix& u,
                                                                 std::size_t trials,
                                                                 std::uint64_t seed,
                                                                 const Tolerances& tol = {},
                                                                 const BipartiteShape& shape = {});

}  // namespace mubkit
