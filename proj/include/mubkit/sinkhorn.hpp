#pragma once

#include <cstdint>

#include "mubkit/types.hpp"

namespace mubkit {

/// Sinkhorn normal form left * u * right = core with core doubly
/// quasistochastic (all row and column sums one) and both factors diagonal
/// unitary. Neither factor is unique; one representative is returned.
struct SinkhornForm {
    ComplexMatrix left;
    ComplexMatrix right;
    ComplexMatrix core;
    std::size_t iterations = 0;
    std::size_t restarts = 0;
    double residual = 0.0;  // max |row or column sum - 1|
};

/// Every row and column sum within tol of 1.
bool is_doubly_quasistochastic(const ComplexMatrix& m, double tol);

/// Alternate phase alignment of row and column sums until every line sum is
/// within tol of 1. Stagnation triggers a seeded random re-phasing; the form
/// always exists for unitary input, so failure signals an exhausted budget
/// and raises ConvergenceError carrying the best residual.
SinkhornForm sinkhorn_normalize(const ComplexMatrix& u, double tol = 1e-10,
                                std::size_t max_iter = 100000, std::uint64_t seed = 0);

/// The vector unbiased to the columns of both the identity and u, extracted
/// from the Sinkhorn form of u^H: the diagonal of the right factor over
/// sqrt(d), dephased. Every overlap modulus lands within ~10*tol of 1/sqrt(d).
ComplexVector mu_vector_from_sinkhorn(const ComplexMatrix& u, double tol = 1e-10,
                                      std::size_t max_iter = 100000, std::uint64_t seed = 0);

}  // namespace mubkit
