#pragma once

#include <utility>

#include "mubkit/types.hpp"

namespace mubkit {

/// Bipartite state: Hermitian, unit trace, positive semidefinite (within
/// numerical slack). Validated on construction.
struct DensityMatrix {
    ComplexMatrix matrix;
    BipartiteShape shape;

    DensityMatrix(ComplexMatrix m, BipartiteShape s);
};

/// Positive partial transpose test: smallest eigenvalue of the partial
/// transpose, with the PPT verdict at -tol.
std::pair<bool, double> is_ppt(const DensityMatrix& rho, double tol = 1e-10);

/// p |alpha><alpha| + q |beta><beta| + (1-p-q) |gamma><gamma| with p, q >= 0
/// and p + q < 1; vectors must be unit norm in C^6.
DensityMatrix build_lemma_state(const ComplexVector& alpha, const ComplexVector& beta,
                                const ComplexVector& gamma, double p, double q);

/// For 2x3 states a negative partial transpose is exactly entanglement.
bool certify_entangled_2x3(const DensityMatrix& rho, double tol = 1e-10);

}  // namespace mubkit
