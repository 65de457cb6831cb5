#pragma once

#include <cstdint>
#include <vector>

#include "mubkit/mub.hpp"
#include "mubkit/types.hpp"

namespace mubkit {

/// Distinct dephased unit vectors unbiased to the columns of both the
/// identity and basis_matrix, found by seeded alternating projection.
struct MuVectorSet {
    ComplexMatrix basis_matrix;
    std::vector<ComplexVector> vectors;   // dephased, unit norm, pairwise distinct
    std::vector<double> residuals;        // per vector: max | |overlap| * sqrt(d) - 1 |
    std::size_t trials_run = 0;
    std::uint64_t seed = 0;
    std::size_t discarded_trials = 0;     // zero overlap during phase extraction
    std::size_t nonconverged_trials = 0;  // converged iterate failed the residual check
    std::size_t near_duplicate_pairs = 0; // distances in [dedup_tol, 10*dedup_tol), kept
    bool capped = false;                  // reporting cap reached; count is a floor
};

/// Maximum number of distinct vectors a set reports before flagging `capped`;
/// degenerate inputs (block-diagonal unitaries) have infinitely many.
inline constexpr std::size_t kMuVectorReportCap = 4096;

/// Run `trials` seeded starts of the alternating map v <- P_I(P_U(v)), where
/// P_B replaces each overlap with basis B by a unimodular/sqrt(d) value of
/// the same phase. Trial 0 starts from the Sinkhorn-extracted vector, so the
/// result is nonempty whenever that extraction converges. Deterministic for
/// fixed (u, trials, seed, tol).
MuVectorSet find_mu_vectors(const ComplexMatrix& u, std::size_t trials, std::uint64_t seed,
                            const Tolerances& tol = {});

/// Smallest |<v,w>| over distinct pairs; requires at least two vectors.
double pairwise_min_overlap(const MuVectorSet& s);

/// Residual of a single vector against both bases.
double mu_vector_residual(const ComplexMatrix& u, const ComplexVector& v);

/// Transform a solution set into one for q1 * u * q2 via the induced
/// bijection (permute and re-phase components, then re-dephase). Every output
/// re-verifies against the moved basis.
MuVectorSet map_solutions(const MuVectorSet& s, const ComplexMatrix& q1, const ComplexMatrix& q2,
                          const Tolerances& tol = {});

/// Entrywise conjugation: solutions for u become solutions for conj(u).
MuVectorSet conjugate_solutions(const MuVectorSet& s, const Tolerances& tol = {});

}  // namespace mubkit
