#pragma once

#include <cstdint>
#include <random>

#include "mubkit/types.hpp"

namespace mubkit {

/// Uniform double in [0, 1) from the top 53 bits; avoids distribution objects
/// so streams are identical across standard library implementations.
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform phase angle in [0, 2*pi).
double uniform_phase(std::mt19937_64& rng);

/// Unimodular complex number with uniform phase.
Complex random_unimodular(std::mt19937_64& rng);

/// Standard complex Gaussian via Box-Muller.
Complex random_gaussian(std::mt19937_64& rng);

/// Haar-like random unitary: QR of a complex Gaussian matrix via modified
/// Gram-Schmidt with positive-diagonal phase fix.
ComplexMatrix random_unitary(std::size_t n, std::mt19937_64& rng);

/// Random permutation matrix (Fisher-Yates).
ComplexMatrix random_permutation(std::size_t n, std::mt19937_64& rng);

/// Random complex permutation matrix: permutation times unimodular phases.
ComplexMatrix random_complex_permutation(std::size_t n, std::mt19937_64& rng);

/// Random diagonal unitary with uniform phases.
ComplexMatrix random_diagonal_unitary(std::size_t n, std::mt19937_64& rng);

/// Stable per-trial substream seed.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace mubkit
