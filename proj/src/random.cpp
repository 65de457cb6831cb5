#include "mubkit/random.hpp"

#include <cmath>
#include <numbers>

namespace mubkit {

double uniform_phase(std::mt19937_64& rng) {
    return 2.0 * std::numbers::pi * uniform01(rng);
}

Complex random_unimodular(std::mt19937_64& rng) {
    return std::polar(1.0, uniform_phase(rng));
}

Complex random_gaussian(std::mt19937_64& rng) {
    double u1 = uniform01(rng);
    while (u1 == 0.0) u1 = uniform01(rng);
    const double u2 = uniform01(rng);
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    return Complex(radius * std::cos(angle), radius * std::sin(angle));
}

ComplexMatrix random_unitary(std::size_t n, std::mt19937_64& rng) {
    ComplexMatrix g(n, n);
    for (auto& e : g.entries) e = random_gaussian(rng);

    // Modified Gram-Schmidt over columns.
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < j; ++k) {
            Complex proj(0.0, 0.0);
            for (std::size_t i = 0; i < n; ++i) proj += std::conj(g(i, k)) * g(i, j);
            for (std::size_t i = 0; i < n; ++i) g(i, j) -= proj * g(i, k);
        }
        double norm = 0.0;
        for (std::size_t i = 0; i < n; ++i) norm += std::norm(g(i, j));
        norm = std::sqrt(norm);
        if (norm == 0.0) return random_unitary(n, rng);  // measure-zero degenerate draw
        for (std::size_t i = 0; i < n; ++i) g(i, j) /= norm;
    }
    return g;
}

ComplexMatrix random_permutation(std::size_t n, std::mt19937_64& rng) {
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    for (std::size_t i = n; i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(rng() % i);
        std::swap(perm[i - 1], perm[j]);
    }
    ComplexMatrix p(n, n);
    for (std::size_t i = 0; i < n; ++i) p(i, perm[i]) = Complex(1.0, 0.0);
    return p;
}

ComplexMatrix random_complex_permutation(std::size_t n, std::mt19937_64& rng) {
    ComplexMatrix p = random_permutation(n, rng);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (p(i, j) != Complex(0.0, 0.0)) p(i, j) = random_unimodular(rng);
    return p;
}

ComplexMatrix random_diagonal_unitary(std::size_t n, std::mt19937_64& rng) {
    ComplexMatrix d(n, n);
    for (std::size_t i = 0; i < n; ++i) d(i, i) = random_unimodular(rng);
    return d;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    // splitmix64 step over the combined word
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace mubkit
