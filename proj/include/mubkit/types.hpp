#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace mubkit {

using Complex = std::complex<double>;

/// Dense rectangular complex matrix, row-major storage.
/// The universal carrier for Hadamard matrices, unitaries and states.
struct ComplexMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<Complex> entries;  // rows * cols, row-major

    ComplexMatrix() = default;

    ComplexMatrix(std::size_t r, std::size_t c)
        : rows(r), cols(c), entries(r * c, Complex(0.0, 0.0)) {}

    ComplexMatrix(std::size_t r, std::size_t c, std::vector<Complex> data)
        : rows(r), cols(c), entries(std::move(data)) {
        if (entries.size() != rows * cols) {
            throw std::invalid_argument("ComplexMatrix: entry count " +
                                        std::to_string(entries.size()) +
                                        " does not match " + std::to_string(rows) +
                                        "x" + std::to_string(cols));
        }
    }

    static ComplexMatrix identity(std::size_t n) {
        ComplexMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = Complex(1.0, 0.0);
        return m;
    }

    Complex& operator()(std::size_t i, std::size_t j) { return entries[i * cols + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return entries[i * cols + j]; }

    bool is_square() const { return rows == cols; }
    std::size_t order() const {
        if (!is_square()) throw std::logic_error("order(): matrix is not square");
        return rows;
    }

    bool all_finite() const {
        for (const auto& e : entries) {
            if (!std::isfinite(e.real()) || !std::isfinite(e.imag())) return false;
        }
        return true;
    }

    void ensure_finite(const char* context) const {
        if (!all_finite()) {
            throw std::invalid_argument(std::string(context) + ": matrix has non-finite entries");
        }
    }

    bool operator==(const ComplexMatrix& o) const = default;
};

using ComplexVector = std::vector<Complex>;

/// Bipartite factorisation tag (d_A x d_B) governing Kronecker structure,
/// partial transpose and realignment. Default 2x3.
struct BipartiteShape {
    std::size_t d_A = 2;
    std::size_t d_B = 3;

    std::size_t dim() const { return d_A * d_B; }

    void validate() const {
        if (d_A < 2 || d_B < 2) {
            throw std::invalid_argument("BipartiteShape: both factors must be >= 2");
        }
    }
};

/// Tolerance bundle. structural_tol drives unitarity/orthogonality/rank
/// decisions, search_tol iterative-search residuals, dedup_tol vector
/// clustering.
struct Tolerances {
    double structural_tol = 1e-10;
    double search_tol = 1e-8;
    double dedup_tol = 1e-6;

    void validate() const {
        for (double t : {structural_tol, search_tol, dedup_tol}) {
            if (!(t > 0.0) || t > 1e-2) {
                throw std::invalid_argument("Tolerances: values must lie in (0, 1e-2]");
            }
        }
    }
};

/// Iterative routine failed to reach its target residual within budget.
/// Carries the best residual seen so callers can inspect how close it got.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double best_residual)
        : std::runtime_error(what), best_residual_(best_residual) {}
    double best_residual() const { return best_residual_; }

private:
    double best_residual_;
};

}  // namespace mubkit
