#include "mubkit/entanglement.hpp"

#include <cmath>

#include "mubkit/linalg.hpp"

namespace mubkit {

DensityMatrix::DensityMatrix(ComplexMatrix m, BipartiteShape s) : matrix(std::move(m)), shape(s) {
    shape.validate();
    if (!matrix.is_square() || matrix.rows != shape.dim()) {
        throw std::invalid_argument("DensityMatrix: order must equal d_A * d_B");
    }
    matrix.ensure_finite("DensityMatrix");

    double herm = 0.0;
    Complex trace(0.0, 0.0);
    for (std::size_t i = 0; i < matrix.rows; ++i) {
        trace += matrix(i, i);
        for (std::size_t j = 0; j < matrix.cols; ++j) {
            herm = std::max(herm, std::abs(matrix(i, j) - std::conj(matrix(j, i))));
        }
    }
    if (herm > 1e-12) throw std::invalid_argument("DensityMatrix: matrix is not Hermitian");
    if (std::abs(trace - Complex(1.0, 0.0)) > 1e-12) {
        throw std::invalid_argument("DensityMatrix: trace must be one");
    }
    const auto eig = hermitian_eigen(matrix);
    if (eig.eigenvalues.front() < -1e-10) {
        throw std::invalid_argument("DensityMatrix: matrix is not positive semidefinite");
    }
}

std::pair<bool, double> is_ppt(const DensityMatrix& rho, double tol) {
    const ComplexMatrix pt = partial_transpose(rho.matrix, rho.shape);
    const auto eig = hermitian_eigen(pt);
    const double min_eigenvalue = eig.eigenvalues.front();
    return {min_eigenvalue >= -tol, min_eigenvalue};
}

DensityMatrix build_lemma_state(const ComplexVector& alpha, const ComplexVector& beta,
                                const ComplexVector& gamma, double p, double q) {
    if (p < 0.0 || q < 0.0 || p + q >= 1.0) {
        throw std::invalid_argument("build_lemma_state: need p >= 0, q >= 0 and p + q < 1");
    }
    for (const auto* v : {&alpha, &beta, &gamma}) {
        if (v->size() != 6) throw std::invalid_argument("build_lemma_state: vectors must live in C^6");
        if (std::abs(vector_norm(*v) - 1.0) > 1e-10) {
            throw std::invalid_argument("build_lemma_state: vectors must be unit norm");
        }
    }

    ComplexMatrix rho(6, 6);
    const double weights[3] = {p, q, 1.0 - p - q};
    const ComplexVector* states[3] = {&alpha, &beta, &gamma};
    for (int t = 0; t < 3; ++t) {
        const auto& v = *states[t];
        for (std::size_t i = 0; i < 6; ++i)
            for (std::size_t j = 0; j < 6; ++j) rho(i, j) += weights[t] * v[i] * std::conj(v[j]);
    }
    return DensityMatrix(std::move(rho), BipartiteShape{2, 3});
}

bool certify_entangled_2x3(const DensityMatrix& rho, double tol) {
    if (rho.shape.d_A != 2 || rho.shape.d_B != 3) {
        throw std::invalid_argument("certify_entangled_2x3: shape must be 2x3");
    }
    return !is_ppt(rho, tol).first;
}

}  // namespace mubkit
