#include "mubkit/mub.hpp"

#include <algorithm>
#include <cmath>

namespace mubkit {

bool is_unitary(const ComplexMatrix& u, const Tolerances& tol) {
    tol.validate();
    if (!u.is_square()) return false;
    const ComplexMatrix gram = multiply(dagger(u), u);
    return max_abs_diff(gram, ComplexMatrix::identity(u.rows)) < tol.structural_tol;
}

bool is_chm(const ComplexMatrix& u, const Tolerances& tol) {
    if (!u.is_square() || u.rows == 0) return false;
    const double target = 1.0 / std::sqrt(static_cast<double>(u.rows));
    for (const auto& e : u.entries) {
        if (std::abs(std::abs(e) - target) >= tol.structural_tol) return false;
    }
    return is_unitary(u, tol);
}

bool is_complex_permutation(const ComplexMatrix& m, const Tolerances& tol) {
    tol.validate();
    if (!m.is_square()) return false;
    const std::size_t n = m.rows;
    std::vector<int> col_hits(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t hits = 0;
        for (std::size_t j = 0; j < n; ++j) {
            const double mag = std::abs(m(i, j));
            if (mag < tol.structural_tol) continue;
            if (std::abs(mag - 1.0) >= tol.structural_tol) return false;
            ++hits;
            ++col_hits[j];
        }
        if (hits != 1) return false;
    }
    return std::all_of(col_hits.begin(), col_hits.end(), [](int c) { return c == 1; });
}

bool are_unbiased(const ComplexMatrix& b1, const ComplexMatrix& b2, const Tolerances& tol) {
    if (!b1.is_square() || !b2.is_square() || b1.rows != b2.rows) {
        throw std::invalid_argument("are_unbiased: bases must be square and of equal order");
    }
    return is_chm(multiply(dagger(b1), b2), tol);
}

bool is_mub_trio(const ComplexMatrix& u, const ComplexMatrix& v, const ComplexMatrix& w,
                 const Tolerances& tol) {
    for (const auto* m : {&u, &v, &w}) {
        if (!is_chm(*m, tol)) {
            throw std::invalid_argument("is_mub_trio: inputs must be complex Hadamard matrices");
        }
    }
    return is_chm(multiply(dagger(u), v), tol) && is_chm(multiply(dagger(v), w), tol) &&
           is_chm(multiply(dagger(w), u), tol);
}

std::pair<ComplexMatrix, EquivalenceMove> dephase_matrix(const ComplexMatrix& u) {
    if (!u.is_square() || u.rows == 0) {
        throw std::invalid_argument("dephase_matrix: matrix must be square");
    }
    const std::size_t n = u.rows;

    ComplexMatrix left(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const Complex e = u(i, 0);
        const double mag = std::abs(e);
        if (mag == 0.0) {
            throw std::invalid_argument("dephase_matrix: zero entry in first column (input is not Hadamard)");
        }
        left(i, i) = std::conj(e) / mag;
    }
    const ComplexMatrix lu = multiply(left, u);

    ComplexMatrix right(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        const Complex e = lu(0, j);
        const double mag = std::abs(e);
        if (mag == 0.0) {
            throw std::invalid_argument("dephase_matrix: zero entry in first row (input is not Hadamard)");
        }
        right(j, j) = std::conj(e) / mag;
    }
    return {multiply(lu, right), EquivalenceMove{std::move(left), std::move(right)}};
}

ComplexVector dephase_vector(const ComplexVector& v) {
    for (std::size_t first = 0; first < v.size(); ++first) {
        const Complex e = v[first];
        const double mag = std::abs(e);
        if (mag == 0.0) continue;
        if (e.imag() == 0.0 && e.real() > 0.0) return v;  // already dephased
        const Complex phase = std::conj(e) / mag;
        ComplexVector r = v;
        for (auto& x : r) x *= phase;
        r[first] = Complex(mag, 0.0);  // exact, so dephasing is idempotent
        return r;
    }
    return v;  // zero vector
}

ComplexMatrix apply_equivalence(const ComplexMatrix& u, const EquivalenceMove& move,
                                const Tolerances& tol) {
    if (!is_complex_permutation(move.left, tol) || !is_complex_permutation(move.right, tol)) {
        throw std::invalid_argument("apply_equivalence: move factors must be complex permutation matrices");
    }
    return multiply(multiply(move.left, u), move.right);
}

ProductColumnReport product_columns(const ComplexMatrix& u, const BipartiteShape& shape,
                                    const Tolerances& tol) {
    shape.validate();
    tol.validate();
    if (!u.is_square() || u.rows != shape.dim()) {
        throw std::invalid_argument("product_columns: matrix order does not match shape");
    }
    const std::size_t dA = shape.d_A, dB = shape.d_B;

    ProductColumnReport report;
    report.shape = shape;
    for (std::size_t col = 0; col < u.cols; ++col) {
        ComplexMatrix reshaped(dA, dB);
        for (std::size_t a = 0; a < dA; ++a)
            for (std::size_t b = 0; b < dB; ++b) reshaped(a, b) = u(a * dB + b, col);
        if (numeric_rank(reshaped, tol) != 1) continue;

        // reshaped ~ sigma * x * y^H; column = kron(left, right) with
        // left = sqrt(sigma) x and right = sqrt(sigma) conj(y).
        const SvdResult dec = svd(reshaped);
        const double root = std::sqrt(dec.singular_values.front());
        ProductColumn pc;
        pc.index = col;
        pc.left_factor.resize(dA);
        pc.right_factor.resize(dB);
        for (std::size_t a = 0; a < dA; ++a) pc.left_factor[a] = dec.u(a, 0) * root;
        for (std::size_t b = 0; b < dB; ++b) pc.right_factor[b] = std::conj(dec.v(b, 0)) * root;

        double residual = 0.0;
        for (std::size_t a = 0; a < dA; ++a)
            for (std::size_t b = 0; b < dB; ++b)
                residual = std::max(residual, std::abs(u(a * dB + b, col) -
                                                       pc.left_factor[a] * pc.right_factor[b]));
        pc.residual = residual;
        report.columns.push_back(std::move(pc));
    }
    return report;
}

std::vector<std::pair<std::size_t, std::size_t>> same_left_factor_pairs(
    const ProductColumnReport& report, const Tolerances& tol) {
    tol.validate();
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < report.columns.size(); ++i) {
        for (std::size_t j = i + 1; j < report.columns.size(); ++j) {
            const auto& a = report.columns[i].left_factor;
            const auto& b = report.columns[j].left_factor;
            const double na = vector_norm(a), nb = vector_norm(b);
            if (na == 0.0 || nb == 0.0) continue;
            const double overlap = std::abs(inner_product(a, b)) / (na * nb);
            if (overlap > 1.0 - tol.structural_tol) {
                pairs.emplace_back(report.columns[i].index, report.columns[j].index);
            }
        }
    }
    return pairs;
}

}  // namespace mubkit
