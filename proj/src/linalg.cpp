#include "mubkit/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace mubkit {

namespace {

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
    if (a.rows != b.rows || a.cols != b.cols) {
        throw std::invalid_argument(std::string(op) + ": shape mismatch (" +
                                    std::to_string(a.rows) + "x" + std::to_string(a.cols) +
                                    " vs " + std::to_string(b.rows) + "x" +
                                    std::to_string(b.cols) + ")");
    }
}

}  // namespace

ComplexMatrix conjugate(const ComplexMatrix& a) {
    ComplexMatrix r = a;
    for (auto& e : r.entries) e = std::conj(e);
    return r;
}

ComplexMatrix transpose(const ComplexMatrix& a) {
    ComplexMatrix r(a.cols, a.rows);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j < a.cols; ++j) r(j, i) = a(i, j);
    return r;
}

ComplexMatrix dagger(const ComplexMatrix& a) {
    ComplexMatrix r(a.cols, a.rows);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j < a.cols; ++j) r(j, i) = std::conj(a(i, j));
    return r;
}

ComplexMatrix add(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_shape(a, b, "add");
    ComplexMatrix r = a;
    for (std::size_t i = 0; i < r.entries.size(); ++i) r.entries[i] += b.entries[i];
    return r;
}

ComplexMatrix subtract(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_shape(a, b, "subtract");
    ComplexMatrix r = a;
    for (std::size_t i = 0; i < r.entries.size(); ++i) r.entries[i] -= b.entries[i];
    return r;
}

ComplexMatrix scale(const ComplexMatrix& a, Complex factor) {
    ComplexMatrix r = a;
    for (auto& e : r.entries) e *= factor;
    return r;
}

ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols != b.rows) {
        throw std::invalid_argument("multiply: inner dimension mismatch");
    }
    ComplexMatrix r(a.rows, b.cols);
    for (std::size_t i = 0; i < a.rows; ++i) {
        for (std::size_t k = 0; k < a.cols; ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex(0.0, 0.0)) continue;
            for (std::size_t j = 0; j < b.cols; ++j) r(i, j) += aik * b(k, j);
        }
    }
    return r;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix r(a.rows * b.rows, a.cols * b.cols);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j < a.cols; ++j) {
            const Complex aij = a(i, j);
            for (std::size_t k = 0; k < b.rows; ++k)
                for (std::size_t l = 0; l < b.cols; ++l)
                    r(i * b.rows + k, j * b.cols + l) = aij * b(k, l);
        }
    return r;
}

ComplexVector matvec(const ComplexMatrix& a, const ComplexVector& v) {
    if (a.cols != v.size()) throw std::invalid_argument("matvec: dimension mismatch");
    ComplexVector r(a.rows, Complex(0.0, 0.0));
    for (std::size_t i = 0; i < a.rows; ++i) {
        Complex acc(0.0, 0.0);
        for (std::size_t j = 0; j < a.cols; ++j) acc += a(i, j) * v[j];
        r[i] = acc;
    }
    return r;
}

ComplexVector matvec_dagger(const ComplexMatrix& a, const ComplexVector& v) {
    if (a.rows != v.size()) throw std::invalid_argument("matvec_dagger: dimension mismatch");
    ComplexVector r(a.cols, Complex(0.0, 0.0));
    for (std::size_t i = 0; i < a.rows; ++i) {
        const Complex vi = v[i];
        for (std::size_t j = 0; j < a.cols; ++j) r[j] += std::conj(a(i, j)) * vi;
    }
    return r;
}

double norm_max(const ComplexMatrix& a) {
    double m = 0.0;
    for (const auto& e : a.entries) m = std::max(m, std::abs(e));
    return m;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_shape(a, b, "max_abs_diff");
    double m = 0.0;
    for (std::size_t i = 0; i < a.entries.size(); ++i)
        m = std::max(m, std::abs(a.entries[i] - b.entries[i]));
    return m;
}

double frobenius_norm(const ComplexMatrix& a) {
    double s = 0.0;
    for (const auto& e : a.entries) s += std::norm(e);
    return std::sqrt(s);
}

double vector_norm(const ComplexVector& v) {
    double s = 0.0;
    for (const auto& e : v) s += std::norm(e);
    return std::sqrt(s);
}

Complex inner_product(const ComplexVector& a, const ComplexVector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("inner_product: length mismatch");
    Complex acc(0.0, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
    return acc;
}

double vector_distance(const ComplexVector& a, const ComplexVector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("vector_distance: length mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::norm(a[i] - b[i]);
    return std::sqrt(s);
}

ComplexMatrix submatrix(const ComplexMatrix& a, const std::vector<std::size_t>& row_idx,
                        const std::vector<std::size_t>& col_idx) {
    ComplexMatrix r(row_idx.size(), col_idx.size());
    for (std::size_t i = 0; i < row_idx.size(); ++i) {
        if (row_idx[i] >= a.rows) throw std::invalid_argument("submatrix: row index out of range");
        for (std::size_t j = 0; j < col_idx.size(); ++j) {
            if (col_idx[j] >= a.cols) throw std::invalid_argument("submatrix: column index out of range");
            r(i, j) = a(row_idx[i], col_idx[j]);
        }
    }
    return r;
}

ComplexMatrix partial_transpose(const ComplexMatrix& m, const BipartiteShape& shape) {
    shape.validate();
    if (!m.is_square() || m.rows != shape.dim()) {
        throw std::invalid_argument("partial_transpose: matrix order does not match shape");
    }
    const std::size_t dA = shape.d_A, dB = shape.d_B;
    ComplexMatrix r(m.rows, m.cols);
    for (std::size_t i = 0; i < dA; ++i)
        for (std::size_t j = 0; j < dA; ++j)
            for (std::size_t p = 0; p < dB; ++p)
                for (std::size_t q = 0; q < dB; ++q)
                    r(i * dB + p, j * dB + q) = m(j * dB + p, i * dB + q);
    return r;
}

// ---------------------------------------------------------------------------
// One-sided Jacobi SVD
// ---------------------------------------------------------------------------

namespace {

constexpr int kMaxSweeps = 64;
constexpr double kOrthTol = 1e-15;

// Orthogonalise the columns of b in place, accumulating rotations into v.
// On return the column norms are the singular values and the normalised
// columns are the corresponding left singular vectors.
void one_sided_jacobi(ComplexMatrix& b, ComplexMatrix& v) {
    const std::size_t m = b.rows, n = b.cols;
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        bool converged = true;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                double app = 0.0, aqq = 0.0;
                Complex apq(0.0, 0.0);
                for (std::size_t i = 0; i < m; ++i) {
                    app += std::norm(b(i, p));
                    aqq += std::norm(b(i, q));
                    apq += std::conj(b(i, p)) * b(i, q);
                }
                // A column this far below its partner carries only roundoff;
                // rotating the pair cycles without progress.
                const double big = std::max(app, aqq), small = std::min(app, aqq);
                if (small == 0.0 || small <= big * 1e-32) continue;
                const double off = std::abs(apq);
                if (off <= kOrthTol * std::sqrt(app * aqq)) continue;
                converged = false;

                const Complex phase = apq / off;
                const double tau = (aqq - app) / (2.0 * off);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double cs = 1.0 / std::sqrt(1.0 + t * t);
                const double sn = cs * t;

                const Complex sp = sn * std::conj(phase);  // multiplies column q into p
                const Complex sq = sn * phase;             // multiplies column p into q
                for (std::size_t i = 0; i < m; ++i) {
                    const Complex bp = b(i, p), bq = b(i, q);
                    b(i, p) = cs * bp - sp * bq;
                    b(i, q) = sq * bp + cs * bq;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const Complex vp = v(i, p), vq = v(i, q);
                    v(i, p) = cs * vp - sp * vq;
                    v(i, q) = sq * vp + cs * vq;
                }
            }
        }
        if (converged) return;
    }
    throw ConvergenceError("svd: Jacobi sweeps did not converge", 0.0);
}

}  // namespace

SvdResult svd(const ComplexMatrix& a) {
    if (a.rows == 0 || a.cols == 0) throw std::invalid_argument("svd: empty matrix");

    const bool transposed = a.cols > a.rows;  // orthogonalise the short side
    ComplexMatrix b = transposed ? dagger(a) : a;
    ComplexMatrix v = ComplexMatrix::identity(b.cols);
    one_sided_jacobi(b, v);

    const std::size_t n = b.cols;
    std::vector<double> sigma(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < b.rows; ++i) s += std::norm(b(i, j));
        sigma[j] = std::sqrt(s);
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return sigma[x] > sigma[y]; });

    ComplexMatrix u_sorted(b.rows, n);
    ComplexMatrix v_sorted(v.rows, n);
    std::vector<double> s_sorted(n);
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t src = order[j];
        s_sorted[j] = sigma[src];
        const double inv = sigma[src] > 0.0 ? 1.0 / sigma[src] : 0.0;
        for (std::size_t i = 0; i < b.rows; ++i) u_sorted(i, j) = b(i, src) * inv;
        for (std::size_t i = 0; i < v.rows; ++i) v_sorted(i, j) = v(i, src);
    }

    SvdResult r;
    r.singular_values = std::move(s_sorted);
    if (transposed) {
        // a = (u_b . S . v_b^H)^H = v_b . S . u_b^H
        r.u = std::move(v_sorted);
        r.v = std::move(u_sorted);
    } else {
        r.u = std::move(u_sorted);
        r.v = std::move(v_sorted);
    }
    return r;
}

std::vector<double> singular_values(const ComplexMatrix& a) {
    return svd(a).singular_values;
}

std::size_t numeric_rank(const ComplexMatrix& a, const Tolerances& tol) {
    tol.validate();
    const auto sv = singular_values(a);
    if (sv.empty() || sv.front() == 0.0) return 0;
    const double threshold = tol.structural_tol * sv.front();
    std::size_t rank = 0;
    for (double s : sv) {
        if (s > threshold) ++rank;
    }
    return rank;
}

// ---------------------------------------------------------------------------
// Hermitian Jacobi eigensolver
// ---------------------------------------------------------------------------

HermitianEigenResult hermitian_eigen(const ComplexMatrix& h) {
    if (!h.is_square()) throw std::invalid_argument("hermitian_eigen: matrix must be square");
    const std::size_t n = h.rows;
    ComplexMatrix a = h;
    // Symmetrise up front so tiny Hermiticity violations cannot bias the sweep.
    for (std::size_t i = 0; i < n; ++i) {
        a(i, i) = Complex(a(i, i).real(), 0.0);
        for (std::size_t j = i + 1; j < n; ++j) {
            const Complex avg = 0.5 * (a(i, j) + std::conj(a(j, i)));
            a(i, j) = avg;
            a(j, i) = std::conj(avg);
        }
    }
    ComplexMatrix vecs = ComplexMatrix::identity(n);

    double scale = 0.0;
    for (const auto& e : a.entries) scale = std::max(scale, std::abs(e));
    const double stop = (scale == 0.0) ? 1.0 : scale * 1e-15;

    const auto max_off = [&]() {
        double off = 0.0;
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off = std::max(off, std::abs(a(p, q)));
        return off;
    };

    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        if (max_off() <= stop) break;

        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const Complex apq = a(p, q);
                const double mag = std::abs(apq);
                if (mag <= stop * 1e-2) continue;

                const Complex phase = apq / mag;
                const double tau = (a(q, q).real() - a(p, p).real()) / (2.0 * mag);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double cs = 1.0 / std::sqrt(1.0 + t * t);
                const double sn = cs * t;

                // Columns transform as in the one-sided case; rows follow by
                // the conjugate so that a stays Hermitian.
                const Complex sp = sn * std::conj(phase);
                const Complex sq = sn * phase;
                for (std::size_t i = 0; i < n; ++i) {
                    const Complex aip = a(i, p), aiq = a(i, q);
                    a(i, p) = cs * aip - sp * aiq;
                    a(i, q) = sq * aip + cs * aiq;
                }
                for (std::size_t j = 0; j < n; ++j) {
                    const Complex apj = a(p, j), aqj = a(q, j);
                    a(p, j) = cs * apj - std::conj(sp) * aqj;
                    a(q, j) = std::conj(sq) * apj + cs * aqj;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const Complex vip = vecs(i, p), viq = vecs(i, q);
                    vecs(i, p) = cs * vip - sp * viq;
                    vecs(i, q) = sq * vip + cs * viq;
                }
            }
        }
    }
    if (const double off = max_off(); off > stop) {
        throw ConvergenceError("hermitian_eigen: Jacobi sweeps did not converge", off);
    }

    std::vector<double> evals(n);
    for (std::size_t i = 0; i < n; ++i) evals[i] = a(i, i).real();

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return evals[x] < evals[y]; });

    HermitianEigenResult r;
    r.eigenvalues.resize(n);
    r.eigenvectors = ComplexMatrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        r.eigenvalues[j] = evals[order[j]];
        for (std::size_t i = 0; i < n; ++i) r.eigenvectors(i, j) = vecs(i, order[j]);
    }
    return r;
}

}  // namespace mubkit
