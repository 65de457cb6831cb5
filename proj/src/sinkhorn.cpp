#include "mubkit/sinkhorn.hpp"

#include <cmath>
#include <limits>

#include "mubkit/linalg.hpp"
#include "mubkit/mub.hpp"
#include "mubkit/random.hpp"

namespace mubkit {

namespace {

constexpr std::size_t kMaxRestarts = 10;
constexpr std::size_t kStagnationWindow = 100;
constexpr double kStagnationDecrease = 1e-14;

double line_sum_residual(const ComplexMatrix& m) {
    double res = 0.0;
    for (std::size_t i = 0; i < m.rows; ++i) {
        Complex row(0.0, 0.0), col(0.0, 0.0);
        for (std::size_t j = 0; j < m.cols; ++j) {
            row += m(i, j);
            col += m(j, i);
        }
        res = std::max(res, std::abs(row - Complex(1.0, 0.0)));
        res = std::max(res, std::abs(col - Complex(1.0, 0.0)));
    }
    return res;
}

}  // namespace

bool is_doubly_quasistochastic(const ComplexMatrix& m, double tol) {
    if (!m.is_square()) throw std::invalid_argument("is_doubly_quasistochastic: matrix must be square");
    return line_sum_residual(m) < tol;
}

SinkhornForm sinkhorn_normalize(const ComplexMatrix& u, double tol, std::size_t max_iter,
                                std::uint64_t seed) {
    if (!is_unitary(u)) {
        throw std::invalid_argument("sinkhorn_normalize: input must be unitary");
    }
    const std::size_t d = u.order();
    std::mt19937_64 rng(mix_seed(seed, 0x73696e6bULL));

    SinkhornForm best;
    best.residual = std::numeric_limits<double>::infinity();

    for (std::size_t restart = 0; restart <= kMaxRestarts; ++restart) {
        ComplexVector left(d, Complex(1.0, 0.0));
        ComplexVector right(d, Complex(1.0, 0.0));
        if (restart > 0) {
            for (auto& e : left) e = random_unimodular(rng);
            for (auto& e : right) e = random_unimodular(rng);
        }

        ComplexMatrix core(d, d);
        const auto rebuild = [&]() {
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t j = 0; j < d; ++j) core(i, j) = left[i] * u(i, j) * right[j];
        };
        rebuild();

        double residual = line_sum_residual(core);
        double window_best = residual;
        std::size_t iter = 0;
        while (residual >= tol && iter < max_iter) {
            // Align row-sum phases, then column-sum phases.
            for (std::size_t i = 0; i < d; ++i) {
                Complex row(0.0, 0.0);
                for (std::size_t j = 0; j < d; ++j) row += core(i, j);
                const double mag = std::abs(row);
                if (mag > 0.0) left[i] *= std::conj(row) / mag;
            }
            rebuild();
            for (std::size_t j = 0; j < d; ++j) {
                Complex col(0.0, 0.0);
                for (std::size_t i = 0; i < d; ++i) col += core(i, j);
                const double mag = std::abs(col);
                if (mag > 0.0) right[j] *= std::conj(col) / mag;
            }
            rebuild();
            ++iter;
            residual = line_sum_residual(core);

            if (iter % kStagnationWindow == 0) {
                if (window_best - residual < kStagnationDecrease) break;  // stagnated
                window_best = residual;
            }
        }

        if (residual < best.residual) {
            best.left = ComplexMatrix(d, d);
            best.right = ComplexMatrix(d, d);
            for (std::size_t i = 0; i < d; ++i) {
                best.left(i, i) = left[i];
                best.right(i, i) = right[i];
            }
            best.core = core;
            best.iterations = iter;
            best.restarts = restart;
            best.residual = residual;
        }
        if (best.residual < tol) return best;
    }

    throw ConvergenceError("sinkhorn_normalize: residual " + std::to_string(best.residual) +
                               " did not reach tolerance within the iteration budget",
                           best.residual);
}

ComplexVector mu_vector_from_sinkhorn(const ComplexMatrix& u, double tol, std::size_t max_iter,
                                      std::uint64_t seed) {
    // The doubly quasistochastic form of u^H maps the all-ones vector to
    // itself, which forces every column of u to overlap the diagonal of the
    // right factor with unit modulus.
    const SinkhornForm form = sinkhorn_normalize(dagger(u), tol, max_iter, seed);
    const std::size_t d = u.order();
    ComplexVector f(d);
    const double scale = 1.0 / std::sqrt(static_cast<double>(d));
    for (std::size_t i = 0; i < d; ++i) f[i] = form.right(i, i) * scale;
    return dephase_vector(f);
}

}  // namespace mubkit
