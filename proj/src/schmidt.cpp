#include "mubkit/schmidt.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "mubkit/linalg.hpp"
#include "mubkit/random.hpp"

namespace mubkit {

ComplexMatrix realign(const ComplexMatrix& u, const BipartiteShape& shape) {
    shape.validate();
    if (!u.is_square() || u.rows != shape.dim()) {
        throw std::invalid_argument("realign: matrix order does not match shape");
    }
    const std::size_t dA = shape.d_A, dB = shape.d_B;
    ComplexMatrix r(dA * dA, dB * dB);
    for (std::size_t j = 0; j < dA; ++j)
        for (std::size_t k = 0; k < dA; ++k)
            for (std::size_t p = 0; p < dB; ++p)
                for (std::size_t q = 0; q < dB; ++q)
                    r(j * dA + k, p * dB + q) = u(j * dB + p, k * dB + q);
    return r;
}

std::size_t schmidt_rank(const ComplexMatrix& u, const BipartiteShape& shape,
                         const Tolerances& tol) {
    return numeric_rank(realign(u, shape), tol);
}

SchmidtData schmidt_decomposition(const ComplexMatrix& u, const BipartiteShape& shape,
                                  const Tolerances& tol) {
    tol.validate();
    const std::size_t dA = shape.d_A, dB = shape.d_B;
    const ComplexMatrix r = realign(u, shape);
    const SvdResult dec = svd(r);

    SchmidtData data;
    data.singular_values = dec.singular_values;
    const double sigma_max = dec.singular_values.empty() ? 0.0 : dec.singular_values.front();
    for (double s : dec.singular_values) {
        if (sigma_max > 0.0 && s > tol.structural_tol * sigma_max) ++data.rank;
    }

    // Keep every numerically meaningful term so the reconstruction identity
    // u = sum kron(A_j, B_j) holds to near machine precision.
    const double term_floor = sigma_max * 1e-14;
    for (std::size_t t = 0; t < dec.singular_values.size(); ++t) {
        const double s = dec.singular_values[t];
        if (s <= term_floor) break;
        const double root = std::sqrt(s);
        ComplexMatrix a(dA, dA), b(dB, dB);
        for (std::size_t j = 0; j < dA; ++j)
            for (std::size_t k = 0; k < dA; ++k) a(j, k) = dec.u(j * dA + k, t) * root;
        for (std::size_t p = 0; p < dB; ++p)
            for (std::size_t q = 0; q < dB; ++q) b(p, q) = std::conj(dec.v(p * dB + q, t)) * root;
        data.terms.emplace_back(std::move(a), std::move(b));
    }
    return data;
}

namespace {

// Row i of Q holds a one in column sigma(i).
constexpr std::size_t kQPerm[6] = {0, 2, 4, 1, 3, 5};

}  // namespace

ComplexMatrix fourier_family_Q() {
    ComplexMatrix q(6, 6);
    for (std::size_t i = 0; i < 6; ++i) q(i, kQPerm[i]) = Complex(1.0, 0.0);
    return q;
}

ComplexMatrix conjugate_by_Q(const ComplexMatrix& u) {
    if (!u.is_square() || u.rows != 6) {
        throw std::invalid_argument("conjugate_by_Q: matrix must be of order 6");
    }
    ComplexMatrix r(6, 6);
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j) r(i, j) = u(kQPerm[i], kQPerm[j]);
    return r;
}

namespace {

ComplexMatrix diagonal_from_phases(const std::vector<double>& phases) {
    ComplexMatrix d(phases.size(), phases.size());
    for (std::size_t i = 0; i < phases.size(); ++i) d(i, i) = std::polar(1.0, phases[i]);
    return d;
}

// sigma_{target+1} / sigma_1 of the realignment under the given move parts.
double rank_objective(const ComplexMatrix& u, const ComplexMatrix& left,
                      const ComplexMatrix& right, std::size_t target_rank,
                      const BipartiteShape& shape) {
    const ComplexMatrix moved = multiply(multiply(left, u), right);
    const auto sv = singular_values(realign(moved, shape));
    if (sv.empty() || sv.front() == 0.0) return 0.0;
    if (target_rank >= sv.size()) return 0.0;
    return sv[target_rank] / sv.front();
}

}  // namespace

MinSchmidtResult min_schmidt_upper_bound(const ComplexMatrix& u, std::uint64_t budget,
                                         std::uint64_t seed, const Tolerances& tol,
                                         const BipartiteShape& shape) {
    tol.validate();
    if (!is_chm(u, tol)) {
        throw std::invalid_argument("min_schmidt_upper_bound: input must be a complex Hadamard matrix");
    }
    const std::size_t n = u.order();

    MinSchmidtResult result;
    result.best_rank = schmidt_rank(u, shape, tol);
    result.best_move = EquivalenceMove::identity(n);

    const auto consider = [&](const EquivalenceMove& move) {
        const ComplexMatrix moved = multiply(multiply(move.left, u), move.right);
        const std::size_t r = schmidt_rank(moved, shape, tol);
        ++result.evaluations;
        if (r < result.best_rank) {
            result.best_rank = r;
            result.best_move = move;
        }
    };

    // Analytic candidates: the fixed permutation conjugation that flattens
    // the Fourier family, and the phase+permutation pair that reduces the
    // spectral matrix. Injecting them keeps the known reductions independent
    // of search luck.
    if (n == 6) {
        const ComplexMatrix q = fourier_family_Q();
        consider({q, dagger(q)});
        consider({dagger(q), q});

        const Complex omega = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
        ComplexMatrix d(6, 6);
        const Complex dphases[6] = {Complex(1.0, 0.0), omega, omega * omega,
                                    omega, omega * omega, omega};
        for (std::size_t i = 0; i < 6; ++i) d(i, i) = dphases[i];
        ComplexMatrix p(6, 6);
        p(0, 1) = Complex(1.0, 0.0);
        p(1, 5) = omega;
        p(2, 4) = Complex(1.0, 0.0);
        p(3, 2) = Complex(1.0, 0.0);
        p(4, 3) = omega;
        p(5, 0) = Complex(1.0, 0.0);
        consider({d, p});
    }

    if (result.best_rank <= 1) return result;

    // Permutations carry most of the reachable rank drops (phases fold
    // through them), so each round first samples bare permutation pairs and
    // only then refines the most promising pair by phase descent.
    std::mt19937_64 rng(mix_seed(seed, 0x6d696e53ULL));
    const std::size_t pair_samples_per_round = 200;

    while (result.evaluations < budget && result.best_rank > 1) {
        const std::size_t target = result.best_rank - 1;  // try to certify rank <= target

        ComplexMatrix best_pl = random_permutation(n, rng);
        ComplexMatrix best_pr = random_permutation(n, rng);
        ++result.evaluations;
        double best_pair_obj = rank_objective(u, best_pl, best_pr, target, shape);
        for (std::size_t k = 1; k + 1 < pair_samples_per_round && result.evaluations < budget &&
                                best_pair_obj >= tol.structural_tol;
             ++k) {
            ComplexMatrix pl = random_permutation(n, rng);
            ComplexMatrix pr = random_permutation(n, rng);
            ++result.evaluations;
            const double obj = rank_objective(u, pl, pr, target, shape);
            if (obj < best_pair_obj) {
                best_pair_obj = obj;
                best_pl = std::move(pl);
                best_pr = std::move(pr);
            }
        }

        // Coordinate descent over the 2n diagonal phases (one per side gauge
        // fixed) around the selected pair.
        std::vector<double> phases(2 * n, 0.0);
        const auto assemble = [&](const std::vector<double>& ph) {
            std::vector<double> lp(ph.begin(), ph.begin() + n);
            std::vector<double> rp(ph.begin() + n, ph.end());
            return EquivalenceMove{multiply(diagonal_from_phases(lp), best_pl),
                                   multiply(best_pr, diagonal_from_phases(rp))};
        };
        const auto objective = [&](const std::vector<double>& ph) {
            const auto move = assemble(ph);
            ++result.evaluations;
            return rank_objective(u, move.left, move.right, target, shape);
        };

        double best = best_pair_obj;
        double step = std::numbers::pi / 2.0;
        while (step > 1e-12 && result.evaluations < budget && best >= tol.structural_tol) {
            bool improved = false;
            for (std::size_t i = 0; i < 2 * n && result.evaluations < budget; ++i) {
                if (i == 0 || i == n) continue;  // gauge-fixed
                for (const double delta : {step, -step}) {
                    std::vector<double> trial = phases;
                    trial[i] += delta;
                    const double val = objective(trial);
                    if (val < best) {
                        best = val;
                        phases = std::move(trial);
                        improved = true;
                        break;
                    }
                }
            }
            if (!improved) step *= 0.5;
        }

        const auto move = assemble(phases);
        const ComplexMatrix moved = multiply(multiply(move.left, u), move.right);
        const std::size_t r = schmidt_rank(moved, shape, tol);
        if (r < result.best_rank) {
            result.best_rank = r;
            result.best_move = move;
        }
    }
    return result;
}

std::map<std::size_t, std::size_t> random_equivalence_rank_probe(const ComplexMatrix& u,
                                                                 std::size_t trials,
                                                                 std::uint64_t seed,
                                                                 const Tolerances& tol,
                                                                 const BipartiteShape& shape) {
    tol.validate();
    if (!is_chm(u, tol)) {
        throw std::invalid_argument("random_equivalence_rank_probe: input must be a complex Hadamard matrix");
    }
    const std::size_t n = u.order();
    std::map<std::size_t, std::size_t> histogram;
    std::mt19937_64 rng(mix_seed(seed, 0x70726f62ULL));
    for (std::size_t t = 0; t < trials; ++t) {
        ComplexMatrix moved;
        if (t == 0) {
            moved = u;  // identity move as the reference trial
        } else {
            moved = multiply(multiply(random_diagonal_unitary(n, rng), u),
                             random_diagonal_unitary(n, rng));
        }
        ++histogram[schmidt_rank(moved, shape, tol)];
    }
    return histogram;
}

}  // namespace mubkit
