#include "mubkit/mu_search.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <optional>
#include <thread>

#include "mubkit/linalg.hpp"
#include "mubkit/random.hpp"
#include "mubkit/sinkhorn.hpp"

namespace mubkit {

namespace {

constexpr double kMovementTol = 1e-13;
constexpr std::size_t kMaxSteps = 10000;

std::size_t worker_count(std::size_t jobs) {
    std::size_t cap = 0;
    if (const char* env = std::getenv("MUBKIT_THREADS")) {
        cap = static_cast<std::size_t>(std::strtoul(env, nullptr, 10));
    }
    if (cap == 0) cap = std::thread::hardware_concurrency();
    if (cap == 0) cap = 1;
    return std::min(cap, std::max<std::size_t>(jobs, 1));
}

struct TrialOutcome {
    std::optional<ComplexVector> vector;  // dephased, accepted
    double residual = 0.0;
    bool discarded = false;      // zero overlap during phase extraction
    bool nonconverged = false;   // failed the residual acceptance check
};

// One alternating-projection trial from the given start vector.
TrialOutcome run_trial(const ComplexMatrix& u, ComplexVector v, double accept_tol) {
    const std::size_t d = u.order();
    const double scale = 1.0 / std::sqrt(static_cast<double>(d));

    TrialOutcome outcome;
    for (std::size_t step = 0; step < kMaxSteps; ++step) {
        // Project onto the unbiased set of u: fix every overlap modulus.
        ComplexVector overlaps = matvec_dagger(u, v);
        for (auto& o : overlaps) {
            const double mag = std::abs(o);
            if (mag == 0.0) {
                outcome.discarded = true;
                return outcome;
            }
            o *= scale / mag;
        }
        ComplexVector next = matvec(u, overlaps);
        // Project onto the unbiased set of the identity: flatten moduli.
        for (auto& e : next) {
            const double mag = std::abs(e);
            if (mag == 0.0) {
                outcome.discarded = true;
                return outcome;
            }
            e *= scale / mag;
        }
        const double movement = vector_distance(next, v);
        v = std::move(next);
        if (movement < kMovementTol) break;
    }

    const double residual = mu_vector_residual(u, v);
    if (residual < accept_tol) {
        outcome.vector = dephase_vector(v);
        outcome.residual = residual;
    } else {
        outcome.nonconverged = true;
        outcome.residual = residual;
    }
    return outcome;
}

ComplexVector random_flat_vector(std::size_t d, std::mt19937_64& rng) {
    ComplexVector v(d);
    const double scale = 1.0 / std::sqrt(static_cast<double>(d));
    for (auto& e : v) e = std::polar(scale, uniform_phase(rng));
    return v;
}

}  // namespace

double mu_vector_residual(const ComplexMatrix& u, const ComplexVector& v) {
    const std::size_t d = u.order();
    const double root_d = std::sqrt(static_cast<double>(d));
    double res = 0.0;
    for (const auto& e : v) res = std::max(res, std::abs(std::abs(e) * root_d - 1.0));
    for (const auto& o : matvec_dagger(u, v)) {
        res = std::max(res, std::abs(std::abs(o) * root_d - 1.0));
    }
    return res;
}

MuVectorSet find_mu_vectors(const ComplexMatrix& u, std::size_t trials, std::uint64_t seed,
                            const Tolerances& tol) {
    tol.validate();
    if (!is_unitary(u, tol)) {
        throw std::invalid_argument("find_mu_vectors: input must be unitary");
    }
    const std::size_t d = u.order();

    MuVectorSet set;
    set.basis_matrix = u;
    set.trials_run = trials;
    set.seed = seed;

    if (trials == 0) return set;

    // Trial starts are a pure function of (seed, trial index), so scheduling
    // cannot change the outcome; results merge in trial order below.
    std::vector<TrialOutcome> outcomes(trials);
    const auto run_range = [&](std::size_t begin, std::size_t end) {
        for (std::size_t t = begin; t < end; ++t) {
            ComplexVector start;
            if (t == 0) {
                try {
                    start = mu_vector_from_sinkhorn(u, 1e-10, 100000, seed);
                } catch (const ConvergenceError&) {
                    std::mt19937_64 rng(mix_seed(seed, t));
                    start = random_flat_vector(d, rng);
                }
            } else {
                std::mt19937_64 rng(mix_seed(seed, t));
                start = random_flat_vector(d, rng);
            }
            outcomes[t] = run_trial(u, std::move(start), tol.search_tol);
        }
    };

    const std::size_t workers = worker_count(trials);
    if (workers <= 1) {
        run_range(0, trials);
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (trials + workers - 1) / workers;
        for (std::size_t w = 0; w < workers; ++w) {
            const std::size_t begin = w * chunk;
            const std::size_t end = std::min(trials, begin + chunk);
            if (begin >= end) break;
            pool.emplace_back(run_range, begin, end);
        }
        for (auto& th : pool) th.join();
    }

    for (auto& outcome : outcomes) {
        if (outcome.discarded) {
            ++set.discarded_trials;
            continue;
        }
        if (outcome.nonconverged) {
            ++set.nonconverged_trials;
            continue;
        }
        const ComplexVector& v = *outcome.vector;
        bool duplicate = false;
        for (const auto& kept : set.vectors) {
            const double dist = vector_distance(kept, v);
            if (dist <= tol.dedup_tol) {
                duplicate = true;
                break;
            }
            if (dist < 10.0 * tol.dedup_tol) ++set.near_duplicate_pairs;
        }
        if (duplicate) continue;
        if (set.vectors.size() >= kMuVectorReportCap) {
            set.capped = true;
            break;
        }
        set.vectors.push_back(v);
        set.residuals.push_back(outcome.residual);
    }

    // Canonical order: lexicographic on the dephased coordinates.
    std::vector<std::size_t> order(set.vectors.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const auto& va = set.vectors[a];
        const auto& vb = set.vectors[b];
        for (std::size_t i = 0; i < va.size(); ++i) {
            if (va[i].real() != vb[i].real()) return va[i].real() < vb[i].real();
            if (va[i].imag() != vb[i].imag()) return va[i].imag() < vb[i].imag();
        }
        return false;
    });
    std::vector<ComplexVector> sorted_vectors(order.size());
    std::vector<double> sorted_residuals(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        sorted_vectors[i] = std::move(set.vectors[order[i]]);
        sorted_residuals[i] = set.residuals[order[i]];
    }
    set.vectors = std::move(sorted_vectors);
    set.residuals = std::move(sorted_residuals);
    return set;
}

double pairwise_min_overlap(const MuVectorSet& s) {
    if (s.vectors.size() < 2) {
        throw std::invalid_argument("pairwise_min_overlap: need at least two vectors");
    }
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < s.vectors.size(); ++i)
        for (std::size_t j = i + 1; j < s.vectors.size(); ++j)
            best = std::min(best, std::abs(inner_product(s.vectors[i], s.vectors[j])));
    return best;
}

MuVectorSet map_solutions(const MuVectorSet& s, const ComplexMatrix& q1, const ComplexMatrix& q2,
                          const Tolerances& tol) {
    tol.validate();
    if (!is_complex_permutation(q1, tol) || !is_complex_permutation(q2, tol)) {
        throw std::invalid_argument("map_solutions: factors must be complex permutation matrices");
    }
    MuVectorSet out;
    out.basis_matrix = multiply(multiply(q1, s.basis_matrix), q2);
    out.trials_run = s.trials_run;
    out.seed = s.seed;
    for (const auto& v : s.vectors) {
        ComplexVector moved = dephase_vector(matvec(q1, v));
        const double residual = mu_vector_residual(out.basis_matrix, moved);
        if (residual >= tol.search_tol) {
            throw std::logic_error("map_solutions: transformed vector failed re-verification");
        }
        out.vectors.push_back(std::move(moved));
        out.residuals.push_back(residual);
    }
    return out;
}

MuVectorSet conjugate_solutions(const MuVectorSet& s, const Tolerances& tol) {
    tol.validate();
    MuVectorSet out;
    out.basis_matrix = conjugate(s.basis_matrix);
    out.trials_run = s.trials_run;
    out.seed = s.seed;
    for (const auto& v : s.vectors) {
        ComplexVector conj_v(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) conj_v[i] = std::conj(v[i]);
        conj_v = dephase_vector(conj_v);
        const double residual = mu_vector_residual(out.basis_matrix, conj_v);
        if (residual >= tol.search_tol) {
            throw std::logic_error("conjugate_solutions: conjugated vector failed re-verification");
        }
        out.vectors.push_back(std::move(conj_v));
        out.residuals.push_back(residual);
    }
    return out;
}

}  // namespace mubkit
