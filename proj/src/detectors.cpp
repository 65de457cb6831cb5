#include "mubkit/detectors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mubkit/linalg.hpp"
#include "mubkit/schmidt.hpp"

namespace mubkit {

namespace {

std::vector<std::vector<std::size_t>> combinations(std::size_t n, std::size_t k) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        out.push_back(idx);
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
        if (i == 0) break;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
    return out;
}

void require_order6(const ComplexMatrix& u, const char* op) {
    if (!u.is_square() || u.rows != 6) {
        throw std::invalid_argument(std::string(op) + ": matrix must be of order 6");
    }
}

double subunitarity_residual(const ComplexMatrix& m) {
    const ComplexMatrix gram = multiply(dagger(m), m);
    Complex trace(0.0, 0.0);
    for (std::size_t i = 0; i < gram.rows; ++i) trace += gram(i, i);
    const Complex mean = trace / static_cast<double>(gram.rows);
    double res = 0.0;
    for (std::size_t i = 0; i < gram.rows; ++i)
        for (std::size_t j = 0; j < gram.cols; ++j) {
            const Complex target = (i == j) ? mean : Complex(0.0, 0.0);
            res = std::max(res, std::abs(gram(i, j) - target));
        }
    return res;
}

// sigma_min / sigma_max; 0 for the zero matrix.
double singularity_ratio(const ComplexMatrix& m) {
    const auto sv = singular_values(m);
    if (sv.empty() || sv.front() == 0.0) return 0.0;
    return sv.back() / sv.front();
}

// sigma_2 / sigma_1 as the distance from rank one.
double rank_one_ratio(const ComplexMatrix& m) {
    const auto sv = singular_values(m);
    if (sv.size() < 2 || sv.front() == 0.0) return 0.0;
    return sv[1] / sv.front();
}

double max_imag(const ComplexMatrix& m) {
    double r = 0.0;
    for (const auto& e : m.entries) r = std::max(r, std::abs(e.imag()));
    return r;
}

double phase_real_residual(const ComplexMatrix& m) {
    // Cross ratios over all row pairs and the column pair of a 3x2 block.
    double res = 0.0;
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t k = i + 1; k < m.rows; ++k) {
            const Complex num = m(i, 0) * m(k, 1);
            const Complex den = m(i, 1) * m(k, 0);
            if (std::abs(den) < 1e-12) {
                throw std::invalid_argument("scan_phase_real_3x2: zero entry in input");
            }
            res = std::max(res, std::abs((num / den).imag()));
        }
    return res;
}

// Smallest over pivot choices of the larger normalised overlap with the two
// other columns; a hit means some column is orthogonal to both others.
double ortho_triple_residual(const ComplexMatrix& m) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t pivot = 0; pivot < 3; ++pivot) {
        double worst = 0.0;
        for (std::size_t other = 0; other < 3; ++other) {
            if (other == pivot) continue;
            Complex ip(0.0, 0.0);
            double np = 0.0, no = 0.0;
            for (std::size_t i = 0; i < m.rows; ++i) {
                ip += std::conj(m(i, pivot)) * m(i, other);
                np += std::norm(m(i, pivot));
                no += std::norm(m(i, other));
            }
            const double scale = std::sqrt(np * no);
            worst = std::max(worst, scale > 0.0 ? std::abs(ip) / scale : 0.0);
        }
        best = std::min(best, worst);
    }
    return best;
}

double ortho_columns_residual(const ComplexMatrix& m) {
    Complex ip(0.0, 0.0);
    double n0 = 0.0, n1 = 0.0;
    for (std::size_t i = 0; i < m.rows; ++i) {
        ip += std::conj(m(i, 0)) * m(i, 1);
        n0 += std::norm(m(i, 0));
        n1 += std::norm(m(i, 1));
    }
    const double scale = std::sqrt(n0 * n1);
    return scale > 0.0 ? std::abs(ip) / scale : 0.0;
}

template <typename Residual>
std::vector<PatternHit> scan_shape(const ComplexMatrix& u, Pattern pattern, std::size_t r,
                                   std::size_t c, double tol, Residual&& residual_fn) {
    std::vector<PatternHit> hits;
    const auto row_sets = combinations(u.rows, r);
    const auto col_sets = combinations(u.cols, c);
    for (const auto& rows : row_sets)
        for (const auto& cols : col_sets) {
            const double res = residual_fn(submatrix(u, rows, cols));
            if (res < tol) hits.push_back({pattern, rows, cols, res});
        }
    return hits;
}

}  // namespace

std::string pattern_name(Pattern p) {
    switch (p) {
        case Pattern::SUBUNITARY_K: return "SUBUNITARY_K";
        case Pattern::RANK_ONE_RXC: return "RANK_ONE_RXC";
        case Pattern::REAL_3X2: return "REAL_3X2";
        case Pattern::PHASE_REAL_3X2: return "PHASE_REAL_3X2";
        case Pattern::SINGULAR_3: return "SINGULAR_3";
        case Pattern::ORTHO_COLUMN_TRIPLE_KX3: return "ORTHO_COLUMN_TRIPLE_KX3";
        case Pattern::H2_REDUCIBLE: return "H2_REDUCIBLE";
        case Pattern::ORTHO_3X2_COLUMNS: return "ORTHO_3X2_COLUMNS";
        case Pattern::Y7_SHARED_LEFT_FACTOR: return "Y7_SHARED_LEFT_FACTOR";
        case Pattern::Y9_SUBUNITARY_PLUS_SINGULAR: return "Y9_SUBUNITARY_PLUS_SINGULAR";
    }
    return "UNKNOWN";
}

std::vector<PatternHit> scan_subunitary(const ComplexMatrix& u, std::size_t k,
                                        const Tolerances& tol) {
    require_order6(u, "scan_subunitary");
    tol.validate();
    if (k < 2 || k > 5) throw std::invalid_argument("scan_subunitary: k must be in 2..5");
    return scan_shape(u, Pattern::SUBUNITARY_K, k, k, tol.structural_tol, subunitarity_residual);
}

std::vector<PatternHit> scan_rank_one(const ComplexMatrix& u, std::size_t r, std::size_t c,
                                      const Tolerances& tol) {
    require_order6(u, "scan_rank_one");
    tol.validate();
    const bool allowed = (r == 2 && c == 2) || (r == 2 && c == 3) || (r == 3 && c == 2);
    if (!allowed) {
        throw std::invalid_argument(
            "scan_rank_one: shape must be 2x2, 2x3 or 3x2; wider rank-one blocks cannot occur");
    }
    return scan_shape(u, Pattern::RANK_ONE_RXC, r, c, tol.structural_tol, rank_one_ratio);
}

std::vector<PatternHit> scan_singular_order3(const ComplexMatrix& u, const Tolerances& tol) {
    require_order6(u, "scan_singular_order3");
    tol.validate();
    return scan_shape(u, Pattern::SINGULAR_3, 3, 3, tol.structural_tol, singularity_ratio);
}

std::vector<PatternHit> scan_real_submatrix(const ComplexMatrix& u, const Tolerances& tol) {
    require_order6(u, "scan_real_submatrix");
    tol.validate();
    auto hits = scan_shape(u, Pattern::REAL_3X2, 3, 2, tol.structural_tol, max_imag);
    auto transposed = scan_shape(u, Pattern::REAL_3X2, 2, 3, tol.structural_tol, max_imag);
    hits.insert(hits.end(), transposed.begin(), transposed.end());
    return hits;
}

std::vector<PatternHit> scan_phase_real_3x2(const ComplexMatrix& u, const Tolerances& tol) {
    require_order6(u, "scan_phase_real_3x2");
    tol.validate();
    for (const auto& e : u.entries) {
        if (std::abs(e) < 1e-12) {
            throw std::invalid_argument("scan_phase_real_3x2: zero entry in input");
        }
    }
    return scan_shape(u, Pattern::PHASE_REAL_3X2, 3, 2, tol.structural_tol, phase_real_residual);
}

std::vector<PatternHit> scan_ortho_column_triple(const ComplexMatrix& u, std::size_t k,
                                                 const Tolerances& tol) {
    require_order6(u, "scan_ortho_column_triple");
    tol.validate();
    if (k < 2 || k > 4) throw std::invalid_argument("scan_ortho_column_triple: k must be in 2..4");
    return scan_shape(u, Pattern::ORTHO_COLUMN_TRIPLE_KX3, k, 3, tol.structural_tol,
                      ortho_triple_residual);
}

std::vector<PatternHit> detect_h2_reducible(const ComplexMatrix& u, const Tolerances& tol) {
    require_order6(u, "detect_h2_reducible");
    tol.validate();
    return scan_shape(u, Pattern::H2_REDUCIBLE, 2, 2, tol.structural_tol, subunitarity_residual);
}

std::vector<PatternHit> detect_ortho_3x2_columns(const ComplexMatrix& u, const Tolerances& tol) {
    require_order6(u, "detect_ortho_3x2_columns");
    tol.validate();
    return scan_shape(u, Pattern::ORTHO_3X2_COLUMNS, 3, 2, tol.structural_tol,
                      ortho_columns_residual);
}

std::vector<PatternHit> detect_y9(const ComplexMatrix& u, const Tolerances& tol) {
    require_order6(u, "detect_y9");
    tol.validate();
    std::vector<PatternHit> hits;
    const auto row_pairs = combinations(6, 2);
    for (const auto& cols : combinations(6, 2)) {
        double best_sub = std::numeric_limits<double>::infinity();
        double best_sing = std::numeric_limits<double>::infinity();
        std::vector<std::size_t> sub_rows, sing_rows;
        for (const auto& rows : row_pairs) {
            const ComplexMatrix m = submatrix(u, rows, cols);
            const double su = subunitarity_residual(m);
            if (su < best_sub) {
                best_sub = su;
                sub_rows = rows;
            }
            const double si = singularity_ratio(m);
            if (si < best_sing) {
                best_sing = si;
                sing_rows = rows;
            }
        }
        if (best_sub < tol.structural_tol && best_sing < tol.structural_tol) {
            std::vector<std::size_t> rows = sub_rows;
            rows.insert(rows.end(), sing_rows.begin(), sing_rows.end());
            std::sort(rows.begin(), rows.end());
            rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
            hits.push_back({Pattern::Y9_SUBUNITARY_PLUS_SINGULAR, rows, cols,
                            std::max(best_sub, best_sing)});
        }
    }
    return hits;
}

bool verify_hit(const ComplexMatrix& u, const PatternHit& hit, const Tolerances& tol) {
    tol.validate();
    switch (hit.pattern) {
        case Pattern::SUBUNITARY_K:
        case Pattern::H2_REDUCIBLE:
            return subunitarity_residual(submatrix(u, hit.rows, hit.cols)) < tol.structural_tol;
        case Pattern::RANK_ONE_RXC:
            return rank_one_ratio(submatrix(u, hit.rows, hit.cols)) < tol.structural_tol;
        case Pattern::REAL_3X2:
            return max_imag(submatrix(u, hit.rows, hit.cols)) < tol.structural_tol;
        case Pattern::PHASE_REAL_3X2:
            return phase_real_residual(submatrix(u, hit.rows, hit.cols)) < tol.structural_tol;
        case Pattern::SINGULAR_3:
            return singularity_ratio(submatrix(u, hit.rows, hit.cols)) < tol.structural_tol;
        case Pattern::ORTHO_COLUMN_TRIPLE_KX3:
            return ortho_triple_residual(submatrix(u, hit.rows, hit.cols)) < tol.structural_tol;
        case Pattern::ORTHO_3X2_COLUMNS:
            return ortho_columns_residual(submatrix(u, hit.rows, hit.cols)) < tol.structural_tol;
        case Pattern::Y7_SHARED_LEFT_FACTOR: {
            const auto report = product_columns(u, {}, tol);
            for (const auto& [a, b] : same_left_factor_pairs(report, tol)) {
                if (hit.cols == std::vector<std::size_t>{std::min(a, b), std::max(a, b)}) {
                    return true;
                }
            }
            return false;
        }
        case Pattern::Y9_SUBUNITARY_PLUS_SINGULAR: {
            for (const auto& other : detect_y9(u, tol)) {
                if (other.cols == hit.cols) return true;
            }
            return false;
        }
    }
    return false;
}

FilterReport filter_trio_candidate(const ComplexMatrix& u, const Tolerances& tol) {
    require_order6(u, "filter_trio_candidate");
    tol.validate();
    if (!is_chm(u, tol)) {
        throw std::invalid_argument("filter_trio_candidate: input must be a complex Hadamard matrix");
    }

    FilterReport report;
    const auto pc = product_columns(u, {}, tol);
    report.product_column_count = pc.columns.size();
    report.schmidt_rank = schmidt_rank(u, {}, tol);

    const auto append = [&](std::vector<PatternHit> more) {
        report.hits.insert(report.hits.end(), more.begin(), more.end());
    };
    append(scan_subunitary(u, 3, tol));
    append(scan_rank_one(u, 2, 3, tol));
    append(scan_rank_one(u, 3, 2, tol));
    append(scan_real_submatrix(u, tol));
    append(scan_singular_order3(u, tol));
    for (std::size_t k = 2; k <= 4; ++k) append(scan_ortho_column_triple(u, k, tol));
    for (const auto& [a, b] : same_left_factor_pairs(pc, tol)) {
        report.hits.push_back({Pattern::Y7_SHARED_LEFT_FACTOR,
                               {},
                               {std::min(a, b), std::max(a, b)},
                               0.0});
    }
    append(detect_y9(u, tol));
    report.phase_real_hits = scan_phase_real_3x2(u, tol);

    report.excluded = report.product_column_count > 2 || report.schmidt_rank <= 2 ||
                      !report.hits.empty();

    if (report.product_column_count > 2) {
        report.reasons.push_back("Theorem 1: " + std::to_string(report.product_column_count) +
                                 " product columns > 2");
    }
    if (report.schmidt_rank <= 2) {
        report.reasons.push_back("Theorem 2: Schmidt rank " +
                                 std::to_string(report.schmidt_rank));
    }
    std::vector<std::string> pattern_reasons;
    for (const auto& hit : report.hits) {
        std::string reason;
        switch (hit.pattern) {
            case Pattern::SUBUNITARY_K:
                reason = "Y1: order-3 subunitary submatrix";
                break;
            case Pattern::RANK_ONE_RXC:
                reason = "Y2: rank-one " + std::to_string(hit.rows.size()) + "x" +
                         std::to_string(hit.cols.size()) + " submatrix";
                break;
            case Pattern::REAL_3X2:
                reason = "Y6: real " + std::to_string(hit.rows.size()) + "x" +
                         std::to_string(hit.cols.size()) + " submatrix";
                break;
            case Pattern::SINGULAR_3:
                reason = "Y5: singular order-3 submatrix";
                break;
            case Pattern::ORTHO_COLUMN_TRIPLE_KX3:
                reason = (hit.rows.size() == 4 ? "Y10: " : "Y3: ") +
                         std::to_string(hit.rows.size()) +
                         "x3 submatrix with a column orthogonal to the other two";
                break;
            case Pattern::Y7_SHARED_LEFT_FACTOR:
                reason = "Y7: two product columns share a left factor";
                break;
            case Pattern::Y9_SUBUNITARY_PLUS_SINGULAR:
                reason = "Y9: column pair with a 2x2 subunitary and a 2x2 singular submatrix";
                break;
            default:
                reason = pattern_name(hit.pattern);
                break;
        }
        if (std::find(pattern_reasons.begin(), pattern_reasons.end(), reason) ==
            pattern_reasons.end()) {
            pattern_reasons.push_back(reason);
        }
    }
    report.reasons.insert(report.reasons.end(), pattern_reasons.begin(), pattern_reasons.end());
    return report;
}

}  // namespace mubkit
