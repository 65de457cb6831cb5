#include "mubkit/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

#include "mubkit/linalg.hpp"

namespace mubkit {

namespace {

const double kPi = std::numbers::pi;

Complex omega_pow(int k) {
    return std::polar(1.0, 2.0 * kPi * ((k % 3 + 3) % 3) / 3.0);
}

Complex alpha_pow(int k) {
    return std::polar(1.0, kPi * ((k % 6 + 6) % 6) / 3.0);
}

ComplexMatrix from_omega_exponents(const int (&exp)[6][6]) {
    const double s = 1.0 / std::sqrt(6.0);
    ComplexMatrix m(6, 6);
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j) m(i, j) = s * omega_pow(exp[i][j]);
    return m;
}

// ||M^H M - (tr(M^H M)/k) I||_max; zero exactly for subunitary blocks.
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

void require_unimodular(Complex z, const char* name, double tol) {
    if (std::abs(std::abs(z) - 1.0) >= tol) {
        throw std::invalid_argument(std::string("parameter ") + name + " must be unimodular");
    }
}

void require_unitary_order3(const ComplexMatrix& m, const char* name, const Tolerances& tol) {
    if (!m.is_square() || m.rows != 3 || !is_unitary(m, tol)) {
        throw std::invalid_argument(std::string(name) + " must be an order-3 unitary matrix");
    }
}

}  // namespace

ComplexMatrix fourier3() {
    const double s = 1.0 / std::sqrt(3.0);
    ComplexMatrix m(3, 3);
    for (std::size_t j = 0; j < 3; ++j)
        for (std::size_t k = 0; k < 3; ++k) m(j, k) = s * omega_pow(static_cast<int>(j * k));
    return m;
}

ComplexMatrix fourier3_alt() {
    const double s = 1.0 / std::sqrt(3.0);
    ComplexMatrix m(3, 3);
    for (std::size_t j = 0; j < 3; ++j)
        for (std::size_t k = 0; k < 3; ++k) m(j, k) = s * omega_pow(static_cast<int>((3 - j) * k));
    return m;
}

ComplexMatrix fourier6() {
    const double s = 1.0 / std::sqrt(6.0);
    ComplexMatrix m(6, 6);
    for (std::size_t j = 0; j < 6; ++j)
        for (std::size_t k = 0; k < 6; ++k) m(j, k) = s * alpha_pow(static_cast<int>(j * k));
    return m;
}

ComplexMatrix spectral() {
    static const int exp[6][6] = {
        {0, 0, 0, 0, 0, 0},
        {0, 0, 1, 1, 2, 2},
        {0, 1, 0, 2, 2, 1},
        {0, 1, 2, 0, 1, 2},
        {0, 2, 2, 1, 0, 1},
        {0, 2, 1, 2, 1, 0},
    };
    return from_omega_exponents(exp);
}

ComplexMatrix spectral_prime() {
    static const int exp[6][6] = {
        {0, 0, 0, 1, 0, 1},
        {0, 1, 2, 1, 2, 2},
        {0, 2, 1, 2, 2, 1},
        {0, 1, 1, 0, 0, 0},
        {0, 2, 0, 0, 1, 2},
        {1, 1, 0, 0, 2, 1},
    };
    return from_omega_exponents(exp);
}

EquivalenceMove spectral_prime_move() {
    ComplexMatrix left(6, 6);
    const int diag_exp[6] = {0, 1, 2, 1, 2, 1};
    for (std::size_t i = 0; i < 6; ++i) left(i, i) = omega_pow(diag_exp[i]);

    ComplexMatrix right(6, 6);
    right(0, 1) = Complex(1.0, 0.0);
    right(1, 5) = omega_pow(1);
    right(2, 4) = Complex(1.0, 0.0);
    right(3, 2) = Complex(1.0, 0.0);
    right(4, 3) = omega_pow(1);
    right(5, 0) = Complex(1.0, 0.0);
    return {std::move(left), std::move(right)};
}

ComplexMatrix fourier_family(Complex z1, Complex z2, const Tolerances& tol) {
    tol.validate();
    require_unimodular(z1, "z1", tol.structural_tol);
    require_unimodular(z2, "z2", tol.structural_tol);

    const double s = 1.0 / std::sqrt(6.0);
    const Complex w = omega_pow(1), w2 = omega_pow(2), one(1.0, 0.0);
    ComplexMatrix m(6, 6);
    const Complex rows[6][6] = {
        {one, one, one, one, one, one},
        {one, -one, z1, -z1, z2, -z2},
        {one, one, w, w, w2, w2},
        {one, -one, w * z1, -w * z1, w2 * z2, -w2 * z2},
        {one, one, w2, w2, w, w},
        {one, -one, w2 * z1, -w2 * z1, w * z2, -w * z2},
    };
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j) m(i, j) = s * rows[i][j];
    return m;
}

ComplexMatrix h1() {
    const double s = 1.0 / std::sqrt(2.0);
    ComplexMatrix h2x2(2, 2, {Complex(s, 0.0), Complex(s, 0.0), Complex(s, 0.0), Complex(-s, 0.0)});
    return kron(h2x2, fourier3());
}

ComplexMatrix bjorck() {
    // Circulant built from the cyclic 6-roots point on the unit circle.
    const double re = (1.0 - std::sqrt(3.0)) / 2.0;
    const Complex d(re, std::sqrt(std::sqrt(3.0) / 2.0));
    const Complex i_unit(0.0, 1.0);
    const Complex c[6] = {Complex(1.0, 0.0), i_unit * d, -d, -i_unit, -std::conj(d),
                          i_unit * std::conj(d)};

    const double s = 1.0 / std::sqrt(6.0);
    ComplexMatrix m(6, 6);
    for (std::size_t j = 0; j < 6; ++j)
        for (std::size_t k = 0; k < 6; ++k) m(j, k) = s * c[(k + 6 - j) % 6];

    // Transcription guards: Hadamard, circulant block structure, and neither
    // diagonal block proportional to a unitary.
    if (!is_chm(m)) throw std::logic_error("bjorck: constructed matrix is not Hadamard");
    const std::vector<std::size_t> lo{0, 1, 2}, hi{3, 4, 5};
    const ComplexMatrix x = submatrix(m, lo, lo), y = submatrix(m, lo, hi);
    if (max_abs_diff(x, submatrix(m, hi, hi)) > 1e-12 ||
        max_abs_diff(y, submatrix(m, hi, lo)) > 1e-12) {
        throw std::logic_error("bjorck: blocks do not have the [[X,Y],[Y,X]] form");
    }
    if (subunitarity_residual(x) < 1e-6 || subunitarity_residual(y) < 1e-6) {
        throw std::logic_error("bjorck: a diagonal block is subunitary");
    }
    return m;
}

ComplexMatrix dita() {
    const double s = 1.0 / std::sqrt(6.0);
    const Complex I(0.0, 1.0), one(1.0, 0.0);
    const Complex rows[6][6] = {
        {one, one, one, one, one, one},
        {one, -one, I, -I, -I, I},
        {one, I, -one, I, -I, -I},
        {one, -I, I, -one, I, -I},
        {one, -I, -I, I, -one, I},
        {one, I, -I, -I, I, -one},
    };
    ComplexMatrix m(6, 6);
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j) m(i, j) = s * rows[i][j];

    if (!is_chm(m)) throw std::logic_error("dita: constructed matrix is not Hadamard");

    // One row-phase multiplication must expose an all-real submatrix covering
    // three rows by two columns or two rows by three columns.
    bool found = false;
    for (std::size_t r = 0; r < 6 && !found; ++r) {
        ComplexMatrix phased = m;
        for (std::size_t j = 0; j < 6; ++j) phased(r, j) *= Complex(0.0, 1.0);
        std::vector<std::vector<std::size_t>> real_cols(6);
        for (std::size_t i = 0; i < 6; ++i)
            for (std::size_t j = 0; j < 6; ++j)
                if (std::abs(phased(i, j).imag()) < 1e-9) real_cols[i].push_back(j);
        // Count column pairs/triples shared by enough rows.
        for (std::size_t j1 = 0; j1 < 6 && !found; ++j1)
            for (std::size_t j2 = j1 + 1; j2 < 6 && !found; ++j2) {
                std::size_t rows_with_pair = 0, rows_with_more = 0;
                for (std::size_t i = 0; i < 6; ++i) {
                    const auto& rc = real_cols[i];
                    const bool has1 = std::find(rc.begin(), rc.end(), j1) != rc.end();
                    const bool has2 = std::find(rc.begin(), rc.end(), j2) != rc.end();
                    if (has1 && has2) {
                        ++rows_with_pair;
                        if (rc.size() >= 3) ++rows_with_more;
                    }
                }
                if (rows_with_pair >= 3 || rows_with_more >= 2) found = true;
            }
    }
    if (!found) throw std::logic_error("dita: expected phased real submatrix not present");
    return m;
}

H2Result h2(const H2Params& params, const Tolerances& tol) {
    tol.validate();
    if (params.alpha < 0.0 || params.alpha > kPi / 4.0 || params.beta < 0.0 ||
        params.beta > kPi / 4.0) {
        throw std::invalid_argument("h2: alpha and beta must lie in [0, pi/4]");
    }
    if (params.alpha + params.beta < kPi / 4.0 - 1e-12) {
        throw std::invalid_argument("h2: alpha + beta must be at least pi/4");
    }
    require_unitary_order3(params.v, "h2: v", tol);
    require_unitary_order3(params.w, "h2: w", tol);

    const double ca = std::cos(params.alpha), sa = std::sin(params.alpha);
    const double cb = std::cos(params.beta), sb = std::sin(params.beta);
    const Complex eg = std::polar(1.0, params.gamma);

    ComplexMatrix outer_left(2, 2, {Complex(ca, 0.0), Complex(sa, 0.0), eg * sa, -eg * ca});
    ComplexMatrix outer_right(2, 2, {Complex(cb, 0.0), Complex(sb, 0.0), Complex(sb, 0.0),
                                     Complex(-cb, 0.0)});
    ComplexMatrix middle(6, 6);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            middle(i, j) = params.v(i, j);
            middle(i + 3, j + 3) = params.w(i, j);
        }

    H2Result result;
    result.matrix = multiply(multiply(kron(outer_left, ComplexMatrix::identity(3)), middle),
                             kron(outer_right, ComplexMatrix::identity(3)));

    const double c2a = std::cos(2.0 * params.alpha), s2a = std::sin(2.0 * params.alpha);
    const double c2b = std::cos(2.0 * params.beta), s2b = std::sin(2.0 * params.beta);
    H2ConstraintReport& rep = result.report;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            const Complex v = params.v(i, j), w = params.w(i, j);
            const double re_vw = (v * std::conj(w)).real();
            rep.phase_balance =
                std::max(rep.phase_balance, std::abs(c2a * c2b + 3.0 * re_vw * s2a * s2b));
            rep.modulus_sum =
                std::max(rep.modulus_sum, std::abs(std::norm(v) + std::norm(w) - 2.0 / 3.0));
            rep.modulus_fix_alpha =
                std::max(rep.modulus_fix_alpha, std::abs((std::norm(v) - 1.0 / 3.0) * c2a));
            rep.modulus_fix_beta =
                std::max(rep.modulus_fix_beta, std::abs((std::norm(v) - 1.0 / 3.0) * c2b));
        }

    ComplexMatrix stack(2, 9);
    for (std::size_t k = 0; k < 9; ++k) {
        stack(0, k) = params.v.entries[k];
        stack(1, k) = params.w.entries[k];
    }
    rep.v_w_independent = numeric_rank(stack, tol) == 2;
    rep.satisfied = rep.phase_balance < tol.structural_tol &&
                    rep.modulus_sum < tol.structural_tol &&
                    rep.modulus_fix_alpha < tol.structural_tol &&
                    rep.modulus_fix_beta < tol.structural_tol;
    return result;
}

ComplexMatrix h3(const H3Params& params, const Tolerances& tol) {
    tol.validate();
    for (double a : params.alpha) {
        if (a < 0.0 || a > kPi / 2.0) {
            throw std::invalid_argument("h3: alpha angles must lie in [0, pi/2]");
        }
    }
    require_unitary_order3(params.v, "h3: v", tol);
    require_unitary_order3(params.w, "h3: w", tol);
    for (std::size_t i = 0; i < 3; ++i) {
        const Complex e = params.w(i, 0);
        if (e.real() < -tol.structural_tol || std::abs(e.imag()) > tol.structural_tol) {
            throw std::invalid_argument("h3: first column of w must be real and nonnegative");
        }
    }

    ComplexMatrix middle(6, 6);
    for (std::size_t j = 0; j < 3; ++j) {
        const double ca = std::cos(params.alpha[j]), sa = std::sin(params.alpha[j]);
        const Complex eb = std::polar(1.0, params.beta[j]);
        const Complex egoff = std::polar(1.0, params.gamma[j]);
        middle(j, j) = Complex(ca, 0.0);
        middle(j, j + 3) = egoff * sa;
        middle(j + 3, j) = eb * sa;
        middle(j + 3, j + 3) = -eb * egoff * ca;
    }
    const ComplexMatrix i2v = kron(ComplexMatrix::identity(2), params.v);
    const ComplexMatrix i2w = kron(ComplexMatrix::identity(2), params.w);
    return multiply(multiply(i2v, middle), i2w);
}

ComplexMatrix sr3_example(const ComplexMatrix& v, const Tolerances& tol) {
    if (!v.is_square() || v.rows != 3 || !is_chm(v, tol)) {
        throw std::invalid_argument("sr3_example: v must be an order-3 complex Hadamard matrix");
    }
    const Complex mi(0.0, -1.0), pi_(0.0, 1.0);
    const Complex d1[3] = {mi, pi_, Complex(1.0, 0.0)};
    const Complex d2[3] = {mi, pi_, Complex(-1.0, 0.0)};
    const double s = 1.0 / std::sqrt(2.0);

    ComplexMatrix u(6, 6);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            u(i, j) = s * d1[i] * v(i, j);
            u(i, j + 3) = s * v(i, j);
            u(i + 3, j) = s * v(i, j);
            u(i + 3, j + 3) = s * d2[i] * v(i, j);
        }
    return u;
}

ComplexMatrix sr4_example(const ComplexMatrix& d, const ComplexMatrix& v, const ComplexMatrix& w,
                          const Tolerances& tol) {
    tol.validate();
    const std::size_t n = v.rows;
    if (!v.is_square() || !w.is_square() || w.rows != n || !d.is_square() || d.rows != n) {
        throw std::invalid_argument("sr4_example: dimension mismatch");
    }
    if (!is_chm(v, tol) || !is_chm(w, tol)) {
        throw std::invalid_argument("sr4_example: v and w must be complex Hadamard matrices");
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(std::abs(d(i, i)) - 1.0) >= tol.structural_tol) {
            throw std::invalid_argument("sr4_example: d must be a diagonal unitary");
        }
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j && std::abs(d(i, j)) >= tol.structural_tol) {
                throw std::invalid_argument("sr4_example: d must be a diagonal unitary");
            }
        }
    }
    bool proportional = true;
    for (std::size_t i = 1; i < n; ++i) {
        if (std::abs(d(i, i) - d(0, 0)) >= tol.structural_tol) proportional = false;
    }
    if (proportional) throw std::invalid_argument("sr4_example: d-proportional-to-identity");

    ComplexMatrix stack(2, n * n);
    for (std::size_t k = 0; k < n * n; ++k) {
        stack(0, k) = v.entries[k];
        stack(1, k) = w.entries[k];
    }
    if (numeric_rank(stack, tol) != 2) throw std::invalid_argument("sr4_example: v-w-dependent");

    const ComplexMatrix wv = multiply(w, dagger(v));
    double offdiag = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) offdiag = std::max(offdiag, std::abs(wv(i, j)));
    if (offdiag < tol.structural_tol) {
        throw std::invalid_argument("sr4_example: wv-dagger-diagonal");
    }

    const double s = 1.0 / std::sqrt(2.0);
    const ComplexMatrix dv = multiply(d, v), dw = multiply(d, w);
    ComplexMatrix u(2 * n, 2 * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            u(i, j) = s * dv(i, j);
            u(i, j + n) = s * dw(i, j);
            u(i + n, j) = s * v(i, j);
            u(i + n, j + n) = -s * w(i, j);
        }
    return u;
}

KarlssonReport karlsson_validate(const KarlssonParams& p, const Tolerances& tol) {
    tol.validate();
    const std::pair<Complex, const char*> checks[] = {
        {p.z1, "z1"}, {p.z2, "z2"}, {p.z3, "z3"}, {p.z4, "z4"}, {p.a1, "a1"}, {p.a2, "a2"},
        {p.a3, "a3"}, {p.b1, "b1"}, {p.b2, "b2"}, {p.b3, "b3"}, {p.c1, "c1"}, {p.c2, "c2"},
        {p.c3, "c3"}, {p.d1, "d1"}, {p.d2, "d2"}, {p.d3, "d3"}};
    for (const auto& [value, name] : checks) require_unimodular(value, name, tol.structural_tol);

    KarlssonReport report;
    report.names = {"z1*z3 = a1*a2*a3",
                    "z2*z3 = b1*b2*b3",
                    "z1*z4 = c1*c2*c3",
                    "z2*z4 = d1*d2*d3",
                    "a-sum matches d-sum",
                    "z3-weighted a-sum matches z4-weighted d-sum",
                    "b-sum matches c-sum",
                    "z3-weighted b-sum matches z4-weighted c-sum"};

    const Complex a_plus = p.a1 + p.a2 + p.z1 * p.z3 * (std::conj(p.a2) - std::conj(p.a1));
    const Complex a_minus = p.a1 + p.a2 - p.z1 * p.z3 * (std::conj(p.a2) - std::conj(p.a1));
    const Complex b_plus = p.b1 + p.b2 + p.z2 * p.z3 * (std::conj(p.b2) - std::conj(p.b1));
    const Complex b_minus = p.b1 + p.b2 - p.z2 * p.z3 * (std::conj(p.b2) - std::conj(p.b1));
    const Complex c_plus = p.c1 + p.c2 + p.z1 * p.z4 * (std::conj(p.c2) - std::conj(p.c1));
    const Complex c_minus = p.c1 + p.c2 - p.z1 * p.z4 * (std::conj(p.c2) - std::conj(p.c1));
    const Complex d_plus = p.d1 + p.d2 + p.z2 * p.z4 * (std::conj(p.d2) - std::conj(p.d1));
    const Complex d_minus = p.d1 + p.d2 - p.z2 * p.z4 * (std::conj(p.d2) - std::conj(p.d1));

    report.residuals = {std::abs(p.z1 * p.z3 - p.a1 * p.a2 * p.a3),
                        std::abs(p.z2 * p.z3 - p.b1 * p.b2 * p.b3),
                        std::abs(p.z1 * p.z4 - p.c1 * p.c2 * p.c3),
                        std::abs(p.z2 * p.z4 - p.d1 * p.d2 * p.d3),
                        std::abs(a_plus - d_plus),
                        std::abs(std::conj(p.z3) * a_minus - std::conj(p.z4) * d_minus),
                        std::abs(b_plus - c_plus),
                        std::abs(std::conj(p.z3) * b_minus - std::conj(p.z4) * c_minus)};

    report.satisfied = true;
    for (double r : report.residuals) {
        if (r >= tol.search_tol) report.satisfied = false;
    }

    const double s = 1.0 / std::sqrt(6.0);
    const Complex one(1.0, 0.0);
    const Complex rows[6][6] = {
        {one, one, one, one, one, one},
        {one, -one, p.z1, -p.z1, p.z2, -p.z2},
        {one, p.z3, p.a1, p.a2, p.b1, p.b2},
        {one, -p.z3, p.a1 * p.a3, -p.a2 * p.a3, p.b1 * p.b3, -p.b2 * p.b3},
        {one, p.z4, p.c1, p.c2, p.d1, p.d2},
        {one, -p.z4, p.c1 * p.c3, -p.c2 * p.c3, p.d1 * p.d3, -p.d2 * p.d3},
    };
    report.assembled = ComplexMatrix(6, 6);
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j) report.assembled(i, j) = s * rows[i][j];
    report.assembled_is_unitary = is_unitary(report.assembled, tol);
    report.assembled_is_chm = is_chm(report.assembled, tol);
    return report;
}

}  // namespace mubkit
