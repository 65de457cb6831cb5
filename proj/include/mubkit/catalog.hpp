#pragma once

#include <array>
#include <string>

#include "mubkit/mub.hpp"
#include "mubkit/types.hpp"

namespace mubkit {

// ---------------------------------------------------------------------------
// Fixed matrices
// ---------------------------------------------------------------------------

/// Normalised order-3 Fourier matrix, entries omega^(jk)/sqrt(3).
ComplexMatrix fourier3();
/// The conjugate core: second and third rows swapped relative to fourier3().
ComplexMatrix fourier3_alt();

/// Order-6 Fourier matrix, entries alpha^(jk)/sqrt(6) with alpha = exp(i*pi/3).
ComplexMatrix fourier6();

/// The spectral matrix (Schmidt rank four).
ComplexMatrix spectral();
/// Permutation/phase-equivalent form of the spectral matrix with a subunitary
/// upper-left order-3 block (Schmidt rank three).
ComplexMatrix spectral_prime();
/// The explicit move with spectral_prime() = left * spectral() * right.
EquivalenceMove spectral_prime_move();

/// Standard form of the two-parameter Fourier family; both arguments must be
/// unimodular within structural_tol.
ComplexMatrix fourier_family(Complex z1, Complex z2, const Tolerances& tol = {});

/// The Schmidt-rank-one Hadamard kron((1/sqrt2)[[1,1],[1,-1]], fourier3()).
ComplexMatrix h1();

/// Bjorck's circulant matrix (Schmidt rank two, blocks [[X,Y],[Y,X]] with
/// neither block subunitary). Self-validates on construction.
ComplexMatrix bjorck();

/// The Dita matrix. Self-validates on construction: Hadamard, and one
/// row-phase multiplication away from containing a real 3x2/2x3 submatrix.
ComplexMatrix dita();

// ---------------------------------------------------------------------------
// Parametrised families
// ---------------------------------------------------------------------------

/// Parameters of the Schmidt-rank-two normal form.
struct H2Params {
    double alpha = 0.0;  // [0, pi/4]
    double beta = 0.0;   // [0, pi/4]
    double gamma = 0.0;  // [0, 2*pi)
    ComplexMatrix v;     // order-3 unitary
    ComplexMatrix w;     // order-3 unitary
};

/// Entrywise constraint residuals for the rank-two family. Only when all four
/// hold (and v, w are linearly independent) is the assembled matrix Hadamard.
struct H2ConstraintReport {
    double phase_balance = 0.0;     // cos2a*cos2b + (3 Re(v w*)) sin2a*sin2b
    double modulus_sum = 0.0;       // |v|^2 + |w|^2 - 2/3
    double modulus_fix_alpha = 0.0; // (|v|^2 - 1/3) cos2a
    double modulus_fix_beta = 0.0;  // (|v|^2 - 1/3) cos2b
    bool v_w_independent = false;
    bool satisfied = false;         // all four residuals below tolerance
};

struct H2Result {
    ComplexMatrix matrix;
    H2ConstraintReport report;
};

/// Assemble the rank-two normal form. Angle ranges and unitarity of v, w are
/// enforced; the Hadamard constraints are reported, not enforced, so callers
/// can generate counterexamples violating individual equations.
H2Result h2(const H2Params& params, const Tolerances& tol = {});

/// Parameters of the Schmidt-rank-three normal form.
struct H3Params {
    std::array<double, 3> alpha{};  // [0, pi/2]
    std::array<double, 3> beta{};   // [0, 2*pi)
    std::array<double, 3> gamma{};  // [0, 2*pi)
    ComplexMatrix v;                // order-3 unitary
    ComplexMatrix w;                // order-3 unitary, first column real nonnegative
};

ComplexMatrix h3(const H3Params& params, const Tolerances& tol = {});

/// The two-block construction (1/sqrt2)[[diag(-i,i,1) V, V],[V, diag(-i,i,-1) V]],
/// a Schmidt-rank-three Hadamard matrix for any order-3 Hadamard v.
ComplexMatrix sr3_example(const ComplexMatrix& v, const Tolerances& tol = {});

/// (1/sqrt2)[[D V, D W],[V, -W]]: Schmidt rank four when d is a non-scalar
/// diagonal unitary, v and w are linearly independent Hadamards and w v^H is
/// not diagonal. Each precondition failure is reported by name.
ComplexMatrix sr4_example(const ComplexMatrix& d, const ComplexMatrix& v, const ComplexMatrix& w,
                          const Tolerances& tol = {});

// ---------------------------------------------------------------------------
// Karlsson constraint validation
// ---------------------------------------------------------------------------

/// The sixteen unimodular parameters of the H2-reducible normal form.
struct KarlssonParams {
    Complex z1{1.0, 0.0}, z2{1.0, 0.0}, z3{1.0, 0.0}, z4{1.0, 0.0};
    Complex a1{1.0, 0.0}, a2{1.0, 0.0}, a3{1.0, 0.0};
    Complex b1{1.0, 0.0}, b2{1.0, 0.0}, b3{1.0, 0.0};
    Complex c1{1.0, 0.0}, c2{1.0, 0.0}, c3{1.0, 0.0};
    Complex d1{1.0, 0.0}, d2{1.0, 0.0}, d3{1.0, 0.0};
};

struct KarlssonReport {
    // One residual per constraint, in the fixed order:
    // z1z3, z2z3, z1z4, z2z4, a-sum, z3-weighted a-sum, b-sum, z3-weighted b-sum.
    std::array<double, 8> residuals{};
    std::array<std::string, 8> names{};
    bool satisfied = false;  // all residuals below tolerance
    ComplexMatrix assembled;
    bool assembled_is_unitary = false;
    bool assembled_is_chm = false;
};

/// Assemble the H2-reducible normal form from the parameters and report the
/// residual of each printed constraint. Never throws on constraint failure;
/// the report carries everything.
KarlssonReport karlsson_validate(const KarlssonParams& params, const Tolerances& tol = {});

}  // namespace mubkit
