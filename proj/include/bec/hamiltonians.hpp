#pragma once

// Hamiltonians of the Raman-coupled three-level condensate at three levels of
// reduction: the full three-mode form (per total-number sector), the
// effective two-mode form after adiabatic elimination of the middle level,
// and the rotating-wave form which is diagonal in the rotated-frame number
// basis.

#include "bec/fock.hpp"

namespace bec {

// Microscopic parameters: Raman couplings g1, g2, one-photon detunings
// delta1, delta2, self-collision strengths lambda1..lambda3 and
// cross-collision strengths lambda12, lambda13, lambda23 (one coefficient per
// unordered mode pair).
struct RamanParams {
    Complex g1{0.0, 0.0};
    Complex g2{0.0, 0.0};
    double delta1 = 0.0;
    double delta2 = 0.0;
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    double lambda3 = 0.0;
    double lambda12 = 0.0;
    double lambda13 = 0.0;
    double lambda23 = 0.0;
};

// Symmetric reduced parameters: tunnelling g, self-interaction q and
// cross-interaction chi.  omega is the derived linear coefficient of the
// rotating-wave form.
struct EffectiveParams {
    double g = 0.0;
    double q = 0.0;
    double chi = 0.0;

    double omega() const { return g - (chi + q) / 2.0; }
};

// General two-mode couplings (asymmetric form); build_effective is the
// symmetric wrapper.
struct TwoModeCouplings {
    double omega1 = 0.0;
    double omega3 = 0.0;
    Complex g{0.0, 0.0};  // coefficient of b3^+ b1 (conjugate on b1^+ b3)
    double lambda1 = 0.0;
    double lambda3 = 0.0;
    double lambda13 = 0.0;
};

// Parameter reduction for the symmetric case (equal detunings, |g1| = |g2|,
// lambda1 = lambda3): g = -|g1|^2/delta, q = lambda1, chi = lambda13/2.
EffectiveParams effective_from_raman(const RamanParams& p);

// Three-mode Hamiltonian restricted to the sector of fixed total number:
//   (d1-d2) n3 + d1 n2 - [g1 b2^+ b1 + g2 b2^+ b3 + h.c.]
//   + sum_i lambda_i n_i(n_i - 1) + sum_{i<j} lambda_ij n_i n_j.
LinearOperator build_three_mode(const RamanParams& p, int total_number);

LinearOperator build_two_mode(const TwoModeCouplings& c, const FockBasis& basis);

// g(n1 + n3) + q[n1(n1-1) + n3(n3-1)] + g(b1^+ b3 + b3^+ b1) + 2 chi n1 n3.
LinearOperator build_effective(const EffectiveParams& p, const FockBasis& basis);

// Rotating-wave Hamiltonian, diagonal in the rotated-frame number basis:
//   omega N + g(N1 - N3) + q[3 N^2 - (N1 - N3)^2]/4 + chi N^2 / 2 - chi N1 N3
// with N = N1 + N3.  Built term by term from the number values; the expanded
// closed form lives in eigenvalue() as an independent expression.
LinearOperator build_rwa(const EffectiveParams& p, const FockBasis& basis);

// Closed-form spectrum: omega(n+m) + g(n-m) + (q+chi)(n+m)^2/2 + (q-chi) n m.
double eigenvalue(int n, int m, const EffectiveParams& p);

// W H_eff W^+ - H_rwa: the part of the effective Hamiltonian dropped by the
// rotating-wave approximation, expressed in the rotated frame.  Its diagonal
// vanishes identically, and the whole residual vanishes when q = chi = 0.
// Reported on the complete total-number sectors only; entries touching the
// sectors the cutoff truncates are zeroed because the frame change is not
// faithful there.
LinearOperator rwa_residual(const EffectiveParams& p, const FockBasis& basis);

}  // namespace bec
