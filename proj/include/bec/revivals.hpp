#pragma once

// Fractional revivals on the resonance manifold chi = q/2: resonant coupling
// conventions, Gauss-sum superposition coefficients, target superpositions of
// rotated squeezed states, and the inverse decomposition of a state into a
// phase-rotated squeezed family.

#include <vector>

#include "bec/fock.hpp"
#include "bec/hamiltonians.hpp"
#include "bec/states.hpp"

namespace bec {

// Two resonance conventions for the tunneling rate at chi = q/2.
//   literal: g = -19q/4, phase exponent ratio 22/7
//   derived: g = -9q/2, phase exponent ratio exactly 3, so the rotating-wave
//            phase is proportional to n(n - 3) and revivals close exactly.
enum class ResonanceConvention { literal, derived };

// Effective parameters on resonance for collision strength q > 0 (or q < 0;
// q = 0 is rejected).
EffectiveParams resonant_params(double q, ResonanceConvention convention);

// A fractional revival at scaled time tau = 2 pi M / N with gcd(N, M) = 1 and
// 1 <= M <= N, seeded by single-mode squeezing xi in both rotated modes.
struct RevivalSpec {
    int branches;  // N
    int step;      // M
    SqueezingParam xi;

    RevivalSpec(int n, int m, SqueezingParam xi);
    double tau() const;  // 2 pi M / N
};

// Gauss-sum coefficients c_r, r = 0 .. 2N - 1:
//   c_r = (1 / 2N) sum_{n=0}^{2N-1} exp{ -(pi i / N) [ n r + M n (n - 3) ] }.
// The vector is always unit-norm.
Eigen::VectorXcd gauss_coefficients(int branches, int step);

// Frame in which a revival target is expressed.
enum class Representation { rotated, bare };

// The normalized superposition sum_r c_r S2(i xi_r)|0,0) over the 2N branch
// parameters xi_r = xi rotated by pi r / N, r = 0 .. 2N - 1.  Each branch is
// a pair-squeezed ladder state in the rotated frame, equivalently the
// squeezed product |xi_r, -xi_r> in the bare frame.  `rotated` returns
// rotated-frame amplitudes; `bare` maps them back with the inverse frame
// change.
QuantumState target_superposition(const RevivalSpec& spec, const FockBasis& basis,
                                  Representation rep, double tail_tol = 1e-8);

// |<a|b>|^2 (states must share a basis).
double fidelity(const QuantumState& a, const QuantumState& b);

struct DecompositionResult {
    std::vector<double> phases;     // pair-squeezing phase of each branch
    Eigen::VectorXcd coefficients;  // least-squares coefficients
    double residual;                // || state - sum_r c_r S2(i xi_r)|0,0) ||
};

// Express `state` (rotated frame) in the 2N-member branch family
// S2(i xi e^{i pi r / N})|0,0) used by target_superposition.  Fails if the
// state has weight outside the pair ladder |n,n) or the family Gram matrix
// is too ill-conditioned to invert reliably.
DecompositionResult decompose(const QuantumState& state, int branches, SqueezingParam xi,
                              double off_ladder_tol = 1e-8, double condition_limit = 1e8);

}  // namespace bec
