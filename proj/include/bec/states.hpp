#pragma once

// Squeezed-state preparation and the passive mode change between the bare
// mode pair b1, b3 and the rotated pair
//   B1 = (b1 + b3)/sqrt(2),   B3 = i(b1 - b3)/sqrt(2),
// equivalently b1 = (B1 - i B3)/sqrt(2), b3 = (B1 + i B3)/sqrt(2).
//
// Amplitude arrays for a two-mode state can be read in either frame; the
// unitary from basis_change() maps bare-frame amplitudes to rotated-frame
// amplitudes.

#include "bec/fock.hpp"

namespace bec {

// Polar squeezing parameter xi = r e^{i theta}, r >= 0, theta in [0, 2pi).
struct SqueezingParam {
    double amplitude = 0.0;
    double phase = 0.0;

    SqueezingParam() = default;
    SqueezingParam(double r, double theta);
    static SqueezingParam from_complex(Complex xi);

    Complex value() const { return std::polar(amplitude, phase); }
    SqueezingParam negated() const;            // xi -> -xi
    SqueezingParam rotated(double alpha) const;  // xi -> e^{i alpha} xi
};

// exp[-(xi b^+2 - xi* b^2)/2] |0>, renormalized on the truncated space.
// Supported only on even occupations.  Throws TruncationError if the top two
// levels carry more than tail_tol of the weight.
QuantumState squeezed_vacuum(const SqueezingParam& xi, const FockBasis& basis,
                             double tail_tol = 1e-8);

// exp(-zeta b1^+ b3^+ + zeta* b1 b3) |0,0>, supported on the |n,n> ladder
// with amplitudes (-e^{i arg zeta} tanh|zeta|)^n / cosh|zeta|.
QuantumState two_mode_squeezed_vacuum(const SqueezingParam& zeta, const FockBasis& basis,
                                      double tail_tol = 1e-8);

// Unitary W with W b1 W^+ = (b1 - i b3)/sqrt(2), W b3 W^+ = (b1 + i b3)/sqrt(2)
// and W|0,0> = |0,0>: applied to an amplitude array in the bare frame it
// yields the amplitudes in the rotated frame.  Exact on every total-number
// sector that fits under the cutoff.
LinearOperator basis_change(const FockBasis& basis);

// Fidelities of the three frame-change identities for product and pair
// squeezing (all three equal 1 up to truncation):
//   f1: bare product (xi, xi)      ==  rotated product (xi, -xi)
//   f2: bare product (xi, -xi)     ==  rotated pair-squeezed i*xi
//   f3: rotated product (xi, xi)   ==  bare pair-squeezed xi
struct RepRelationFidelities {
    double f1;
    double f2;
    double f3;
};

RepRelationFidelities check_rep_relations(const SqueezingParam& xi, const FockBasis& basis,
                                          double tail_tol = 1e-8);

}  // namespace bec
