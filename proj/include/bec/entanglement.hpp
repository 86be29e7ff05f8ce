#pragma once

// Mode-entanglement diagnostics for two-mode states: reduced density
// matrices, von Neumann entropy, and purity.

#include "bec/fock.hpp"

namespace bec {

// A validated density matrix: Hermitian, unit trace, eigenvalues >= -tol.
class DensityMatrix {
public:
    DensityMatrix(Matrix rho, double tol = 1e-10);

    const Matrix& matrix() const noexcept { return rho_; }
    Eigen::Index dimension() const noexcept { return rho_.rows(); }

private:
    Matrix rho_;
};

// Partial trace of a normalized two-mode pure state over the mode not kept
// (keep_mode is 1-based).
DensityMatrix reduced_density(const QuantumState& state, int keep_mode, double norm_tol = 1e-8);

// Von Neumann entropy -tr(rho ln rho) in nats.  Eigenvalues in
// [-1e-10, 0] are clamped to zero; anything lower is an error.
double entropy(const DensityMatrix& rho);

// tr(rho^2).
double purity(const DensityMatrix& rho);

}  // namespace bec
