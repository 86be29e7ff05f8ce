#pragma once

// Time evolution: exact propagation of truncated-space Hamiltonians (with a
// spectral fast path for number-conserving ones), the analytic rotating-wave
// propagator, and the two model-validity diagnostics (rotating-wave fidelity
// and adiabatic-elimination fidelity).

#include <optional>

#include "bec/fock.hpp"
#include "bec/hamiltonians.hpp"

namespace bec {

// Physical time t, optionally paired with the scaled revival time tau = 7qt.
struct EvolutionTime {
    double t = 0.0;
    std::optional<double> tau;

    static EvolutionTime from_time(double t);
    static EvolutionTime from_tau(double tau, double q);  // t = tau / (7q)
    static EvolutionTime with_tau(double t, double q);    // records tau = 7qt

    void validate(double q) const;  // rejects an inconsistent (t, tau) pair
};

// Spectral propagator psi(t) = U exp(-i E t) U^+ psi(0).  When the
// Hamiltonian conserves total number the eigenproblem is solved per sector.
class Propagator {
public:
    explicit Propagator(const LinearOperator& hamiltonian);

    QuantumState evolve(const QuantumState& psi0, double t) const;
    const FockBasis& basis() const noexcept { return basis_; }

private:
    struct Block {
        std::vector<Eigen::Index> indices;
        Eigen::VectorXd eigenvalues;
        Matrix eigenvectors;
    };
    FockBasis basis_;
    std::vector<Block> blocks_;
};

// One-shot exact evolution (t = 0 returns psi0 unchanged).
QuantumState evolve(const LinearOperator& hamiltonian, const QuantumState& psi0, double t);

// Same result through the scaling-and-squaring exponential of -iHt; kept as
// an independent route for cross-checks.
QuantumState evolve_expm(const LinearOperator& hamiltonian, const QuantumState& psi0, double t);

// Analytic rotating-wave evolution: amplitude (n, m) acquires
// exp(-i eigenvalue(n, m, p) t).  The state is read in the rotated frame.
QuantumState evolve_rwa(const EffectiveParams& p, const QuantumState& psi0, double t);

// |<exact effective evolution | rotating-wave evolution>|^2 for a bare-frame
// initial state.
double rwa_fidelity(const EffectiveParams& p, const QuantumState& psi0, double t);

struct AdiabaticResult {
    double fidelity;            // three-mode vs effective two-mode evolution
    double max_mid_population;  // largest <n2> seen along the trajectory
};

// Evolve the middle-mode-vacuum embedding of a two-mode state under the full
// three-mode Hamiltonian, sector by sector, and compare against the effective
// two-mode evolution.  The middle-level population is sampled at `samples`
// points (at least 20) along [0, t].
AdiabaticResult adiabatic_fidelity(const RamanParams& p, const QuantumState& psi0, double t,
                                   int samples = 21, int max_sector = 64);

}  // namespace bec
