#include "bec/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include "bec/linalg.hpp"
#include "bec/states.hpp"

namespace bec {

EvolutionTime EvolutionTime::from_time(double t) {
    if (!std::isfinite(t)) throw std::invalid_argument("EvolutionTime: time must be finite");
    return EvolutionTime{t, std::nullopt};
}

EvolutionTime EvolutionTime::from_tau(double tau, double q) {
    if (!std::isfinite(tau)) throw std::invalid_argument("EvolutionTime: tau must be finite");
    if (q == 0.0) throw std::invalid_argument("EvolutionTime: tau requires nonzero q");
    return EvolutionTime{tau / (7.0 * q), tau};
}

EvolutionTime EvolutionTime::with_tau(double t, double q) {
    if (!std::isfinite(t)) throw std::invalid_argument("EvolutionTime: time must be finite");
    if (q == 0.0) throw std::invalid_argument("EvolutionTime: tau requires nonzero q");
    return EvolutionTime{t, 7.0 * q * t};
}

void EvolutionTime::validate(double q) const {
    if (!tau) return;
    if (q == 0.0) throw std::invalid_argument("EvolutionTime: tau requires nonzero q");
    if (std::abs(*tau - 7.0 * q * t) > 1e-9 * std::max(1.0, std::abs(*tau))) {
        throw std::invalid_argument("EvolutionTime: tau does not equal 7 q t");
    }
}

Propagator::Propagator(const LinearOperator& hamiltonian) : basis_(hamiltonian.basis()) {
    if (!hamiltonian.hermitian_flag()) {
        throw std::invalid_argument("Propagator: Hamiltonian must carry the Hermitian flag");
    }
    const Matrix& h = hamiltonian.matrix();
    const Eigen::Index dim = h.rows();

    std::vector<std::vector<Eigen::Index>> groups = total_number_groups(basis_);
    std::vector<int> group_of(static_cast<std::size_t>(dim));
    for (std::size_t g = 0; g < groups.size(); ++g) {
        for (Eigen::Index idx : groups[g]) group_of[static_cast<std::size_t>(idx)] = static_cast<int>(g);
    }
    bool sector_blocked = true;
    for (Eigen::Index j = 0; j < dim && sector_blocked; ++j) {
        for (Eigen::Index i = 0; i < dim; ++i) {
            if (h(i, j) != Complex(0.0, 0.0) &&
                group_of[static_cast<std::size_t>(i)] != group_of[static_cast<std::size_t>(j)]) {
                sector_blocked = false;
                break;
            }
        }
    }
    if (!sector_blocked) {
        groups.clear();
        groups.emplace_back();
        groups.front().resize(static_cast<std::size_t>(dim));
        for (Eigen::Index i = 0; i < dim; ++i) groups.front()[static_cast<std::size_t>(i)] = i;
    }

    for (const auto& group : groups) {
        const Eigen::Index m = static_cast<Eigen::Index>(group.size());
        if (m == 0) continue;
        Matrix block(m, m);
        for (Eigen::Index a = 0; a < m; ++a) {
            for (Eigen::Index b = 0; b < m; ++b) block(a, b) = h(group[a], group[b]);
        }
        Eigen::SelfAdjointEigenSolver<Matrix> solver(block);
        if (solver.info() != Eigen::Success) {
            throw std::runtime_error("Propagator: eigendecomposition failed");
        }
        blocks_.push_back(Block{group, solver.eigenvalues(), solver.eigenvectors()});
    }
}

QuantumState Propagator::evolve(const QuantumState& psi0, double t) const {
    if (psi0.basis() != basis_) throw std::invalid_argument("Propagator::evolve: basis mismatch");
    if (t == 0.0) return psi0;
    Vector out = Vector::Zero(psi0.amplitudes().size());
    for (const Block& block : blocks_) {
        const Eigen::Index m = static_cast<Eigen::Index>(block.indices.size());
        Vector sub(m);
        for (Eigen::Index a = 0; a < m; ++a) sub(a) = psi0.amplitudes()(block.indices[a]);
        Vector coeffs = block.eigenvectors.adjoint() * sub;
        for (Eigen::Index a = 0; a < m; ++a) {
            coeffs(a) *= std::polar(1.0, -block.eigenvalues(a) * t);
        }
        sub = block.eigenvectors * coeffs;
        for (Eigen::Index a = 0; a < m; ++a) out(block.indices[a]) = sub(a);
    }
    return QuantumState(basis_, std::move(out));
}

QuantumState evolve(const LinearOperator& hamiltonian, const QuantumState& psi0, double t) {
    if (t == 0.0) {
        if (psi0.basis() != hamiltonian.basis()) throw std::invalid_argument("evolve: basis mismatch");
        return psi0;
    }
    return Propagator(hamiltonian).evolve(psi0, t);
}

QuantumState evolve_expm(const LinearOperator& hamiltonian, const QuantumState& psi0, double t) {
    if (psi0.basis() != hamiltonian.basis()) throw std::invalid_argument("evolve_expm: basis mismatch");
    if (!hamiltonian.hermitian_flag()) {
        throw std::invalid_argument("evolve_expm: Hamiltonian must carry the Hermitian flag");
    }
    if (t == 0.0) return psi0;
    const Matrix u = expm(Complex(0.0, -t) * hamiltonian.matrix());
    return QuantumState(psi0.basis(), u * psi0.amplitudes());
}

QuantumState evolve_rwa(const EffectiveParams& p, const QuantumState& psi0, double t) {
    const FockBasis& basis = psi0.basis();
    if (basis.mode_count() != 2) throw std::invalid_argument("evolve_rwa: two-mode state required");
    Vector amps = psi0.amplitudes();
    for (Eigen::Index i = 0; i < amps.size(); ++i) {
        if (amps(i) == Complex(0.0, 0.0)) continue;
        const std::vector<int> occ = basis.decode(i);
        amps(i) *= std::polar(1.0, -eigenvalue(occ[0], occ[1], p) * t);
    }
    return QuantumState(basis, std::move(amps));
}

double rwa_fidelity(const EffectiveParams& p, const QuantumState& psi0, double t) {
    const FockBasis& basis = psi0.basis();
    if (basis.mode_count() != 2) throw std::invalid_argument("rwa_fidelity: two-mode state required");
    const QuantumState exact = evolve(build_effective(p, basis), psi0, t);
    const LinearOperator w = basis_change(basis);
    const QuantumState approx_rot = evolve_rwa(p, apply(w, psi0), t);
    // |<exact | W^+ approx_rot>|^2 = |<W exact | approx_rot>|^2.
    return std::norm(inner(apply(w, exact), approx_rot));
}

AdiabaticResult adiabatic_fidelity(const RamanParams& p, const QuantumState& psi0, double t,
                                   int samples, int max_sector) {
    const FockBasis& basis = psi0.basis();
    if (basis.mode_count() != 2) throw std::invalid_argument("adiabatic_fidelity: two-mode state required");
    if (samples < 20) {
        throw std::invalid_argument("adiabatic_fidelity: at least 20 sample points required");
    }
    if (!psi0.is_normalized(1e-8)) {
        throw std::invalid_argument("adiabatic_fidelity: initial state must be normalized");
    }

    const EffectiveParams effective = effective_from_raman(p);
    const QuantumState reduced_final = evolve(build_effective(effective, basis), psi0, t);

    const std::vector<std::vector<Eigen::Index>> groups = total_number_groups(basis);
    std::vector<double> mid_population(static_cast<std::size_t>(samples), 0.0);
    Complex overlap(0.0, 0.0);

    for (std::size_t total = 0; total < groups.size(); ++total) {
        double weight = 0.0;
        for (Eigen::Index idx : groups[total]) weight += std::norm(psi0.amplitudes()(idx));
        if (weight <= 1e-14) continue;
        if (static_cast<int>(total) > max_sector) {
            throw TruncationError("adiabatic_fidelity: initial state has weight in sector " +
                                  std::to_string(total) + "; raise max_sector");
        }

        const int sector = static_cast<int>(total);
        const FockBasis sector_basis = FockBasis::three_mode_sector(sector);
        Vector embedded = Vector::Zero(sector_basis.dimension());
        for (Eigen::Index idx : groups[total]) {
            const std::vector<int> occ = basis.decode(idx);
            embedded(sector_basis.encode({occ[0], 0, occ[1]})) = psi0.amplitudes()(idx);
        }
        const QuantumState sector_state(sector_basis, std::move(embedded));
        const Propagator propagator(build_three_mode(p, sector));

        for (int k = 0; k < samples; ++k) {
            const double tk = t * k / (samples - 1);
            const QuantumState at_tk = propagator.evolve(sector_state, tk);
            double mid = 0.0;
            for (Eigen::Index i = 0; i < at_tk.amplitudes().size(); ++i) {
                const double w2 = std::norm(at_tk.amplitudes()(i));
                if (w2 > 0.0) mid += w2 * sector_basis.occupation(i, 2);
            }
            mid_population[static_cast<std::size_t>(k)] += mid;
        }

        const QuantumState at_t = propagator.evolve(sector_state, t);
        for (Eigen::Index i = 0; i < at_t.amplitudes().size(); ++i) {
            const std::vector<int> occ = sector_basis.decode(i);
            if (occ[1] != 0) continue;
            if (occ[0] > basis.cutoff() || occ[2] > basis.cutoff()) continue;
            overlap += std::conj(reduced_final.amplitudes()(basis.encode({occ[0], occ[2]}))) *
                       at_t.amplitudes()(i);
        }
    }

    AdiabaticResult result{};
    result.fidelity = std::norm(overlap);
    result.max_mid_population = *std::max_element(mid_population.begin(), mid_population.end());
    return result;
}

}  // namespace bec
