#include "bec/revivals.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

namespace bec {

namespace {

void validate_branch_pair(int branches, int step) {
    if (branches < 1) throw std::invalid_argument("revival: branch count must be positive");
    if (step < 1 || step > branches) {
        throw std::invalid_argument("revival: step must satisfy 1 <= M <= N");
    }
    if (std::gcd(branches, step) != 1) {
        throw std::invalid_argument("revival: N and M must be coprime");
    }
}

}  // namespace

EffectiveParams resonant_params(double q, ResonanceConvention convention) {
    if (q == 0.0) throw std::invalid_argument("resonant_params: q must be nonzero");
    EffectiveParams p;
    p.q = q;
    p.chi = q / 2.0;
    p.g = convention == ResonanceConvention::literal ? -19.0 * q / 4.0 : -9.0 * q / 2.0;
    return p;
}

RevivalSpec::RevivalSpec(int n, int m, SqueezingParam xi_) : branches(n), step(m), xi(xi_) {
    validate_branch_pair(branches, step);
}

double RevivalSpec::tau() const { return 2.0 * std::numbers::pi * step / branches; }

Eigen::VectorXcd gauss_coefficients(int branches, int step) {
    validate_branch_pair(branches, step);
    const int count = 2 * branches;
    Eigen::VectorXcd c(count);
    for (int r = 0; r < count; ++r) {
        Complex sum(0.0, 0.0);
        for (int n = 0; n < count; ++n) {
            const double exponent =
                -std::numbers::pi / branches * (static_cast<double>(n) * r + static_cast<double>(step) * n * (n - 3));
            sum += std::polar(1.0, exponent);
        }
        c(r) = sum / static_cast<double>(count);
    }
    return c;
}

QuantumState target_superposition(const RevivalSpec& spec, const FockBasis& basis,
                                  Representation rep, double tail_tol) {
    if (basis.mode_count() != 2) {
        throw std::invalid_argument("target_superposition: two-mode basis required");
    }
    const Eigen::VectorXcd c = gauss_coefficients(spec.branches, spec.step);
    Vector amps = Vector::Zero(basis.dimension());
    for (int r = 0; r < c.size(); ++r) {
        if (std::abs(c(r)) < 1e-15) continue;
        const SqueezingParam branch =
            spec.xi.rotated(std::numbers::pi * r / spec.branches + std::numbers::pi / 2.0);
        amps += c(r) * two_mode_squeezed_vacuum(branch, basis, tail_tol).amplitudes();
    }
    QuantumState state = QuantumState(basis, std::move(amps)).normalized();
    if (state.tail_weight() > tail_tol) {
        throw TruncationError("target_superposition: tail weight exceeds tolerance; raise the cutoff");
    }
    if (rep == Representation::bare) {
        const LinearOperator w = basis_change(basis);
        return QuantumState(basis, w.matrix().adjoint() * state.amplitudes());
    }
    return state;
}

double fidelity(const QuantumState& a, const QuantumState& b) {
    const double na = a.norm_squared();
    const double nb = b.norm_squared();
    if (na == 0.0 || nb == 0.0) throw std::invalid_argument("fidelity: zero state");
    return std::norm(inner(a, b)) / (na * nb);
}

DecompositionResult decompose(const QuantumState& state, int branches, SqueezingParam xi,
                              double off_ladder_tol, double condition_limit) {
    const FockBasis& basis = state.basis();
    if (basis.mode_count() != 2) throw std::invalid_argument("decompose: two-mode state required");
    if (branches < 1) throw std::invalid_argument("decompose: branch count must be positive");
    const int cutoff = basis.cutoff();
    const int count = 2 * branches;

    Eigen::VectorXcd ladder(cutoff + 1);
    for (int n = 0; n <= cutoff; ++n) ladder(n) = state.amplitudes()(basis.encode({n, n}));
    const double off_ladder = state.norm_squared() - ladder.squaredNorm();
    if (off_ladder > off_ladder_tol) {
        throw std::invalid_argument("decompose: state has weight " + std::to_string(off_ladder) +
                                    " outside the pair ladder");
    }

    Eigen::MatrixXcd family(cutoff + 1, count);
    std::vector<double> phases(static_cast<std::size_t>(count));
    for (int r = 0; r < count; ++r) {
        const SqueezingParam branch =
            xi.rotated(std::numbers::pi * r / branches + std::numbers::pi / 2.0);
        phases[static_cast<std::size_t>(r)] = branch.phase;
        const QuantumState member = two_mode_squeezed_vacuum(branch, basis, off_ladder_tol);
        for (int n = 0; n <= cutoff; ++n) family(n, r) = member.amplitudes()(basis.encode({n, n}));
    }

    const Eigen::MatrixXcd gram = family.adjoint() * family;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(gram);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("decompose: Gram eigendecomposition failed");
    }
    const double low = solver.eigenvalues().minCoeff();
    const double high = solver.eigenvalues().maxCoeff();
    if (low <= 0.0 || high / low > condition_limit) {
        throw std::runtime_error(
            "decompose: branch family is numerically degenerate (condition number " +
            std::to_string(low > 0.0 ? high / low : std::numeric_limits<double>::infinity()) +
            "); increase the squeezing amplitude");
    }
    const Eigen::VectorXcd rhs = family.adjoint() * ladder;
    const Eigen::VectorXcd coeffs =
        solver.eigenvectors() *
        (solver.eigenvectors().adjoint() * rhs).cwiseQuotient(solver.eigenvalues().cast<Complex>());

    DecompositionResult result;
    result.phases = std::move(phases);
    result.coefficients = coeffs;
    result.residual = (family * coeffs - ladder).norm();
    return result;
}

}  // namespace bec
