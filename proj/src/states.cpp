#include "bec/states.hpp"

#include <cmath>
#include <numbers>

#include "bec/linalg.hpp"

namespace bec {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_phase(double theta) {
    double w = std::fmod(theta, kTwoPi);
    if (w < 0.0) w += kTwoPi;
    return w;
}

}  // namespace

SqueezingParam::SqueezingParam(double r, double theta) : amplitude(r), phase(wrap_phase(theta)) {
    if (!std::isfinite(r) || r < 0.0) {
        throw std::invalid_argument("SqueezingParam: amplitude must be finite and nonnegative");
    }
    if (!std::isfinite(theta)) throw std::invalid_argument("SqueezingParam: phase must be finite");
}

SqueezingParam SqueezingParam::from_complex(Complex xi) {
    return SqueezingParam(std::abs(xi), xi == Complex(0.0, 0.0) ? 0.0 : std::arg(xi));
}

SqueezingParam SqueezingParam::negated() const { return rotated(std::numbers::pi); }

SqueezingParam SqueezingParam::rotated(double alpha) const {
    return SqueezingParam(amplitude, phase + alpha);
}

QuantumState squeezed_vacuum(const SqueezingParam& xi, const FockBasis& basis, double tail_tol) {
    if (basis.mode_count() != 1) {
        throw std::invalid_argument("squeezed_vacuum: single-mode basis required");
    }
    const int cutoff = basis.cutoff();

    // c_{2k} = (-e^{i theta} tanh r)^k sqrt((2k)!) / (2^k k!) / sqrt(cosh r),
    // accumulated by the exact ratio c_{2k} / c_{2k-2}.
    const Complex ratio = -std::polar(std::tanh(xi.amplitude), xi.phase);
    Vector amps = Vector::Zero(basis.dimension());
    Complex c(1.0 / std::sqrt(std::cosh(xi.amplitude)), 0.0);
    amps(0) = c;
    for (int k = 1; 2 * k <= cutoff; ++k) {
        c *= ratio * std::sqrt(static_cast<double>(2 * k - 1) * (2 * k)) / (2.0 * k);
        amps(2 * k) = c;
    }
    QuantumState state(basis, std::move(amps));
    if (state.tail_weight() > tail_tol) {
        throw TruncationError("squeezed_vacuum: tail weight " + std::to_string(state.tail_weight()) +
                              " exceeds tolerance; raise the cutoff");
    }
    return state.normalized();
}

QuantumState two_mode_squeezed_vacuum(const SqueezingParam& zeta, const FockBasis& basis,
                                      double tail_tol) {
    if (basis.mode_count() != 2) {
        throw std::invalid_argument("two_mode_squeezed_vacuum: two-mode basis required");
    }
    const int cutoff = basis.cutoff();

    // Pair-ladder amplitudes (-e^{i theta} tanh s)^n / cosh s on |n,n>.
    const Complex ratio = -std::polar(std::tanh(zeta.amplitude), zeta.phase);
    Vector amps = Vector::Zero(basis.dimension());
    Complex c(1.0 / std::cosh(zeta.amplitude), 0.0);
    for (int n = 0; n <= cutoff; ++n) {
        amps(basis.encode({n, n})) = c;
        c *= ratio;
    }
    QuantumState state(basis, std::move(amps));
    if (state.tail_weight() > tail_tol) {
        throw TruncationError("two_mode_squeezed_vacuum: tail weight " +
                              std::to_string(state.tail_weight()) +
                              " exceeds tolerance; raise the cutoff");
    }
    return state.normalized();
}

LinearOperator basis_change(const FockBasis& basis) {
    if (basis.mode_count() != 2) throw std::invalid_argument("basis_change: two-mode basis required");
    const int cutoff = basis.cutoff();
    const Eigen::Index dim = basis.dimension();

    // Beam-splitter generator K = b1^+ b3 + b1 b3^+ (conserves total number).
    Matrix gen = Matrix::Zero(dim, dim);
    for (Eigen::Index j = 0; j < dim; ++j) {
        const std::vector<int> occ = basis.decode(j);
        const int n1 = occ[0];
        const int n3 = occ[1];
        if (n3 > 0 && n1 < cutoff) {
            gen(basis.encode({n1 + 1, n3 - 1}), j) +=
                std::sqrt(static_cast<double>(n1 + 1) * n3);
        }
        if (n1 > 0 && n3 < cutoff) {
            gen(basis.encode({n1 - 1, n3 + 1}), j) +=
                std::sqrt(static_cast<double>(n1) * (n3 + 1));
        }
    }

    const std::vector<std::vector<Eigen::Index>> groups = total_number_groups(basis);
    Matrix w = expi_blocked(gen * (std::numbers::pi / 4.0), groups);

    // Right factor exp(-i pi n3 / 2): a diagonal phase, applied column-wise.
    for (Eigen::Index j = 0; j < dim; ++j) {
        const int n3 = basis.occupation(j, 2);
        w.col(j) *= std::polar(1.0, -std::numbers::pi / 2.0 * n3);
    }
    return LinearOperator::unitary_blocked(basis, std::move(w), groups);
}

RepRelationFidelities check_rep_relations(const SqueezingParam& xi, const FockBasis& basis,
                                          double tail_tol) {
    if (basis.mode_count() != 2) {
        throw std::invalid_argument("check_rep_relations: two-mode basis required");
    }
    const FockBasis single = FockBasis::single_mode(basis.cutoff());
    const QuantumState s = squeezed_vacuum(xi, single, tail_tol);
    const QuantumState s_neg = squeezed_vacuum(xi.negated(), single, tail_tol);

    const QuantumState both = product_state(s, s);
    const QuantumState opposite = product_state(s, s_neg);
    const QuantumState pair_i = two_mode_squeezed_vacuum(xi.rotated(std::numbers::pi / 2.0), basis,
                                                         tail_tol);
    const QuantumState pair = two_mode_squeezed_vacuum(xi, basis, tail_tol);

    const LinearOperator w = basis_change(basis);
    const QuantumState both_rot = apply(w, both);
    const QuantumState opposite_rot = apply(w, opposite);
    // <pair | W^+ both> computed as <W pair | both> to avoid forming W^+.
    const QuantumState pair_bare_image = apply(w, pair);

    RepRelationFidelities out{};
    out.f1 = std::norm(inner(opposite, both_rot));
    out.f2 = std::norm(inner(pair_i, opposite_rot));
    out.f3 = std::norm(inner(pair_bare_image, both));
    return out;
}

}  // namespace bec
