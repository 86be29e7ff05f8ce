#include "bec/hamiltonians.hpp"

#include <cmath>

#include "bec/linalg.hpp"
#include "bec/states.hpp"

namespace bec {

namespace {

bool close(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max({std::abs(a), std::abs(b), 1.0}); }

}  // namespace

EffectiveParams effective_from_raman(const RamanParams& p) {
    if (!close(p.delta1, p.delta2)) {
        throw std::invalid_argument("effective_from_raman: detunings must be equal");
    }
    if (p.delta1 == 0.0) {
        throw std::invalid_argument("effective_from_raman: detuning must be nonzero");
    }
    if (!close(std::abs(p.g1), std::abs(p.g2))) {
        throw std::invalid_argument("effective_from_raman: coupling magnitudes must be equal");
    }
    const Complex cross = p.g1 * std::conj(p.g2);
    if (std::abs(cross.imag()) > 1e-12 * std::max(std::abs(cross), 1.0)) {
        throw std::invalid_argument("effective_from_raman: couplings must share a phase");
    }
    if (!close(p.lambda1, p.lambda3)) {
        throw std::invalid_argument("effective_from_raman: self-collision strengths must be equal");
    }
    EffectiveParams out;
    out.g = -cross.real() / p.delta1;
    out.q = p.lambda1;
    out.chi = p.lambda13 / 2.0;
    return out;
}

LinearOperator build_three_mode(const RamanParams& p, int total_number) {
    const FockBasis basis = FockBasis::three_mode_sector(total_number);
    const Eigen::Index dim = basis.dimension();
    Matrix h = Matrix::Zero(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        const std::vector<int> occ = basis.decode(i);
        const double n1 = occ[0];
        const double n2 = occ[1];
        const double n3 = occ[2];
        h(i, i) = (p.delta1 - p.delta2) * n3 + p.delta1 * n2 + p.lambda1 * n1 * (n1 - 1) +
                  p.lambda2 * n2 * (n2 - 1) + p.lambda3 * n3 * (n3 - 1) + p.lambda12 * n1 * n2 +
                  p.lambda13 * n1 * n3 + p.lambda23 * n2 * n3;
        if (occ[0] > 0) {
            const Eigen::Index j = basis.encode({occ[0] - 1, occ[1] + 1, occ[2]});
            const double step = std::sqrt(n1 * (n2 + 1));
            h(j, i) += -p.g1 * step;
            h(i, j) += -std::conj(p.g1) * step;
        }
        if (occ[2] > 0) {
            const Eigen::Index j = basis.encode({occ[0], occ[1] + 1, occ[2] - 1});
            const double step = std::sqrt(n3 * (n2 + 1));
            h(j, i) += -p.g2 * step;
            h(i, j) += -std::conj(p.g2) * step;
        }
    }
    return LinearOperator::hermitian(basis, std::move(h));
}

LinearOperator build_two_mode(const TwoModeCouplings& c, const FockBasis& basis) {
    if (basis.mode_count() != 2) throw std::invalid_argument("build_two_mode: two-mode basis required");
    const int cutoff = basis.cutoff();
    const Eigen::Index dim = basis.dimension();
    Matrix h = Matrix::Zero(dim, dim);
    for (Eigen::Index j = 0; j < dim; ++j) {
        const std::vector<int> occ = basis.decode(j);
        const double n1 = occ[0];
        const double n3 = occ[1];
        h(j, j) = c.omega1 * n1 + c.omega3 * n3 + c.lambda1 * n1 * (n1 - 1) +
                  c.lambda3 * n3 * (n3 - 1) + c.lambda13 * n1 * n3;
        if (occ[0] > 0 && occ[1] < cutoff) {
            h(basis.encode({occ[0] - 1, occ[1] + 1}), j) += c.g * std::sqrt(n1 * (n3 + 1));
        }
        if (occ[1] > 0 && occ[0] < cutoff) {
            h(basis.encode({occ[0] + 1, occ[1] - 1}), j) += std::conj(c.g) * std::sqrt((n1 + 1) * n3);
        }
    }
    return LinearOperator::hermitian(basis, std::move(h));
}

LinearOperator build_effective(const EffectiveParams& p, const FockBasis& basis) {
    if (basis.mode_count() != 2) throw std::invalid_argument("build_effective: two-mode basis required");
    const int cutoff = basis.cutoff();
    const Eigen::Index dim = basis.dimension();
    Matrix h = Matrix::Zero(dim, dim);
    for (Eigen::Index j = 0; j < dim; ++j) {
        const std::vector<int> occ = basis.decode(j);
        const double n1 = occ[0];
        const double n3 = occ[1];
        h(j, j) = p.g * (n1 + n3) + p.q * (n1 * (n1 - 1) + n3 * (n3 - 1)) + 2.0 * p.chi * n1 * n3;
        if (occ[0] > 0 && occ[1] < cutoff) {
            h(basis.encode({occ[0] - 1, occ[1] + 1}), j) += p.g * std::sqrt(n1 * (n3 + 1));
        }
        if (occ[1] > 0 && occ[0] < cutoff) {
            h(basis.encode({occ[0] + 1, occ[1] - 1}), j) += p.g * std::sqrt((n1 + 1) * n3);
        }
    }
    return LinearOperator::hermitian(basis, std::move(h));
}

LinearOperator build_rwa(const EffectiveParams& p, const FockBasis& basis) {
    if (basis.mode_count() != 2) throw std::invalid_argument("build_rwa: two-mode basis required");
    const Eigen::Index dim = basis.dimension();
    Matrix h = Matrix::Zero(dim, dim);
    for (Eigen::Index j = 0; j < dim; ++j) {
        const std::vector<int> occ = basis.decode(j);
        const double n = occ[0];
        const double m = occ[1];
        const double total = n + m;
        const double imbalance = n - m;
        h(j, j) = p.omega() * total + p.g * imbalance +
                  p.q * (3.0 * total * total - imbalance * imbalance) / 4.0 +
                  p.chi * total * total / 2.0 - p.chi * n * m;
    }
    return LinearOperator::hermitian(basis, std::move(h));
}

double eigenvalue(int n, int m, const EffectiveParams& p) {
    const double total = n + m;
    return p.omega() * total + p.g * (n - m) + 0.5 * (p.q + p.chi) * total * total +
           (p.q - p.chi) * static_cast<double>(n) * m;
}

LinearOperator rwa_residual(const EffectiveParams& p, const FockBasis& basis) {
    const LinearOperator w = basis_change(basis);
    const Matrix rotated = w.matrix() * build_effective(p, basis).matrix() * w.matrix().adjoint();
    Matrix residual = rotated - build_rwa(p, basis).matrix();
    residual = (residual + residual.adjoint()).eval() / 2.0;
    // The frame change is only faithful on sectors the cutoff keeps complete;
    // entries touching the truncated corner sectors are meaningless, so drop
    // them rather than report truncation noise.
    const int cutoff = basis.cutoff();
    for (Eigen::Index i = 0; i < residual.rows(); ++i) {
        if (basis.total_occupation(i) <= cutoff) continue;
        residual.row(i).setZero();
        residual.col(i).setZero();
    }
    return LinearOperator::hermitian(basis, std::move(residual));
}

}  // namespace bec
