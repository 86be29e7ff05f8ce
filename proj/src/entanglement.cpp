#include "bec/entanglement.hpp"

#include <cmath>

#include "bec/linalg.hpp"

namespace bec {

DensityMatrix::DensityMatrix(Matrix rho, double tol) : rho_(std::move(rho)) {
    if (rho_.rows() != rho_.cols()) throw std::invalid_argument("DensityMatrix: matrix must be square");
    if (hermiticity_defect(rho_) > tol) {
        throw std::invalid_argument("DensityMatrix: matrix is not Hermitian");
    }
    if (std::abs(rho_.trace().real() - 1.0) > tol || std::abs(rho_.trace().imag()) > tol) {
        throw std::invalid_argument("DensityMatrix: trace must be one");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(rho_, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("DensityMatrix: eigendecomposition failed");
    }
    if (solver.eigenvalues().minCoeff() < -tol) {
        throw std::invalid_argument("DensityMatrix: matrix has a negative eigenvalue");
    }
}

DensityMatrix reduced_density(const QuantumState& state, int keep_mode, double norm_tol) {
    const FockBasis& basis = state.basis();
    if (basis.mode_count() != 2) throw std::invalid_argument("reduced_density: two-mode state required");
    if (keep_mode != 1 && keep_mode != 2) {
        throw std::out_of_range("reduced_density: keep_mode must be 1 or 2");
    }
    if (std::abs(state.norm() - 1.0) > norm_tol) {
        throw std::invalid_argument("reduced_density: state must be normalized");
    }
    const Eigen::Index d = basis.cutoff() + 1;
    // Mode 1 is the major index: amplitude(n1, n2) sits at n1*d + n2.
    const Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
        grid(state.amplitudes().data(), d, d);
    Matrix rho;
    if (keep_mode == 1) {
        rho = grid * grid.adjoint();
    } else {
        rho = (grid.adjoint() * grid).transpose();
    }
    rho /= rho.trace().real();
    return DensityMatrix(std::move(rho));
}

double entropy(const DensityMatrix& rho) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(rho.matrix(), Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw std::runtime_error("entropy: eigendecomposition failed");
    double s = 0.0;
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
        const double p = solver.eigenvalues()(i);
        if (p < -1e-10) throw std::invalid_argument("entropy: density matrix has a negative eigenvalue");
        if (p <= 0.0) continue;
        s -= p * std::log(p);
    }
    return s;
}

double purity(const DensityMatrix& rho) { return rho.matrix().squaredNorm(); }

}  // namespace bec
