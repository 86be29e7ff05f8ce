#include "bec/linalg.hpp"

#include <cmath>
#include <stdexcept>

namespace bec {

namespace {

// [13/13] Pade numerator coefficients for exp.
constexpr double kPade13[] = {
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0,
    129060195264000.0,   10559470521600.0,    670442572800.0,     33522128640.0,
    1323241920.0,        40840800.0,          960960.0,           16380.0,
    182.0,               1.0};

// 1-norm threshold above which the argument is scaled down.
constexpr double kTheta13 = 5.371920351148152;

Matrix pade13(const Matrix& a) {
    const Eigen::Index n = a.rows();
    const Matrix id = Matrix::Identity(n, n);
    const Matrix a2 = a * a;
    const Matrix a4 = a2 * a2;
    const Matrix a6 = a4 * a2;
    const Matrix u =
        a * (a6 * (kPade13[13] * a6 + kPade13[11] * a4 + kPade13[9] * a2) + kPade13[7] * a6 +
             kPade13[5] * a4 + kPade13[3] * a2 + kPade13[1] * id);
    const Matrix v = a6 * (kPade13[12] * a6 + kPade13[10] * a4 + kPade13[8] * a2) +
                     kPade13[6] * a6 + kPade13[4] * a4 + kPade13[2] * a2 + kPade13[0] * id;
    return (v - u).partialPivLu().solve(v + u);
}

}  // namespace

Matrix expm(const Matrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("expm: matrix must be square");
    if (a.rows() == 0) return a;

    const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
    int squarings = 0;
    if (norm1 > kTheta13) {
        squarings = static_cast<int>(std::ceil(std::log2(norm1 / kTheta13)));
    }
    Matrix result = pade13(a / std::pow(2.0, squarings));
    for (int i = 0; i < squarings; ++i) result = result * result;
    return result;
}

Matrix expi_blocked(const Matrix& a, const std::vector<std::vector<Eigen::Index>>& groups) {
    if (a.rows() != a.cols()) throw std::invalid_argument("expi_blocked: matrix must be square");
    const Eigen::Index n = a.rows();

    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    for (const auto& group : groups) {
        for (Eigen::Index idx : group) {
            if (idx < 0 || idx >= n) throw std::invalid_argument("expi_blocked: index out of range");
            if (seen[static_cast<std::size_t>(idx)]) {
                throw std::invalid_argument("expi_blocked: groups must not overlap");
            }
            seen[static_cast<std::size_t>(idx)] = 1;
        }
    }
    for (char s : seen) {
        if (!s) throw std::invalid_argument("expi_blocked: groups must cover every index");
    }

    Matrix out = Matrix::Zero(n, n);
    for (const auto& group : groups) {
        const Eigen::Index m = static_cast<Eigen::Index>(group.size());
        if (m == 0) continue;
        Matrix block(m, m);
        for (Eigen::Index i = 0; i < m; ++i) {
            for (Eigen::Index j = 0; j < m; ++j) block(i, j) = a(group[i], group[j]);
        }
        Eigen::SelfAdjointEigenSolver<Matrix> solver(block);
        if (solver.info() != Eigen::Success) {
            throw std::runtime_error("expi_blocked: eigendecomposition failed");
        }
        const Eigen::VectorXcd phases =
            (Complex(0.0, 1.0) * solver.eigenvalues().cast<Complex>().array()).exp();
        const Matrix eblock =
            solver.eigenvectors() * phases.asDiagonal() * solver.eigenvectors().adjoint();
        for (Eigen::Index i = 0; i < m; ++i) {
            for (Eigen::Index j = 0; j < m; ++j) out(group[i], group[j]) = eblock(i, j);
        }
    }
    return out;
}

double hermiticity_defect(const Matrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("hermiticity_defect: matrix must be square");
    if (m.rows() == 0) return 0.0;
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

}  // namespace bec
