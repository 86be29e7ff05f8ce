#pragma once

// Truncated bosonic Fock spaces: bases with an inclusive per-mode cutoff,
// state vectors, dense operators, ladder matrices, tensor products and
// total-number sector handling.
//
// Index convention (shared by every module): mode 1 is the most significant
// digit, so for occupations (n1, ..., nk) with cutoff c the flat index is
//   n1*(c+1)^(k-1) + n2*(c+1)^(k-2) + ... + nk.

#include <complex>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace bec {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

// Thrown when a constructed state keeps more weight near the cutoff than the
// caller allows (the state cannot be trusted at this truncation).
class TruncationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Number-state basis: either the full tensor basis over 1..3 modes with a
// per-mode cutoff, or the fixed-total-number sector of a three-mode space
// (the sector form is the only three-mode variant large enough to matter).
class FockBasis {
public:
    FockBasis(int mode_count, int cutoff);

    static FockBasis single_mode(int cutoff) { return FockBasis(1, cutoff); }
    static FockBasis two_mode(int cutoff) { return FockBasis(2, cutoff); }
    static FockBasis three_mode_sector(int total_number);

    int mode_count() const noexcept { return modes_; }
    int cutoff() const noexcept { return cutoff_; }
    std::optional<int> total_number() const noexcept { return total_; }
    Eigen::Index dimension() const noexcept { return dim_; }

    Eigen::Index encode(const std::vector<int>& occupations) const;
    std::vector<int> decode(Eigen::Index index) const;
    int occupation(Eigen::Index index, int mode) const;
    int total_occupation(Eigen::Index index) const;

    friend bool operator==(const FockBasis& a, const FockBasis& b) {
        return a.modes_ == b.modes_ && a.cutoff_ == b.cutoff_ && a.total_ == b.total_;
    }
    friend bool operator!=(const FockBasis& a, const FockBasis& b) { return !(a == b); }

private:
    FockBasis(int modes, int cutoff, std::optional<int> total);

    int modes_;
    int cutoff_;
    std::optional<int> total_;
    Eigen::Index dim_;
};

class QuantumState {
public:
    QuantumState(FockBasis basis, Vector amplitudes);

    static QuantumState vacuum(const FockBasis& basis);
    static QuantumState basis_state(const FockBasis& basis, const std::vector<int>& occupations);

    const FockBasis& basis() const noexcept { return basis_; }
    const Vector& amplitudes() const noexcept { return amps_; }
    Vector& amplitudes() noexcept { return amps_; }

    double norm() const { return amps_.norm(); }
    double norm_squared() const { return amps_.squaredNorm(); }
    bool is_normalized(double tol = 1e-12) const { return std::abs(norm() - 1.0) <= tol; }
    QuantumState normalized() const;

    // Squared amplitude weight at the top two occupation levels of any one
    // mode (maximum over modes); the truncation-quality diagnostic.
    double tail_weight() const;

private:
    FockBasis basis_;
    Vector amps_;
};

class LinearOperator {
public:
    LinearOperator(FockBasis basis, Matrix entries);

    static LinearOperator identity(const FockBasis& basis);
    // Verifying constructors: reject matrices violating the claimed property.
    static LinearOperator hermitian(FockBasis basis, Matrix entries, double tol = 1e-12);
    static LinearOperator unitary(FockBasis basis, Matrix entries, double tol = 1e-10);
    // Unitarity check for matrices that are block diagonal with respect to
    // the given index groups: verifies every entry outside the blocks is
    // exactly zero and each block is unitary, which together imply global
    // unitarity without forming the full U^+ U product.
    static LinearOperator unitary_blocked(FockBasis basis, Matrix entries,
                                          const std::vector<std::vector<Eigen::Index>>& groups,
                                          double tol = 1e-10);

    const FockBasis& basis() const noexcept { return basis_; }
    const Matrix& matrix() const noexcept { return mat_; }
    bool hermitian_flag() const noexcept { return hermitian_; }
    bool unitary_flag() const noexcept { return unitary_; }

    LinearOperator adjoint() const;

private:
    FockBasis basis_;
    Matrix mat_;
    bool hermitian_ = false;
    bool unitary_ = false;

    // Kronecker products inherit hermiticity and unitarity from the factors,
    // so tensor() may set the flags without re-verification.
    friend LinearOperator tensor(const LinearOperator& a, const LinearOperator& b);
};

struct SectorComponent {
    int total_number;
    QuantumState component;  // in the parent basis, zero outside the sector
    double weight;           // squared norm of the component
};

struct SectorDecomposition {
    std::vector<SectorComponent> sectors;
    // Exact coherent re-sum of the stored components.
    QuantumState reassembled() const;
};

// (annihilator, creator) for one mode; <n-1| a |n> = sqrt(n).
std::pair<LinearOperator, LinearOperator> make_ladder(const FockBasis& basis, int mode);
LinearOperator number_op(const FockBasis& basis, int mode);
LinearOperator total_number_op(const FockBasis& basis);

// Kronecker product of two single-mode operators with equal cutoffs; the
// first factor becomes mode 1 of the resulting two-mode operator.
LinearOperator tensor(const LinearOperator& a, const LinearOperator& b);
QuantumState product_state(const QuantumState& a, const QuantumState& b);

QuantumState apply(const LinearOperator& op, const QuantumState& psi);
// Conjugate-linear in the first argument.
Complex inner(const QuantumState& a, const QuantumState& b);

// Split a full-basis state into its fixed-total-number components.
SectorDecomposition sector_split(const QuantumState& psi);

// Indices of the basis grouped by total occupation (one group per total).
std::vector<std::vector<Eigen::Index>> total_number_groups(const FockBasis& basis);

}  // namespace bec
