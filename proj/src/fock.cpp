#include "bec/fock.hpp"

#include <cmath>

#include "bec/linalg.hpp"

namespace bec {

namespace {

Eigen::Index power_dimension(int modes, int cutoff) {
    Eigen::Index dim = 1;
    for (int i = 0; i < modes; ++i) dim *= cutoff + 1;
    return dim;
}

// Flat index of the first sector state with first-mode occupation n1; sector
// states are ordered lexicographically in (n1, n2).
Eigen::Index sector_offset(int n1, int total) {
    return static_cast<Eigen::Index>(n1) * (total + 1) -
           static_cast<Eigen::Index>(n1) * (n1 - 1) / 2;
}

}  // namespace

FockBasis::FockBasis(int mode_count, int cutoff) : FockBasis(mode_count, cutoff, std::nullopt) {}

FockBasis::FockBasis(int modes, int cutoff, std::optional<int> total)
    : modes_(modes), cutoff_(cutoff), total_(total) {
    if (modes_ < 1 || modes_ > 3) {
        throw std::invalid_argument("FockBasis: mode count must be 1, 2 or 3");
    }
    if (cutoff_ < 0) throw std::invalid_argument("FockBasis: cutoff must be nonnegative");
    if (total_) {
        if (modes_ != 3) {
            throw std::invalid_argument("FockBasis: fixed-total sectors exist only for three modes");
        }
        if (*total_ < 0) throw std::invalid_argument("FockBasis: total number must be nonnegative");
        dim_ = static_cast<Eigen::Index>(*total_ + 1) * (*total_ + 2) / 2;
    } else {
        dim_ = power_dimension(modes_, cutoff_);
    }
}

FockBasis FockBasis::three_mode_sector(int total_number) {
    return FockBasis(3, total_number, total_number);
}

Eigen::Index FockBasis::encode(const std::vector<int>& occupations) const {
    if (static_cast<int>(occupations.size()) != modes_) {
        throw std::invalid_argument("FockBasis::encode: wrong occupation count");
    }
    for (int n : occupations) {
        if (n < 0 || n > cutoff_) {
            throw std::out_of_range("FockBasis::encode: occupation outside cutoff");
        }
    }
    if (total_) {
        const int sum = occupations[0] + occupations[1] + occupations[2];
        if (sum != *total_) {
            throw std::out_of_range("FockBasis::encode: occupations outside the sector");
        }
        return sector_offset(occupations[0], *total_) + occupations[1];
    }
    Eigen::Index index = 0;
    for (int m = 0; m < modes_; ++m) index = index * (cutoff_ + 1) + occupations[m];
    return index;
}

std::vector<int> FockBasis::decode(Eigen::Index index) const {
    if (index < 0 || index >= dim_) throw std::out_of_range("FockBasis::decode: index out of range");
    if (total_) {
        const int total = *total_;
        int n1 = 0;
        while (index >= sector_offset(n1 + 1, total)) ++n1;
        const int n2 = static_cast<int>(index - sector_offset(n1, total));
        return {n1, n2, total - n1 - n2};
    }
    std::vector<int> occupations(static_cast<std::size_t>(modes_));
    for (int m = modes_ - 1; m >= 0; --m) {
        occupations[static_cast<std::size_t>(m)] = static_cast<int>(index % (cutoff_ + 1));
        index /= cutoff_ + 1;
    }
    return occupations;
}

int FockBasis::occupation(Eigen::Index index, int mode) const {
    if (mode < 1 || mode > modes_) throw std::out_of_range("FockBasis::occupation: bad mode");
    return decode(index)[static_cast<std::size_t>(mode - 1)];
}

int FockBasis::total_occupation(Eigen::Index index) const {
    const std::vector<int> occ = decode(index);
    int sum = 0;
    for (int n : occ) sum += n;
    return sum;
}

QuantumState::QuantumState(FockBasis basis, Vector amplitudes)
    : basis_(std::move(basis)), amps_(std::move(amplitudes)) {
    if (amps_.size() != basis_.dimension()) {
        throw std::invalid_argument("QuantumState: amplitude count does not match basis dimension");
    }
}

QuantumState QuantumState::vacuum(const FockBasis& basis) {
    return basis_state(basis, std::vector<int>(static_cast<std::size_t>(basis.mode_count()), 0));
}

QuantumState QuantumState::basis_state(const FockBasis& basis, const std::vector<int>& occupations) {
    Vector amps = Vector::Zero(basis.dimension());
    amps(basis.encode(occupations)) = Complex(1.0, 0.0);
    return QuantumState(basis, std::move(amps));
}

QuantumState QuantumState::normalized() const {
    const double n = norm();
    if (n == 0.0) throw std::invalid_argument("QuantumState::normalized: zero state");
    return QuantumState(basis_, amps_ / n);
}

double QuantumState::tail_weight() const {
    const int cutoff = basis_.cutoff();
    std::vector<double> per_mode(static_cast<std::size_t>(basis_.mode_count()), 0.0);
    for (Eigen::Index i = 0; i < amps_.size(); ++i) {
        const double w = std::norm(amps_(i));
        if (w == 0.0) continue;
        const std::vector<int> occ = basis_.decode(i);
        for (std::size_t m = 0; m < occ.size(); ++m) {
            if (occ[m] >= cutoff - 1) per_mode[m] += w;
        }
    }
    double tail = 0.0;
    for (double w : per_mode) tail = std::max(tail, w);
    return tail;
}

LinearOperator::LinearOperator(FockBasis basis, Matrix entries)
    : basis_(std::move(basis)), mat_(std::move(entries)) {
    if (mat_.rows() != basis_.dimension() || mat_.cols() != basis_.dimension()) {
        throw std::invalid_argument("LinearOperator: matrix shape does not match basis dimension");
    }
}

LinearOperator LinearOperator::identity(const FockBasis& basis) {
    LinearOperator op(basis, Matrix::Identity(basis.dimension(), basis.dimension()));
    op.hermitian_ = true;
    op.unitary_ = true;
    return op;
}

LinearOperator LinearOperator::hermitian(FockBasis basis, Matrix entries, double tol) {
    const double defect = hermiticity_defect(entries);
    if (defect > tol) {
        throw std::invalid_argument("LinearOperator::hermitian: defect " + std::to_string(defect) +
                                    " exceeds tolerance");
    }
    LinearOperator op(std::move(basis), std::move(entries));
    op.hermitian_ = true;
    return op;
}

LinearOperator LinearOperator::unitary(FockBasis basis, Matrix entries, double tol) {
    const Eigen::Index n = entries.rows();
    const double defect =
        (entries.adjoint() * entries - Matrix::Identity(n, n)).cwiseAbs().maxCoeff();
    if (defect > tol) {
        throw std::invalid_argument("LinearOperator::unitary: defect " + std::to_string(defect) +
                                    " exceeds tolerance");
    }
    LinearOperator op(std::move(basis), std::move(entries));
    op.unitary_ = true;
    return op;
}

LinearOperator LinearOperator::unitary_blocked(FockBasis basis, Matrix entries,
                                               const std::vector<std::vector<Eigen::Index>>& groups,
                                               double tol) {
    const Eigen::Index n = entries.rows();
    if (entries.cols() != n) throw std::invalid_argument("unitary_blocked: matrix must be square");

    std::vector<Eigen::Index> group_of(static_cast<std::size_t>(n), -1);
    for (std::size_t g = 0; g < groups.size(); ++g) {
        for (Eigen::Index idx : groups[g]) {
            if (idx < 0 || idx >= n || group_of[static_cast<std::size_t>(idx)] != -1) {
                throw std::invalid_argument("unitary_blocked: groups must partition the index set");
            }
            group_of[static_cast<std::size_t>(idx)] = static_cast<Eigen::Index>(g);
        }
    }
    for (Eigen::Index g : group_of) {
        if (g == -1) throw std::invalid_argument("unitary_blocked: groups must cover every index");
    }
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index i = 0; i < n; ++i) {
            if (group_of[static_cast<std::size_t>(i)] != group_of[static_cast<std::size_t>(j)] &&
                entries(i, j) != Complex(0.0, 0.0)) {
                throw std::invalid_argument("unitary_blocked: nonzero entry outside the blocks");
            }
        }
    }
    for (const auto& group : groups) {
        const Eigen::Index m = static_cast<Eigen::Index>(group.size());
        if (m == 0) continue;
        Matrix block(m, m);
        for (Eigen::Index i = 0; i < m; ++i) {
            for (Eigen::Index j = 0; j < m; ++j) block(i, j) = entries(group[i], group[j]);
        }
        const double defect =
            (block.adjoint() * block - Matrix::Identity(m, m)).cwiseAbs().maxCoeff();
        if (defect > tol) {
            throw std::invalid_argument("unitary_blocked: block defect " + std::to_string(defect) +
                                        " exceeds tolerance");
        }
    }
    LinearOperator op(std::move(basis), std::move(entries));
    op.unitary_ = true;
    return op;
}

LinearOperator LinearOperator::adjoint() const {
    LinearOperator op(basis_, mat_.adjoint());
    op.hermitian_ = hermitian_;
    op.unitary_ = unitary_;
    return op;
}

QuantumState SectorDecomposition::reassembled() const {
    if (sectors.empty()) throw std::invalid_argument("SectorDecomposition: no sectors");
    Vector amps = Vector::Zero(sectors.front().component.basis().dimension());
    for (const SectorComponent& s : sectors) amps += s.component.amplitudes();
    return QuantumState(sectors.front().component.basis(), std::move(amps));
}

std::pair<LinearOperator, LinearOperator> make_ladder(const FockBasis& basis, int mode) {
    if (basis.total_number()) {
        throw std::invalid_argument("make_ladder: single-mode ladders do not preserve a sector");
    }
    if (mode < 1 || mode > basis.mode_count()) {
        throw std::out_of_range("make_ladder: mode out of range");
    }
    const Eigen::Index dim = basis.dimension();
    Matrix lower = Matrix::Zero(dim, dim);
    for (Eigen::Index j = 0; j < dim; ++j) {
        std::vector<int> occ = basis.decode(j);
        int& n = occ[static_cast<std::size_t>(mode - 1)];
        if (n == 0) continue;
        const double coeff = std::sqrt(static_cast<double>(n));
        --n;
        lower(basis.encode(occ), j) = coeff;
    }
    LinearOperator a(basis, lower);
    return {a, a.adjoint()};
}

LinearOperator number_op(const FockBasis& basis, int mode) {
    if (mode < 1 || mode > basis.mode_count()) throw std::out_of_range("number_op: mode out of range");
    const Eigen::Index dim = basis.dimension();
    Matrix mat = Matrix::Zero(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) mat(i, i) = static_cast<double>(basis.occupation(i, mode));
    return LinearOperator::hermitian(basis, std::move(mat));
}

LinearOperator total_number_op(const FockBasis& basis) {
    const Eigen::Index dim = basis.dimension();
    Matrix mat = Matrix::Zero(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) mat(i, i) = static_cast<double>(basis.total_occupation(i));
    return LinearOperator::hermitian(basis, std::move(mat));
}

LinearOperator tensor(const LinearOperator& a, const LinearOperator& b) {
    const FockBasis& ba = a.basis();
    const FockBasis& bb = b.basis();
    if (ba.mode_count() != 1 || bb.mode_count() != 1) {
        throw std::invalid_argument("tensor: factors must be single-mode operators");
    }
    if (ba.cutoff() != bb.cutoff()) throw std::invalid_argument("tensor: cutoffs must match");
    const Eigen::Index d = ba.dimension();
    Matrix out(d * d, d * d);
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) {
            out.block(i * d, j * d, d, d) = a.matrix()(i, j) * b.matrix();
        }
    }
    LinearOperator op(FockBasis::two_mode(ba.cutoff()), std::move(out));
    op.hermitian_ = a.hermitian_flag() && b.hermitian_flag();
    op.unitary_ = a.unitary_flag() && b.unitary_flag();
    return op;
}

QuantumState product_state(const QuantumState& a, const QuantumState& b) {
    const FockBasis& ba = a.basis();
    const FockBasis& bb = b.basis();
    if (ba.mode_count() != 1 || bb.mode_count() != 1) {
        throw std::invalid_argument("product_state: factors must be single-mode states");
    }
    if (ba.cutoff() != bb.cutoff()) throw std::invalid_argument("product_state: cutoffs must match");
    const Eigen::Index d = ba.dimension();
    Vector amps(d * d);
    for (Eigen::Index i = 0; i < d; ++i) amps.segment(i * d, d) = a.amplitudes()(i) * b.amplitudes();
    return QuantumState(FockBasis::two_mode(ba.cutoff()), std::move(amps));
}

QuantumState apply(const LinearOperator& op, const QuantumState& psi) {
    if (op.basis() != psi.basis()) throw std::invalid_argument("apply: basis mismatch");
    return QuantumState(psi.basis(), op.matrix() * psi.amplitudes());
}

Complex inner(const QuantumState& a, const QuantumState& b) {
    if (a.basis() != b.basis()) throw std::invalid_argument("inner: basis mismatch");
    return a.amplitudes().dot(b.amplitudes());
}

SectorDecomposition sector_split(const QuantumState& psi) {
    const FockBasis& basis = psi.basis();
    const int max_total =
        basis.total_number() ? *basis.total_number() : basis.mode_count() * basis.cutoff();
    std::vector<Vector> parts(static_cast<std::size_t>(max_total) + 1,
                              Vector::Zero(basis.dimension()));
    for (Eigen::Index i = 0; i < basis.dimension(); ++i) {
        parts[static_cast<std::size_t>(basis.total_occupation(i))](i) = psi.amplitudes()(i);
    }
    SectorDecomposition result;
    result.sectors.reserve(parts.size());
    for (int total = 0; total <= max_total; ++total) {
        Vector& part = parts[static_cast<std::size_t>(total)];
        const double weight = part.squaredNorm();
        result.sectors.push_back({total, QuantumState(basis, std::move(part)), weight});
    }
    return result;
}

std::vector<std::vector<Eigen::Index>> total_number_groups(const FockBasis& basis) {
    const int max_total =
        basis.total_number() ? *basis.total_number() : basis.mode_count() * basis.cutoff();
    std::vector<std::vector<Eigen::Index>> groups;
    if (basis.total_number()) {
        groups.resize(1);
        groups[0].resize(static_cast<std::size_t>(basis.dimension()));
        for (Eigen::Index i = 0; i < basis.dimension(); ++i) groups[0][static_cast<std::size_t>(i)] = i;
        return groups;
    }
    groups.resize(static_cast<std::size_t>(max_total) + 1);
    for (Eigen::Index i = 0; i < basis.dimension(); ++i) {
        groups[static_cast<std::size_t>(basis.total_occupation(i))].push_back(i);
    }
    return groups;
}

}  // namespace bec
