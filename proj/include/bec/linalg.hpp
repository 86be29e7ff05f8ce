#pragma once

// Small dense linear-algebra helpers shared across modules.

#include <vector>

#include <Eigen/Dense>

#include "bec/fock.hpp"

namespace bec {

// Matrix exponential by scaling-and-squaring with a [13/13] Pade approximant.
Matrix expm(const Matrix& a);

// exp(i*a) for a Hermitian matrix that is block diagonal with respect to the
// given index groups; each block is exponentiated independently.
Matrix expi_blocked(const Matrix& a, const std::vector<std::vector<Eigen::Index>>& groups);

// Largest absolute entry of m - m^dagger (hermiticity defect).
double hermiticity_defect(const Matrix& m);

}  // namespace bec
