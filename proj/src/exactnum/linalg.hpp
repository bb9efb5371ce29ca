#pragma once

#include "exactnum/bigcomplex.hpp"

#include <vector>

namespace sextic::num {

using Matrix = std::vector<std::vector<BigComplex>>;

Matrix zeros(size_t rows, size_t cols);

/// Solves A x = b by Gaussian elimination with partial pivoting.  Throws
/// SingularJacobian when a pivot falls below rel_pivot * max|A|.
std::vector<BigComplex> solve_linear(Matrix A, std::vector<BigComplex> b, const Real& rel_pivot);

/// Conjugate transpose product A^H A and A^H b, for normal equations.
Matrix gram(const Matrix& A);
std::vector<BigComplex> adjoint_apply(const Matrix& A, const std::vector<BigComplex>& b);

Real max_abs(const std::vector<BigComplex>& v);
Real norm2(const std::vector<BigComplex>& v);

}  // namespace sextic::num
