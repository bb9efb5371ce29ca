#include "exactnum/linalg.hpp"

#include "exactnum/errors.hpp"

namespace sextic::num {

Matrix zeros(size_t rows, size_t cols) { return Matrix(rows, std::vector<BigComplex>(cols)); }

std::vector<BigComplex> solve_linear(Matrix A, std::vector<BigComplex> b, const Real& rel_pivot) {
  const size_t n = A.size();
  Real scale;
  for (const auto& row : A) {
    for (const auto& v : row) scale = max(scale, abs(v));
  }
  if (scale.is_zero()) throw Error(ErrorCode::SingularJacobian, "zero matrix");
  for (size_t c = 0; c < n; ++c) {
    size_t piv = c;
    Real best = abs(A[c][c]);
    for (size_t r = c + 1; r < n; ++r) {
      Real v = abs(A[r][c]);
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    if (best <= rel_pivot * scale) throw Error(ErrorCode::SingularJacobian, "singular matrix in linear solve");
    std::swap(A[c], A[piv]);
    std::swap(b[c], b[piv]);
    BigComplex inv = inverse(A[c][c]);
    for (size_t r = c + 1; r < n; ++r) {
      if (A[r][c].is_zero()) continue;
      BigComplex f = A[r][c] * inv;
      for (size_t k = c; k < n; ++k) A[r][k] -= f * A[c][k];
      b[r] -= f * b[c];
    }
  }
  std::vector<BigComplex> x(n);
  for (size_t i = n; i-- > 0;) {
    BigComplex acc = b[i];
    for (size_t k = i + 1; k < n; ++k) acc -= A[i][k] * x[k];
    x[i] = acc / A[i][i];
  }
  return x;
}

Matrix gram(const Matrix& A) {
  const size_t rows = A.size();
  const size_t cols = rows ? A[0].size() : 0;
  Matrix G = zeros(cols, cols);
  for (size_t i = 0; i < cols; ++i) {
    for (size_t j = 0; j < cols; ++j) {
      BigComplex acc;
      for (size_t r = 0; r < rows; ++r) acc += conj(A[r][i]) * A[r][j];
      G[i][j] = acc;
    }
  }
  return G;
}

std::vector<BigComplex> adjoint_apply(const Matrix& A, const std::vector<BigComplex>& b) {
  const size_t rows = A.size();
  const size_t cols = rows ? A[0].size() : 0;
  std::vector<BigComplex> out(cols);
  for (size_t i = 0; i < cols; ++i) {
    for (size_t r = 0; r < rows; ++r) out[i] += conj(A[r][i]) * b[r];
  }
  return out;
}

Real max_abs(const std::vector<BigComplex>& v) {
  Real m;
  for (const auto& z : v) m = max(m, abs(z));
  return m;
}

Real norm2(const std::vector<BigComplex>& v) {
  Real s;
  for (const auto& z : v) s += norm(z);
  return sqrt(s);
}

}  // namespace sextic::num
