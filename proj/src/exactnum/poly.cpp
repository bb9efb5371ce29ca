#include "exactnum/poly.hpp"

#include "exactnum/errors.hpp"

#include <algorithm>
#include <string>

namespace sextic::num {

Poly::Poly() : precision_(precision_bits()) {}

Poly::Poly(std::vector<BigComplex> coeffs) : coeffs_(std::move(coeffs)), precision_(precision_bits()) {
  normalize();
}

Poly::Poly(std::initializer_list<BigComplex> coeffs) : coeffs_(coeffs), precision_(precision_bits()) {
  normalize();
}

Poly Poly::constant(BigComplex c) { return Poly({std::move(c)}); }

Poly Poly::x() { return Poly({BigComplex(0), BigComplex(1)}); }

Poly Poly::monomial(BigComplex c, int power) {
  std::vector<BigComplex> v(static_cast<size_t>(power) + 1);
  v.back() = std::move(c);
  return Poly(std::move(v));
}

Poly Poly::from_roots(std::span<const BigComplex> roots) {
  Poly p = constant(BigComplex(1));
  for (const auto& r : roots) {
    p *= Poly({-r, BigComplex(1)});
  }
  return p;
}

void Poly::normalize() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) {
    coeffs_.pop_back();
  }
}

void Poly::check_precision(const Poly& o) const {
  if (precision_ != o.precision_) {
    throw Error(ErrorCode::PrecisionMismatch,
                "polynomials built at " + std::to_string(precision_) + " and " +
                    std::to_string(o.precision_) + " bits");
  }
}

int Poly::degree(const Real& tol) const {
  Real bound = tol * max_abs_coeff();
  for (int k = degree(); k >= 0; --k) {
    if (abs(coeffs_[static_cast<size_t>(k)]) > bound) return k;
  }
  return -1;
}

BigComplex Poly::coeff(int k) const {
  if (k < 0 || k > degree()) return {};
  return coeffs_[static_cast<size_t>(k)];
}

BigComplex Poly::operator()(const BigComplex& z) const {
  BigComplex acc;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc *= z;
    acc += *it;
  }
  return acc;
}

std::pair<BigComplex, Real> Poly::eval_with_bound(const BigComplex& z) const {
  BigComplex acc;
  Real bound;
  Real az = abs(z);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc *= z;
    acc += *it;
    bound = bound * az + abs(*it);
  }
  return {acc, bound};
}

Real Poly::max_abs_coeff() const {
  Real m;
  for (const auto& c : coeffs_) {
    Real a = abs(c);
    if (a > m) m = a;
  }
  return m;
}

Poly Poly::trimmed(const Real& tol) const {
  Poly r = *this;
  int d = degree(tol);
  r.coeffs_.resize(static_cast<size_t>(d + 1));
  return r;
}

bool Poly::is_even(const Real& tol) const {
  Real bound = tol * max_abs_coeff();
  for (size_t k = 1; k < coeffs_.size(); k += 2) {
    if (abs(coeffs_[k]) > bound) return false;
  }
  return true;
}

Poly Poly::even_part() const {
  Poly r = *this;
  for (size_t k = 1; k < r.coeffs_.size(); k += 2) {
    r.coeffs_[k] = BigComplex();
  }
  r.normalize();
  return r;
}

int Poly::low_order(const Real& tol) const {
  Real bound = tol * max_abs_coeff();
  for (int k = 0; k <= degree(); ++k) {
    if (abs(coeffs_[static_cast<size_t>(k)]) > bound) return k;
  }
  return degree() + 1;
}

Poly Poly::shift_down(int k) const {
  if (k <= 0) return *this;
  if (k > degree()) return Poly();
  Poly r;
  r.precision_ = precision_;
  r.coeffs_.assign(coeffs_.begin() + k, coeffs_.end());
  r.normalize();
  return r;
}

Poly Poly::shift_up(int k) const {
  if (k <= 0 || is_zero()) return *this;
  Poly r;
  r.precision_ = precision_;
  r.coeffs_.resize(static_cast<size_t>(k));
  r.coeffs_.insert(r.coeffs_.end(), coeffs_.begin(), coeffs_.end());
  return r;
}

Poly Poly::taylor_shift(const BigComplex& center) const {
  // Repeated synthetic division by (x - center).
  std::vector<BigComplex> c = coeffs_;
  const int n = degree();
  for (int i = 0; i < n; ++i) {
    for (int k = n - 1; k >= i; --k) {
      c[static_cast<size_t>(k)] += center * c[static_cast<size_t>(k + 1)];
    }
  }
  Poly r(std::move(c));
  r.precision_ = precision_;
  return r;
}

Poly Poly::derivative(int order) const {
  if (order < 1) {
    throw Error(ErrorCode::InvalidArgument, "derivative order must be at least 1");
  }
  std::vector<BigComplex> c = coeffs_;
  for (int o = 0; o < order; ++o) {
    if (c.empty()) break;
    for (size_t k = 1; k < c.size(); ++k) {
      c[k - 1] = c[k] * Real(static_cast<long>(k));
    }
    c.pop_back();
  }
  Poly r(std::move(c));
  r.precision_ = precision_;
  return r;
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  Poly r = *this;
  BigComplex inv = inverse(leading());
  for (auto& c : r.coeffs_) c *= inv;
  r.coeffs_.back() = BigComplex(1);
  return r;
}

std::pair<Poly, Poly> Poly::divmod(const Poly& divisor) const {
  check_precision(divisor);
  if (divisor.is_zero()) {
    throw Error(ErrorCode::InvalidArgument, "polynomial division by zero");
  }
  const int n = degree();
  const int d = divisor.degree();
  if (n < d) return {Poly(), *this};
  std::vector<BigComplex> rem = coeffs_;
  std::vector<BigComplex> quo(static_cast<size_t>(n - d + 1));
  BigComplex inv_lead = inverse(divisor.leading());
  for (int k = n - d; k >= 0; --k) {
    BigComplex q = rem[static_cast<size_t>(k + d)] * inv_lead;
    for (int j = 0; j <= d; ++j) {
      rem[static_cast<size_t>(k + j)] -= q * divisor.coeffs_[static_cast<size_t>(j)];
    }
    quo[static_cast<size_t>(k)] = std::move(q);
  }
  rem.resize(static_cast<size_t>(d));
  return {Poly(std::move(quo)), Poly(std::move(rem))};
}

Poly& Poly::operator+=(const Poly& o) {
  check_precision(o);
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
  normalize();
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  check_precision(o);
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
  normalize();
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  a.check_precision(b);
  if (a.is_zero() || b.is_zero()) return Poly();
  std::vector<BigComplex> c(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i].is_zero()) continue;
    for (size_t j = 0; j < b.coeffs_.size(); ++j) {
      if (b.coeffs_[j].is_zero()) continue;
      c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
  }
  Poly r(std::move(c));
  r.precision_ = a.precision_;
  return r;
}

Poly& Poly::operator*=(const Poly& o) { return *this = *this * o; }

Poly& Poly::operator*=(const BigComplex& s) {
  for (auto& c : coeffs_) c *= s;
  normalize();
  return *this;
}

Poly operator-(const Poly& a) {
  Poly r = a;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

Poly poly_arith(const Poly& a, const Poly& b, PolyOp op) {
  switch (op) {
    case PolyOp::Add: return a + b;
    case PolyOp::Sub: return a - b;
    case PolyOp::Mul: return a * b;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown polynomial operation");
}

Poly poly_derivative(const Poly& p, int order) { return p.derivative(order); }

Real relative_difference(const Poly& a, const Poly& b) {
  Real scale = max(max(a.max_abs_coeff(), b.max_abs_coeff()), Real(1));
  return (a - b).max_abs_coeff() / scale;
}

}  // namespace sextic::num
