#include "exactnum/rational.hpp"

#include "exactnum/errors.hpp"
#include "exactnum/roots.hpp"

#include <algorithm>

namespace sextic::num {

RationalFn::RationalFn() : den_(Poly::constant(BigComplex(1))) {}

RationalFn::RationalFn(Poly numerator) : num_(std::move(numerator)), den_(Poly::constant(BigComplex(1))) {}

RationalFn::RationalFn(Poly numerator, Poly denominator) : num_(std::move(numerator)), den_(std::move(denominator)) {
  if (den_.is_zero()) {
    throw Error(ErrorCode::InvalidArgument, "rational function with zero denominator");
  }
  BigComplex lead = den_.leading();
  if (!(lead == BigComplex(1))) {
    BigComplex inv = inverse(lead);
    num_ *= inv;
    den_ = den_.monic();
  }
}

BigComplex RationalFn::operator()(const BigComplex& z) const { return num_(z) / den_(z); }

RationalFn RationalFn::derivative() const {
  return {num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_};
}

RationalFn operator+(const RationalFn& a, const RationalFn& b) {
  if (a.den_.degree() == 0 && b.den_.degree() == 0) return {a.num_ + b.num_, a.den_};
  return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
}

RationalFn operator-(const RationalFn& a, const RationalFn& b) { return a + (-b); }

RationalFn operator*(const RationalFn& a, const RationalFn& b) { return {a.num_ * b.num_, a.den_ * b.den_}; }

RationalFn operator/(const RationalFn& a, const RationalFn& b) {
  if (b.num_.is_zero()) throw Error(ErrorCode::InvalidArgument, "rational division by zero");
  return {a.num_ * b.den_, a.den_ * b.num_};
}

RationalFn operator-(const RationalFn& a) { return {-a.num_, a.den_}; }

BigComplex LaurentSeries::at(int k) const {
  int idx = k - lowest;
  if (idx < 0 || idx >= static_cast<int>(coeffs.size())) return {};
  return coeffs[static_cast<size_t>(idx)];
}

std::vector<BigComplex> series_divide(const Poly& a, const Poly& b, int n) {
  std::vector<BigComplex> q(static_cast<size_t>(std::max(n, 0)));
  BigComplex inv_b0 = inverse(b.coeff(0));
  for (int k = 0; k < n; ++k) {
    BigComplex acc = a.coeff(k);
    for (int j = 1; j <= std::min(k, b.degree()); ++j) {
      acc -= b.coeff(j) * q[static_cast<size_t>(k - j)];
    }
    q[static_cast<size_t>(k)] = acc * inv_b0;
  }
  return q;
}

LaurentSeries laurent_expand(const RationalFn& f, const BigComplex& centre, int lowest_order, int n_terms,
                             const Real& tol) {
  if (n_terms < 1) throw Error(ErrorCode::InvalidArgument, "n_terms must be positive");
  Poly a = f.num().taylor_shift(centre);
  Poly b = f.den().taylor_shift(centre);
  int da = a.is_zero() ? 0 : a.low_order(tol);
  int db = b.low_order(tol);
  if (db > b.degree()) {
    throw Error(ErrorCode::Malformed, "denominator vanishes identically");
  }
  LaurentSeries out;
  out.lowest = lowest_order;
  out.coeffs.assign(static_cast<size_t>(n_terms), BigComplex());
  if (a.is_zero() || da > a.degree()) {
    out.order = 0;
    return out;
  }
  out.order = da - db;
  a = a.shift_down(da);
  b = b.shift_down(db);
  int highest = lowest_order + n_terms - 1;
  int need = highest - out.order + 1;
  if (need <= 0) return out;
  auto q = series_divide(a, b, need);
  for (int k = std::max(lowest_order, out.order); k <= highest; ++k) {
    out.coeffs[static_cast<size_t>(k - lowest_order)] = q[static_cast<size_t>(k - out.order)];
  }
  return out;
}

LaurentSeries laurent_expand(const RationalFn& f, const BigComplex& centre, int lowest_order, int n_terms) {
  return laurent_expand(f, centre, lowest_order, n_terms, default_tolerance());
}

namespace {

Poly divide_out(const Poly& p, const BigComplex& r, int times) {
  Poly linear({-r, BigComplex(1)});
  Poly q = p;
  for (int k = 0; k < times; ++k) q = q.divmod(linear).first;
  return q;
}

}  // namespace

RationalFn rational_reduce(const RationalFn& f, const Real& tol) {
  if (f.den().degree() < 1) return f;
  if (f.num().is_zero()) return RationalFn(Poly());
  Poly num = f.num();
  Poly den = f.den();
  for (const auto& r : poly_roots(den, tol)) {
    Poly shifted = num.taylor_shift(r.value);
    int vanish = shifted.low_order(tol);
    int cancel = std::min(vanish, r.multiplicity);
    if (cancel <= 0) continue;
    num = divide_out(num, r.value, cancel);
    den = divide_out(den, r.value, cancel);
  }
  return {num, den};
}

Real rational_difference(const RationalFn& a, const RationalFn& b) {
  Poly lhs = a.num() * b.den();
  Poly rhs = b.num() * a.den();
  Real scale = max(max(lhs.max_abs_coeff(), rhs.max_abs_coeff()), Real(1));
  return (lhs - rhs).max_abs_coeff() / scale;
}

}  // namespace sextic::num
