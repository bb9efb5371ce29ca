#include "exactnum/real.hpp"

#include "exactnum/errors.hpp"

#include <cmath>
#include <ostream>
#include <vector>

namespace sextic {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid argument";
    case ErrorCode::PrecisionMismatch: return "precision mismatch";
    case ErrorCode::NonConvergence: return "non-convergence";
    case ErrorCode::SingularJacobian: return "singular jacobian";
    case ErrorCode::Collision: return "collision";
    case ErrorCode::StepUnderflow: return "step underflow";
    case ErrorCode::Degenerate: return "degenerate";
    case ErrorCode::Malformed: return "malformed input";
    case ErrorCode::NoSolutions: return "no solutions";
    case ErrorCode::Parse: return "parse error";
  }
  return "unknown";
}

}  // namespace sextic

namespace sextic::num {

namespace {
thread_local unsigned g_bits = kDefaultPrecisionBits;
}

unsigned precision_bits() { return g_bits; }

void set_precision_bits(unsigned bits) {
  if (bits < kMinPrecisionBits) {
    throw Error(ErrorCode::InvalidArgument,
                "precision must be at least " + std::to_string(kMinPrecisionBits) + " bits");
  }
  g_bits = bits;
}

PrecisionScope::PrecisionScope(unsigned bits) : saved_(g_bits) { set_precision_bits(bits); }
PrecisionScope::~PrecisionScope() { g_bits = saved_; }

Real::Real() {
  mpfr_init2(value_, g_bits);
  mpfr_set_zero(value_, 1);
}

Real::Real(double v) {
  mpfr_init2(value_, g_bits);
  mpfr_set_d(value_, v, MPFR_RNDN);
}

Real::Real(int v) {
  mpfr_init2(value_, g_bits);
  mpfr_set_si(value_, v, MPFR_RNDN);
}

Real::Real(long v) {
  mpfr_init2(value_, g_bits);
  mpfr_set_si(value_, v, MPFR_RNDN);
}

Real::Real(long long v) {
  mpfr_init2(value_, g_bits);
  mpfr_set_si(value_, static_cast<long>(v), MPFR_RNDN);
}

Real::Real(unsigned long v) {
  mpfr_init2(value_, g_bits);
  mpfr_set_ui(value_, v, MPFR_RNDN);
}

Real Real::parse(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw Error(ErrorCode::Parse, "empty number");
  Real r;
  char* end = nullptr;
  mpfr_strtofr(r.value_, s.c_str(), &end, 10, MPFR_RNDN);
  if (end != s.c_str() + s.size()) {
    throw Error(ErrorCode::Parse, "not a number: '" + s + "'");
  }
  return r;
}

Real::Real(const Real& other) {
  mpfr_init2(value_, g_bits);
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept {
  mpfr_init2(value_, mpfr_get_prec(other.value_));
  mpfr_swap(value_, other.value_);
}

Real& Real::operator=(const Real& other) {
  if (this != &other) {
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

Real& Real::operator=(Real&& other) noexcept {
  if (mpfr_get_prec(value_) == mpfr_get_prec(other.value_)) {
    mpfr_swap(value_, other.value_);
  } else {
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

Real::~Real() { mpfr_clear(value_); }

std::string Real::to_string(int digits) const {
  if (!is_finite()) {
    return mpfr_nan_p(value_) ? "nan" : (sign() > 0 ? "inf" : "-inf");
  }
  if (digits < 1) digits = 1;
  std::vector<char> buf(static_cast<size_t>(digits) + 32);
  int n = mpfr_snprintf(buf.data(), buf.size(), "%.*Re", digits - 1, value_);
  if (n >= static_cast<int>(buf.size())) {
    buf.resize(static_cast<size_t>(n) + 1);
    mpfr_snprintf(buf.data(), buf.size(), "%.*Re", digits - 1, value_);
  }
  return buf.data();
}

std::string Real::to_exact_string() const {
  auto digits = static_cast<int>(mpfr_get_str_ndigits(10, mpfr_get_prec(value_)));
  return to_string(digits);
}

Real& Real::operator+=(const Real& o) {
  mpfr_add(value_, value_, o.value_, MPFR_RNDN);
  return *this;
}
Real& Real::operator-=(const Real& o) {
  mpfr_sub(value_, value_, o.value_, MPFR_RNDN);
  return *this;
}
Real& Real::operator*=(const Real& o) {
  mpfr_mul(value_, value_, o.value_, MPFR_RNDN);
  return *this;
}
Real& Real::operator/=(const Real& o) {
  mpfr_div(value_, value_, o.value_, MPFR_RNDN);
  return *this;
}

Real operator-(const Real& a) {
  Real r;
  mpfr_neg(r.value_, a.value_, MPFR_RNDN);
  return r;
}

std::partial_ordering operator<=>(const Real& a, const Real& b) {
  if (mpfr_unordered_p(a.value_, b.value_)) return std::partial_ordering::unordered;
  int c = mpfr_cmp(a.value_, b.value_);
  if (c < 0) return std::partial_ordering::less;
  if (c > 0) return std::partial_ordering::greater;
  return std::partial_ordering::equivalent;
}

Real Real::pi() {
  Real r;
  mpfr_const_pi(r.value_, MPFR_RNDN);
  return r;
}

Real Real::epsilon() {
  Real r(1);
  mpfr_mul_2si(r.get(), r.get(), 1 - static_cast<long>(g_bits), MPFR_RNDN);
  return r;
}

namespace {
template <typename F>
Real unary(const Real& x, F f) {
  Real r;
  f(r.get(), x.get(), MPFR_RNDN);
  return r;
}
}  // namespace

Real abs(const Real& x) { return unary(x, mpfr_abs); }
Real sqrt(const Real& x) { return unary(x, mpfr_sqrt); }
Real cbrt(const Real& x) { return unary(x, mpfr_cbrt); }
Real exp(const Real& x) { return unary(x, mpfr_exp); }
Real log(const Real& x) { return unary(x, mpfr_log); }
Real sin(const Real& x) { return unary(x, mpfr_sin); }
Real cos(const Real& x) { return unary(x, mpfr_cos); }
Real tan(const Real& x) { return unary(x, mpfr_tan); }

Real floor(const Real& x) {
  Real r;
  mpfr_floor(r.get(), x.get());
  return r;
}

Real round(const Real& x) {
  Real r;
  mpfr_round(r.get(), x.get());
  return r;
}

Real atan2(const Real& y, const Real& x) {
  Real r;
  mpfr_atan2(r.get(), y.get(), x.get(), MPFR_RNDN);
  return r;
}

Real hypot(const Real& x, const Real& y) {
  Real r;
  mpfr_hypot(r.get(), x.get(), y.get(), MPFR_RNDN);
  return r;
}

Real pow(const Real& x, const Real& y) {
  Real r;
  mpfr_pow(r.get(), x.get(), y.get(), MPFR_RNDN);
  return r;
}

Real pow(const Real& x, long n) {
  Real r;
  mpfr_pow_si(r.get(), x.get(), n, MPFR_RNDN);
  return r;
}

Real root(const Real& x, unsigned long k) {
  Real r;
  mpfr_rootn_ui(r.get(), x.get(), k, MPFR_RNDN);
  return r;
}

Real ldexp(const Real& x, long e) {
  Real r;
  mpfr_mul_2si(r.get(), x.get(), e, MPFR_RNDN);
  return r;
}

Real max(const Real& a, const Real& b) { return a < b ? b : a; }
Real min(const Real& a, const Real& b) { return b < a ? b : a; }

Real factorial(unsigned n) {
  Real r;
  mpfr_fac_ui(r.get(), n, MPFR_RNDN);
  return r;
}

Real default_tolerance() { return ldexp(Real(1), -static_cast<long>(g_bits / 2)); }

std::ostream& operator<<(std::ostream& os, const Real& x) {
  return os << x.to_string(static_cast<int>(os.precision() > 0 ? os.precision() : 17));
}

}  // namespace sextic::num
