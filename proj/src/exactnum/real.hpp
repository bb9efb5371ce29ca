#pragma once

// Arbitrary-precision real numbers backed by MPFR.
//
// Every Real created on a thread picks up that thread's working precision,
// which is changed with set_precision_bits() or a PrecisionScope.  Results of
// arithmetic are rounded to nearest at the working precision.

#include <mpfr.h>

#include <compare>
#include <iosfwd>
#include <string>
#include <string_view>

namespace sextic::num {

constexpr unsigned kDefaultPrecisionBits = 256;
constexpr unsigned kMinPrecisionBits = 64;

unsigned precision_bits();
void set_precision_bits(unsigned bits);

class PrecisionScope {
public:
  explicit PrecisionScope(unsigned bits);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

private:
  unsigned saved_;
};

class Real {
public:
  Real();
  Real(double v);  // NOLINT(google-explicit-constructor)
  Real(int v);     // NOLINT(google-explicit-constructor)
  Real(long v);    // NOLINT(google-explicit-constructor)
  Real(long long v);  // NOLINT(google-explicit-constructor)
  Real(unsigned long v);  // NOLINT(google-explicit-constructor)

  /// Parses a decimal (or "inf"/"nan") string; throws sextic::Error on junk.
  static Real parse(std::string_view text);

  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  mpfr_srcptr get() const { return value_; }
  mpfr_ptr get() { return value_; }
  unsigned precision() const { return static_cast<unsigned>(mpfr_get_prec(value_)); }

  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
  long to_long() const { return mpfr_get_si(value_, MPFR_RNDN); }
  bool is_zero() const { return mpfr_zero_p(value_) != 0; }
  bool is_finite() const { return mpfr_number_p(value_) != 0; }
  int sign() const { return mpfr_sgn(value_); }

  /// Scientific notation with `digits` significant decimal digits.
  std::string to_string(int digits) const;
  /// Shortest string that reads back bit-exactly at this value's precision.
  std::string to_exact_string() const;

  Real& operator+=(const Real& o);
  Real& operator-=(const Real& o);
  Real& operator*=(const Real& o);
  Real& operator/=(const Real& o);

  friend Real operator-(const Real& a);
  friend Real operator+(Real a, const Real& b) { return a += b; }
  friend Real operator-(Real a, const Real& b) { return a -= b; }
  friend Real operator*(Real a, const Real& b) { return a *= b; }
  friend Real operator/(Real a, const Real& b) { return a /= b; }

  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.value_, b.value_) != 0; }
  friend std::partial_ordering operator<=>(const Real& a, const Real& b);

  static Real pi();
  static Real epsilon();  // 2^(1 - precision)

private:
  mpfr_t value_;
};

Real abs(const Real& x);
Real sqrt(const Real& x);
Real cbrt(const Real& x);
Real exp(const Real& x);
Real log(const Real& x);
Real sin(const Real& x);
Real cos(const Real& x);
Real tan(const Real& x);
Real atan2(const Real& y, const Real& x);
Real hypot(const Real& x, const Real& y);
Real pow(const Real& x, const Real& y);
Real pow(const Real& x, long n);
Real root(const Real& x, unsigned long k);
Real floor(const Real& x);
Real round(const Real& x);
Real ldexp(const Real& x, long e);
Real max(const Real& a, const Real& b);
Real min(const Real& a, const Real& b);
Real factorial(unsigned n);

/// Default zero tolerance 2^(-bits/2) at the current working precision.
Real default_tolerance();

std::ostream& operator<<(std::ostream& os, const Real& x);

}  // namespace sextic::num
