// Multiprecision real and complex scalars backed by MPFR.
//
// Every Real carries its own precision. Freshly produced values (results of
// binary operators and free functions) take the thread's current working
// precision, which is set with PrecisionScope. Compound assignment rounds
// into the precision of the left operand; copies are exact.
#pragma once

#include <mpfr.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>

namespace pivlag {

using Bits = mpfr_prec_t;

Bits working_precision() noexcept;
void set_working_precision(Bits bits);

/// RAII guard that sets the working precision for the current thread.
class PrecisionScope {
 public:
  explicit PrecisionScope(Bits bits) : saved_(working_precision()) {
    set_working_precision(bits);
  }
  ~PrecisionScope() { set_working_precision(saved_); }
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  Bits saved_;
};

class Real {
 public:
  Real();
  Real(double x);  // NOLINT(google-explicit-constructor)
  Real(int x);     // NOLINT(google-explicit-constructor)
  Real(long x);    // NOLINT(google-explicit-constructor)
  Real(long long x);  // NOLINT(google-explicit-constructor)
  Real(unsigned long x);  // NOLINT(google-explicit-constructor)

  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  /// Parses a decimal string at the working precision; throws
  /// std::invalid_argument on malformed input.
  static Real parse(std::string_view text);
  static Real pi();
  static Real ln2();
  static Real nan();
  static Real inf(int sign = 1);
  /// 2^e exactly.
  static Real pow2(long e);

  Bits precision() const { return mpfr_get_prec(v_); }
  /// Re-rounds this value to a new precision.
  void round_to(Bits bits);

  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

  Real& operator+=(const Real& o);
  Real& operator-=(const Real& o);
  Real& operator*=(const Real& o);
  Real& operator/=(const Real& o);
  Real& operator*=(long o);
  Real& operator/=(long o);

  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  bool is_nan() const { return mpfr_nan_p(v_) != 0; }
  bool is_integer() const { return mpfr_integer_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  /// Binary exponent e with |x| in [2^(e-1), 2^e); very negative for zero.
  long exponent2() const;

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  long to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }
  /// Scientific decimal representation with the given significant digits.
  std::string to_string(int digits) const;

 private:
  mpfr_t v_;
};

Real operator-(const Real& a);
Real operator+(const Real& a, const Real& b);
Real operator-(const Real& a, const Real& b);
Real operator*(const Real& a, const Real& b);
Real operator/(const Real& a, const Real& b);
Real operator*(const Real& a, long b);
Real operator*(long a, const Real& b);
Real operator/(const Real& a, long b);
Real operator+(const Real& a, long b);
Real operator-(const Real& a, long b);
Real operator-(long a, const Real& b);
inline Real operator+(long a, const Real& b) { return b + a; }
inline Real operator*(const Real& a, int b) { return a * static_cast<long>(b); }
inline Real operator*(int a, const Real& b) { return b * static_cast<long>(a); }
inline Real operator/(const Real& a, int b) { return a / static_cast<long>(b); }
inline Real operator+(const Real& a, int b) { return a + static_cast<long>(b); }
inline Real operator+(int a, const Real& b) { return b + static_cast<long>(a); }
inline Real operator-(const Real& a, int b) { return a - static_cast<long>(b); }
inline Real operator-(int a, const Real& b) { return static_cast<long>(a) - b; }

bool operator==(const Real& a, const Real& b);
std::partial_ordering operator<=>(const Real& a, const Real& b);

Real abs(const Real& x);
Real sqrt(const Real& x);
Real exp(const Real& x);
Real log(const Real& x);
Real log2(const Real& x);
Real sin(const Real& x);
Real cos(const Real& x);
Real atan2(const Real& y, const Real& x);
Real sinh(const Real& x);
Real cosh(const Real& x);
Real pow(const Real& x, const Real& y);
Real pow(const Real& x, long n);
Real hypot(const Real& x, const Real& y);
Real floor(const Real& x);
Real ceil(const Real& x);
Real round(const Real& x);
Real ldexp(const Real& x, long e);
Real min(const Real& a, const Real& b);
Real max(const Real& a, const Real& b);
Real erfc(const Real& x);

std::ostream& operator<<(std::ostream& os, const Real& x);

class Complex {
 public:
  Complex() = default;
  Complex(Real re) : re_(std::move(re)) {}  // NOLINT(google-explicit-constructor)
  Complex(Real re, Real im) : re_(std::move(re)), im_(std::move(im)) {}
  Complex(double re) : re_(re) {}  // NOLINT(google-explicit-constructor)
  Complex(int re) : re_(re) {}  // NOLINT(google-explicit-constructor)
  Complex(long re) : re_(re) {}  // NOLINT(google-explicit-constructor)

  static Complex i();
  /// e^{i theta}.
  static Complex polar(const Real& radius, const Real& theta);

  const Real& re() const { return re_; }
  const Real& im() const { return im_; }
  Real& re() { return re_; }
  Real& im() { return im_; }

  Complex& operator+=(const Complex& o);
  Complex& operator-=(const Complex& o);
  Complex& operator*=(const Complex& o);
  Complex& operator/=(const Complex& o);
  Complex& operator*=(const Real& o);
  Complex& operator/=(const Real& o);

  bool is_finite() const { return re_.is_finite() && im_.is_finite(); }
  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
  void round_to(Bits bits) {
    re_.round_to(bits);
    im_.round_to(bits);
  }

  std::string to_string(int digits) const;

 private:
  Real re_;
  Real im_;
};

Complex operator-(const Complex& a);
Complex operator+(const Complex& a, const Complex& b);
Complex operator-(const Complex& a, const Complex& b);
Complex operator*(const Complex& a, const Complex& b);
Complex operator/(const Complex& a, const Complex& b);
Complex operator*(const Complex& a, const Real& b);
Complex operator*(const Real& a, const Complex& b);
Complex operator/(const Complex& a, const Real& b);
Complex operator+(const Complex& a, const Real& b);
Complex operator-(const Complex& a, const Real& b);
Complex operator*(const Complex& a, long b);
inline Complex operator*(long a, const Complex& b) { return b * a; }
inline Complex operator*(const Complex& a, int b) { return a * static_cast<long>(b); }
inline Complex operator*(int a, const Complex& b) { return b * static_cast<long>(a); }
Complex operator/(const Complex& a, long b);
inline Complex operator/(const Complex& a, int b) { return a / static_cast<long>(b); }

bool operator==(const Complex& a, const Complex& b);

Complex conj(const Complex& z);
Real abs(const Complex& z);
Real norm(const Complex& z);
/// Principal argument in (-pi, pi].
Real arg(const Complex& z);
/// Argument in [0, 2pi).
Real arg_0_2pi(const Complex& z);
Complex exp(const Complex& z);
/// Principal logarithm.
Complex log(const Complex& z);
/// Principal square root.
Complex sqrt(const Complex& z);
Complex pow(const Complex& z, const Real& w);
Complex pow(const Complex& z, const Complex& w);
Complex pow(const Complex& z, long n);
Complex sin(const Complex& z);
Complex cos(const Complex& z);
/// z multiplied by i.
Complex times_i(const Complex& z);

std::ostream& operator<<(std::ostream& os, const Complex& z);

}  // namespace pivlag
