#include "pivlag/mp.hpp"

#include <climits>
#include <cstdlib>
#include <ostream>
#include <stdexcept>

namespace pivlag {

namespace {
thread_local Bits g_working_bits = 128;

constexpr mpfr_rnd_t kRnd = MPFR_RNDN;
}  // namespace

Bits working_precision() noexcept { return g_working_bits; }

void set_working_precision(Bits bits) {
  if (bits < MPFR_PREC_MIN || bits > MPFR_PREC_MAX) {
    throw std::invalid_argument("precision out of range");
  }
  g_working_bits = bits;
}

// ---------------------------------------------------------------- Real

Real::Real() {
  mpfr_init2(v_, g_working_bits);
  mpfr_set_zero(v_, 1);
}

Real::Real(double x) {
  mpfr_init2(v_, g_working_bits);
  mpfr_set_d(v_, x, kRnd);
}

Real::Real(int x) {
  mpfr_init2(v_, g_working_bits);
  mpfr_set_si(v_, x, kRnd);
}

Real::Real(long x) {
  mpfr_init2(v_, g_working_bits);
  mpfr_set_si(v_, x, kRnd);
}

Real::Real(long long x) {
  mpfr_init2(v_, g_working_bits);
  mpfr_set_si(v_, static_cast<long>(x), kRnd);
}

Real::Real(unsigned long x) {
  mpfr_init2(v_, g_working_bits);
  mpfr_set_ui(v_, x, kRnd);
}

Real::Real(const Real& other) {
  mpfr_init2(v_, mpfr_get_prec(other.v_));
  mpfr_set(v_, other.v_, kRnd);
}

Real::Real(Real&& other) noexcept {
  *v_ = *other.v_;
  other.v_->_mpfr_d = nullptr;
}

Real& Real::operator=(const Real& other) {
  if (this == &other) return *this;
  if (v_->_mpfr_d == nullptr) {
    mpfr_init2(v_, mpfr_get_prec(other.v_));
  } else if (mpfr_get_prec(v_) != mpfr_get_prec(other.v_)) {
    mpfr_set_prec(v_, mpfr_get_prec(other.v_));
  }
  mpfr_set(v_, other.v_, kRnd);
  return *this;
}

Real& Real::operator=(Real&& other) noexcept {
  if (this != &other) mpfr_swap(v_, other.v_);
  return *this;
}

Real::~Real() {
  if (v_->_mpfr_d != nullptr) mpfr_clear(v_);
}

Real Real::parse(std::string_view text) {
  std::string s(text);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\n' || s.back() == '\t')) s.pop_back();
  std::size_t start = 0;
  while (start < s.size() && (s[start] == ' ' || s[start] == '\t')) ++start;
  s = s.substr(start);
  if (s.empty()) throw std::invalid_argument("empty number");
  Real r;
  char* end = nullptr;
  mpfr_strtofr(r.v_, s.c_str(), &end, 10, kRnd);
  if (end == nullptr || *end != '\0' || end == s.c_str()) {
    throw std::invalid_argument("malformed number: " + s);
  }
  return r;
}

Real Real::pi() {
  Real r;
  mpfr_const_pi(r.v_, kRnd);
  return r;
}

Real Real::ln2() {
  Real r;
  mpfr_const_log2(r.v_, kRnd);
  return r;
}

Real Real::nan() {
  Real r;
  mpfr_set_nan(r.v_);
  return r;
}

Real Real::inf(int sign) {
  Real r;
  mpfr_set_inf(r.v_, sign);
  return r;
}

Real Real::pow2(long e) {
  Real r;
  mpfr_set_ui_2exp(r.v_, 1, e, kRnd);
  return r;
}

void Real::round_to(Bits bits) { mpfr_prec_round(v_, bits, kRnd); }

Real& Real::operator+=(const Real& o) {
  mpfr_add(v_, v_, o.v_, kRnd);
  return *this;
}
Real& Real::operator-=(const Real& o) {
  mpfr_sub(v_, v_, o.v_, kRnd);
  return *this;
}
Real& Real::operator*=(const Real& o) {
  mpfr_mul(v_, v_, o.v_, kRnd);
  return *this;
}
Real& Real::operator/=(const Real& o) {
  mpfr_div(v_, v_, o.v_, kRnd);
  return *this;
}
Real& Real::operator*=(long o) {
  mpfr_mul_si(v_, v_, o, kRnd);
  return *this;
}
Real& Real::operator/=(long o) {
  mpfr_div_si(v_, v_, o, kRnd);
  return *this;
}

long Real::exponent2() const {
  if (mpfr_zero_p(v_)) return LONG_MIN / 2;
  if (!mpfr_number_p(v_)) return LONG_MAX / 2;
  return mpfr_get_exp(v_);
}

std::string Real::to_string(int digits) const {
  if (digits < 1) digits = 1;
  char* buf = nullptr;
  if (mpfr_asprintf(&buf, "%.*Re", digits - 1, v_) < 0 || buf == nullptr) {
    throw std::runtime_error("formatting failed");
  }
  std::string out(buf);
  mpfr_free_str(buf);
  return out;
}

#define PIVLAG_UNARY(name, fn)     \
  Real name(const Real& x) {       \
    Real r;                        \
    fn(r.raw(), x.raw(), kRnd);    \
    return r;                      \
  }

Real operator-(const Real& a) {
  Real r;
  mpfr_neg(r.raw(), a.raw(), kRnd);
  return r;
}

#define PIVLAG_BINARY(op, fn)                     \
  Real operator op(const Real& a, const Real& b) { \
    Real r;                                       \
    fn(r.raw(), a.raw(), b.raw(), kRnd);          \
    return r;                                     \
  }

PIVLAG_BINARY(+, mpfr_add)
PIVLAG_BINARY(-, mpfr_sub)
PIVLAG_BINARY(*, mpfr_mul)
PIVLAG_BINARY(/, mpfr_div)
#undef PIVLAG_BINARY

Real operator*(const Real& a, long b) {
  Real r;
  mpfr_mul_si(r.raw(), a.raw(), b, kRnd);
  return r;
}
Real operator*(long a, const Real& b) { return b * a; }
Real operator/(const Real& a, long b) {
  Real r;
  mpfr_div_si(r.raw(), a.raw(), b, kRnd);
  return r;
}
Real operator+(const Real& a, long b) {
  Real r;
  mpfr_add_si(r.raw(), a.raw(), b, kRnd);
  return r;
}
Real operator-(const Real& a, long b) {
  Real r;
  mpfr_sub_si(r.raw(), a.raw(), b, kRnd);
  return r;
}
Real operator-(long a, const Real& b) {
  Real r;
  mpfr_si_sub(r.raw(), a, b.raw(), kRnd);
  return r;
}

bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.raw(), b.raw()) != 0; }

std::partial_ordering operator<=>(const Real& a, const Real& b) {
  if (mpfr_unordered_p(a.raw(), b.raw())) return std::partial_ordering::unordered;
  int c = mpfr_cmp(a.raw(), b.raw());
  if (c < 0) return std::partial_ordering::less;
  if (c > 0) return std::partial_ordering::greater;
  return std::partial_ordering::equivalent;
}

PIVLAG_UNARY(abs, mpfr_abs)
PIVLAG_UNARY(sqrt, mpfr_sqrt)
PIVLAG_UNARY(exp, mpfr_exp)
PIVLAG_UNARY(log, mpfr_log)
PIVLAG_UNARY(log2, mpfr_log2)
PIVLAG_UNARY(sin, mpfr_sin)
PIVLAG_UNARY(cos, mpfr_cos)
PIVLAG_UNARY(sinh, mpfr_sinh)
PIVLAG_UNARY(cosh, mpfr_cosh)
PIVLAG_UNARY(erfc, mpfr_erfc)
#undef PIVLAG_UNARY

Real floor(const Real& x) {
  Real r;
  mpfr_floor(r.raw(), x.raw());
  return r;
}
Real ceil(const Real& x) {
  Real r;
  mpfr_ceil(r.raw(), x.raw());
  return r;
}
Real round(const Real& x) {
  Real r;
  mpfr_round(r.raw(), x.raw());
  return r;
}

Real atan2(const Real& y, const Real& x) {
  Real r;
  mpfr_atan2(r.raw(), y.raw(), x.raw(), kRnd);
  return r;
}
Real pow(const Real& x, const Real& y) {
  Real r;
  mpfr_pow(r.raw(), x.raw(), y.raw(), kRnd);
  return r;
}
Real pow(const Real& x, long n) {
  Real r;
  mpfr_pow_si(r.raw(), x.raw(), n, kRnd);
  return r;
}
Real hypot(const Real& x, const Real& y) {
  Real r;
  mpfr_hypot(r.raw(), x.raw(), y.raw(), kRnd);
  return r;
}
Real ldexp(const Real& x, long e) {
  Real r;
  mpfr_mul_2si(r.raw(), x.raw(), e, kRnd);
  return r;
}
Real min(const Real& a, const Real& b) {
  Real r;
  mpfr_min(r.raw(), a.raw(), b.raw(), kRnd);
  return r;
}
Real max(const Real& a, const Real& b) {
  Real r;
  mpfr_max(r.raw(), a.raw(), b.raw(), kRnd);
  return r;
}

std::ostream& operator<<(std::ostream& os, const Real& x) {
  int digits = static_cast<int>(os.precision());
  return os << x.to_string(digits > 0 ? digits : 17);
}

// ------------------------------------------------------------- Complex

Complex Complex::i() { return Complex(Real(0), Real(1)); }

Complex Complex::polar(const Real& radius, const Real& theta) {
  Complex z;
  mpfr_sin_cos(z.im_.raw(), z.re_.raw(), theta.raw(), kRnd);
  z.re_ *= radius;
  z.im_ *= radius;
  return z;
}

Complex& Complex::operator+=(const Complex& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}
Complex& Complex::operator-=(const Complex& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}
Complex& Complex::operator*=(const Complex& o) {
  Real re(re_);
  mpfr_fmms(re.raw(), re_.raw(), o.re_.raw(), im_.raw(), o.im_.raw(), kRnd);
  mpfr_fmma(im_.raw(), re_.raw(), o.im_.raw(), im_.raw(), o.re_.raw(), kRnd);
  re_ = std::move(re);
  return *this;
}
Complex& Complex::operator/=(const Complex& o) {
  *this = *this / o;
  return *this;
}
Complex& Complex::operator*=(const Real& o) {
  re_ *= o;
  im_ *= o;
  return *this;
}
Complex& Complex::operator/=(const Real& o) {
  re_ /= o;
  im_ /= o;
  return *this;
}

std::string Complex::to_string(int digits) const {
  std::string s = re_.to_string(digits);
  std::string t = im_.to_string(digits);
  if (!t.empty() && t[0] == '-') return s + " - " + t.substr(1) + "i";
  return s + " + " + t + "i";
}

Complex operator-(const Complex& a) { return Complex(-a.re(), -a.im()); }
Complex operator+(const Complex& a, const Complex& b) {
  return Complex(a.re() + b.re(), a.im() + b.im());
}
Complex operator-(const Complex& a, const Complex& b) {
  return Complex(a.re() - b.re(), a.im() - b.im());
}
Complex operator*(const Complex& a, const Complex& b) {
  Complex r;
  mpfr_fmms(r.re().raw(), a.re().raw(), b.re().raw(), a.im().raw(), b.im().raw(), kRnd);
  mpfr_fmma(r.im().raw(), a.re().raw(), b.im().raw(), a.im().raw(), b.re().raw(), kRnd);
  return r;
}
Complex operator/(const Complex& a, const Complex& b) {
  if (b.im().is_zero()) return Complex(a.re() / b.re(), a.im() / b.re());
  Real den;
  mpfr_fmma(den.raw(), b.re().raw(), b.re().raw(), b.im().raw(), b.im().raw(), kRnd);
  Complex r;
  mpfr_fmma(r.re().raw(), a.re().raw(), b.re().raw(), a.im().raw(), b.im().raw(), kRnd);
  mpfr_fmms(r.im().raw(), a.im().raw(), b.re().raw(), a.re().raw(), b.im().raw(), kRnd);
  r.re() /= den;
  r.im() /= den;
  return r;
}
Complex operator*(const Complex& a, const Real& b) { return Complex(a.re() * b, a.im() * b); }
Complex operator*(const Real& a, const Complex& b) { return b * a; }
Complex operator/(const Complex& a, const Real& b) { return Complex(a.re() / b, a.im() / b); }
Complex operator+(const Complex& a, const Real& b) { return Complex(a.re() + b, a.im() * 1); }
Complex operator-(const Complex& a, const Real& b) { return Complex(a.re() - b, a.im() * 1); }
Complex operator*(const Complex& a, long b) { return Complex(a.re() * b, a.im() * b); }
Complex operator/(const Complex& a, long b) { return Complex(a.re() / b, a.im() / b); }

bool operator==(const Complex& a, const Complex& b) {
  return a.re() == b.re() && a.im() == b.im();
}

Complex conj(const Complex& z) { return Complex(z.re() * 1, -z.im()); }
Real abs(const Complex& z) { return hypot(z.re(), z.im()); }
Real norm(const Complex& z) {
  Real r;
  mpfr_fmma(r.raw(), z.re().raw(), z.re().raw(), z.im().raw(), z.im().raw(), kRnd);
  return r;
}
Real arg(const Complex& z) { return atan2(z.im(), z.re()); }
Real arg_0_2pi(const Complex& z) {
  Real a = arg(z);
  if (a.sign() < 0) a += 2 * Real::pi();
  return a;
}

Complex exp(const Complex& z) {
  Real m = exp(z.re());
  return Complex::polar(m, z.im());
}

Complex log(const Complex& z) { return Complex(log(abs(z)), arg(z)); }

Complex sqrt(const Complex& z) {
  if (z.is_zero()) return Complex(Real(0), Real(0));
  Real r = abs(z);
  if (z.re().sign() >= 0) {
    Real t = sqrt(ldexp(r + z.re(), -1));
    return Complex(t, z.im() / ldexp(t, 1));
  }
  Real t = sqrt(ldexp(r - z.re(), -1));
  Real re = abs(z.im()) / ldexp(t, 1);
  return Complex(re, z.im().sign() < 0 ? -t : t);
}

Complex pow(const Complex& z, const Real& w) {
  if (z.is_zero()) return Complex(Real(0), Real(0));
  Complex l = log(z);
  return exp(l * w);
}

Complex pow(const Complex& z, const Complex& w) {
  if (z.is_zero()) return Complex(Real(0), Real(0));
  return exp(log(z) * w);
}

Complex pow(const Complex& z, long n) {
  unsigned long m = n < 0 ? static_cast<unsigned long>(-(n + 1)) + 1UL : static_cast<unsigned long>(n);
  Complex result(Real(1), Real(0));
  Complex base = z;
  while (m != 0) {
    if (m & 1UL) result *= base;
    m >>= 1;
    if (m != 0) base *= base;
  }
  if (n < 0) return Complex(Real(1), Real(0)) / result;
  return result;
}

Complex sin(const Complex& z) {
  Real s, c;
  mpfr_sin_cos(s.raw(), c.raw(), z.re().raw(), kRnd);
  return Complex(s * cosh(z.im()), c * sinh(z.im()));
}

Complex cos(const Complex& z) {
  Real s, c;
  mpfr_sin_cos(s.raw(), c.raw(), z.re().raw(), kRnd);
  return Complex(c * cosh(z.im()), -(s * sinh(z.im())));
}

Complex times_i(const Complex& z) { return Complex(-z.im(), z.re() * 1); }

std::ostream& operator<<(std::ostream& os, const Complex& z) {
  int digits = static_cast<int>(os.precision());
  return os << z.to_string(digits > 0 ? digits : 17);
}

}  // namespace pivlag
