#pragma once

#include <mpfr.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace heun {

long bits_for_digits(long digits);
long digits_for_bits(long bits);

// Precision policy: precision_bits is the working mantissa width, target_digits
// the decimal digits the caller wants certified.
struct numeric_context {
  long precision_bits = 256;
  long target_digits = 25;

  static numeric_context for_digits(long target_digits, long guard_bits = 64);
  numeric_context with_extra_digits(long extra) const;
};

long working_bits();
void set_working_bits(long bits);

// RAII guard: newly constructed reals pick up this thread's working precision.
class scoped_precision {
 public:
  explicit scoped_precision(long bits);
  explicit scoped_precision(const numeric_context& ctx) : scoped_precision(ctx.precision_bits) {}
  scoped_precision(const scoped_precision&) = delete;
  scoped_precision& operator=(const scoped_precision&) = delete;
  ~scoped_precision();

 private:
  long saved_;
};

class real {
 public:
  real() { mpfr_init2(v_, working_bits()); mpfr_set_zero(v_, 1); }
  real(long x) { mpfr_init2(v_, working_bits()); mpfr_set_si(v_, x, MPFR_RNDN); }
  real(int x) : real(static_cast<long>(x)) {}
  real(unsigned long x) { mpfr_init2(v_, working_bits()); mpfr_set_ui(v_, x, MPFR_RNDN); }
  real(double x) { mpfr_init2(v_, working_bits()); mpfr_set_d(v_, x, MPFR_RNDN); }
  explicit real(const std::string& dec) {
    mpfr_init2(v_, working_bits());
    if (mpfr_set_str(v_, dec.c_str(), 10, MPFR_RNDN) != 0)
      throw std::invalid_argument("real: cannot parse \"" + dec + "\"");
  }

  real(const real& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
  real(real&& o) noexcept {
    v_[0] = o.v_[0];
    o.v_[0]._mpfr_d = nullptr;
  }
  real& operator=(const real& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  real& operator=(real&& o) noexcept {
    if (this != &o) {
      if (v_[0]._mpfr_d) mpfr_clear(v_);
      v_[0] = o.v_[0];
      o.v_[0]._mpfr_d = nullptr;
    }
    return *this;
  }
  ~real() {
    if (v_[0]._mpfr_d) mpfr_clear(v_);
  }

  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }
  long precision() const { return mpfr_get_prec(v_); }

  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_nan() const { return mpfr_nan_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  long to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }
  // base-2 exponent of the leading bit; 0 must be checked by the caller
  long exponent2() const { return static_cast<long>(mpfr_get_exp(v_)); }

  real& operator+=(const real& o) { mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
  real& operator-=(const real& o) { mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
  real& operator*=(const real& o) { mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }
  real& operator/=(const real& o) { mpfr_div(v_, v_, o.v_, MPFR_RNDN); return *this; }
  real& operator+=(long o) { mpfr_add_si(v_, v_, o, MPFR_RNDN); return *this; }
  real& operator-=(long o) { mpfr_sub_si(v_, v_, o, MPFR_RNDN); return *this; }
  real& operator*=(long o) { mpfr_mul_si(v_, v_, o, MPFR_RNDN); return *this; }
  real& operator/=(long o) { mpfr_div_si(v_, v_, o, MPFR_RNDN); return *this; }

  real operator-() const {
    real r(*this);
    mpfr_neg(r.v_, r.v_, MPFR_RNDN);
    return r;
  }

 private:
  mpfr_t v_;
};

inline real operator+(const real& a, const real& b) { real r; mpfr_add(r.raw(), a.raw(), b.raw(), MPFR_RNDN); return r; }
inline real operator-(const real& a, const real& b) { real r; mpfr_sub(r.raw(), a.raw(), b.raw(), MPFR_RNDN); return r; }
inline real operator*(const real& a, const real& b) { real r; mpfr_mul(r.raw(), a.raw(), b.raw(), MPFR_RNDN); return r; }
inline real operator/(const real& a, const real& b) { real r; mpfr_div(r.raw(), a.raw(), b.raw(), MPFR_RNDN); return r; }

inline real operator+(const real& a, long b) { real r; mpfr_add_si(r.raw(), a.raw(), b, MPFR_RNDN); return r; }
inline real operator-(const real& a, long b) { real r; mpfr_sub_si(r.raw(), a.raw(), b, MPFR_RNDN); return r; }
inline real operator*(const real& a, long b) { real r; mpfr_mul_si(r.raw(), a.raw(), b, MPFR_RNDN); return r; }
inline real operator/(const real& a, long b) { real r; mpfr_div_si(r.raw(), a.raw(), b, MPFR_RNDN); return r; }
inline real operator+(long a, const real& b) { return b + a; }
inline real operator-(long a, const real& b) { real r; mpfr_si_sub(r.raw(), a, b.raw(), MPFR_RNDN); return r; }
inline real operator*(long a, const real& b) { return b * a; }
inline real operator/(long a, const real& b) { real r; mpfr_si_div(r.raw(), a, b.raw(), MPFR_RNDN); return r; }
inline real operator+(const real& a, int b) { return a + static_cast<long>(b); }
inline real operator-(const real& a, int b) { return a - static_cast<long>(b); }
inline real operator*(const real& a, int b) { return a * static_cast<long>(b); }
inline real operator/(const real& a, int b) { return a / static_cast<long>(b); }
inline real operator+(int a, const real& b) { return static_cast<long>(a) + b; }
inline real operator-(int a, const real& b) { return static_cast<long>(a) - b; }
inline real operator*(int a, const real& b) { return static_cast<long>(a) * b; }
inline real operator/(int a, const real& b) { return static_cast<long>(a) / b; }

inline bool operator==(const real& a, const real& b) { return mpfr_cmp(a.raw(), b.raw()) == 0; }
inline bool operator!=(const real& a, const real& b) { return mpfr_cmp(a.raw(), b.raw()) != 0; }
inline bool operator<(const real& a, const real& b) { return mpfr_cmp(a.raw(), b.raw()) < 0; }
inline bool operator<=(const real& a, const real& b) { return mpfr_cmp(a.raw(), b.raw()) <= 0; }
inline bool operator>(const real& a, const real& b) { return mpfr_cmp(a.raw(), b.raw()) > 0; }
inline bool operator>=(const real& a, const real& b) { return mpfr_cmp(a.raw(), b.raw()) >= 0; }
inline bool operator==(const real& a, long b) { return mpfr_cmp_si(a.raw(), b) == 0; }
inline bool operator!=(const real& a, long b) { return mpfr_cmp_si(a.raw(), b) != 0; }
inline bool operator<(const real& a, long b) { return mpfr_cmp_si(a.raw(), b) < 0; }
inline bool operator<=(const real& a, long b) { return mpfr_cmp_si(a.raw(), b) <= 0; }
inline bool operator>(const real& a, long b) { return mpfr_cmp_si(a.raw(), b) > 0; }
inline bool operator>=(const real& a, long b) { return mpfr_cmp_si(a.raw(), b) >= 0; }
inline bool operator==(const real& a, int b) { return a == static_cast<long>(b); }
inline bool operator!=(const real& a, int b) { return a != static_cast<long>(b); }
inline bool operator<(const real& a, int b) { return a < static_cast<long>(b); }
inline bool operator>(const real& a, int b) { return a > static_cast<long>(b); }

inline real abs(const real& a) { real r; mpfr_abs(r.raw(), a.raw(), MPFR_RNDN); return r; }
inline real sqrt(const real& a) { real r; mpfr_sqrt(r.raw(), a.raw(), MPFR_RNDN); return r; }
inline real exp(const real& a) { real r; mpfr_exp(r.raw(), a.raw(), MPFR_RNDN); return r; }
inline real log(const real& a) { real r; mpfr_log(r.raw(), a.raw(), MPFR_RNDN); return r; }
inline real log10(const real& a) { real r; mpfr_log10(r.raw(), a.raw(), MPFR_RNDN); return r; }
inline real floor(const real& a) { real r; mpfr_floor(r.raw(), a.raw()); return r; }
inline real pow(const real& a, const real& b) { real r; mpfr_pow(r.raw(), a.raw(), b.raw(), MPFR_RNDN); return r; }
inline real pow(const real& a, long b) { real r; mpfr_pow_si(r.raw(), a.raw(), b, MPFR_RNDN); return r; }
inline real sinh(const real& a) { real r; mpfr_sinh(r.raw(), a.raw(), MPFR_RNDN); return r; }
inline real cosh(const real& a) { real r; mpfr_cosh(r.raw(), a.raw(), MPFR_RNDN); return r; }
inline real pi() { real r; mpfr_const_pi(r.raw(), MPFR_RNDN); return r; }
inline real euler_gamma() { real r; mpfr_const_euler(r.raw(), MPFR_RNDN); return r; }
inline real max(const real& a, const real& b) { return a < b ? b : a; }
inline real min(const real& a, const real& b) { return a < b ? a : b; }

// Decimal formatting: positional for moderate exponents, scientific otherwise.
std::string to_decimal(const real& x, long sig_digits);
real parse_decimal(const std::string& s);

// Elementary special functions (numctx layer).
real gamma(const real& x);
real upper_incomplete_gamma(const real& a, const real& x);
real laguerre(long n, const real& alpha, const real& x);
std::vector<real> laguerre_row(long n_max, const real& alpha, const real& x);

// Leading decimal digits shared by a and b: floor(1 - log10(2|a-b|/|b|)).
long matching_digits(const real& a, const real& b);

}  // namespace heun
