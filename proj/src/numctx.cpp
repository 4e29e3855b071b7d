#include "heun/numctx.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

namespace heun {

namespace {
thread_local long tl_bits = 256;
}

long bits_for_digits(long digits) {
  return static_cast<long>(std::ceil(digits * 3.3219280948873626)) + 8;
}

long digits_for_bits(long bits) {
  return static_cast<long>(std::floor(bits * 0.30102999566398119));
}

numeric_context numeric_context::for_digits(long target_digits, long guard_bits) {
  numeric_context c;
  c.target_digits = target_digits;
  c.precision_bits = bits_for_digits(target_digits) + std::max(guard_bits, 64L);
  return c;
}

numeric_context numeric_context::with_extra_digits(long extra) const {
  numeric_context c = *this;
  c.precision_bits += bits_for_digits(extra);
  return c;
}

long working_bits() { return tl_bits; }

void set_working_bits(long bits) { tl_bits = std::max(bits, 16L); }

scoped_precision::scoped_precision(long bits) : saved_(tl_bits) { set_working_bits(bits); }

scoped_precision::~scoped_precision() { tl_bits = saved_; }

std::string to_decimal(const real& x, long sig_digits) {
  if (x.is_nan()) return "nan";
  if (!x.is_finite()) return x.sign() < 0 ? "-inf" : "inf";
  if (x.is_zero()) return "0";
  sig_digits = std::max(sig_digits, 2L);

  mpfr_exp_t e;
  char* s = mpfr_get_str(nullptr, &e, 10, static_cast<size_t>(sig_digits), x.raw(), MPFR_RNDN);
  std::string digits(s);
  mpfr_free_str(s);

  std::string sign;
  if (digits[0] == '-') {
    sign = "-";
    digits.erase(0, 1);
  }

  // trailing zeros are dropped only when everything left sits in the integer
  // part of the displayed form; a fractional zero is a correctly rounded
  // significant digit and stays
  const size_t keep = std::max(digits.find_last_not_of('0') + 1, size_t{1});
  const bool positional = e > 0 && e <= sig_digits + 6;
  const bool small_positional = e <= 0 && e > -6;
  if (positional ? keep <= static_cast<size_t>(e) : (!small_positional && keep == 1))
    digits.erase(keep);

  // value = 0.digits * 10^e
  std::string out;
  if (positional) {
    if (static_cast<size_t>(e) >= digits.size()) {
      out = digits + std::string(e - digits.size(), '0');
    } else {
      out = digits.substr(0, e) + "." + digits.substr(e);
    }
  } else if (small_positional) {
    out = "0." + std::string(-e, '0') + digits;
  } else {
    out = digits.substr(0, 1);
    if (digits.size() > 1) out += "." + digits.substr(1);
    out += "e" + std::to_string(e - 1);
  }
  return sign + out;
}

real parse_decimal(const std::string& s) { return real(s); }

real gamma(const real& x) {
  if (x <= 0 && x == floor(x)) throw std::domain_error("gamma: pole at non-positive integer");
  real r;
  mpfr_gamma(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}

namespace {

// Gamma(a, x) for a in (1, 2] by the alternating series
// Gamma(a) - x^a sum_k (-x)^k / (k! (a+k)); usable for small and moderate x.
real gamma_inc_series(const real& a, const real& x) {
  real eps = pow(real(2), -working_bits());
  real sum = 1 / a;
  real term(1);
  for (long k = 1; k < 100000; ++k) {
    term *= -x;
    term /= k;
    real add = term / (a + k);
    sum += add;
    if (abs(add) < abs(sum) * eps && x < k) break;
  }
  return gamma(a) - pow(x, a) * sum;
}

// Gamma(a, x) = e^{-x} x^a / (x+1-a - 1(1-a)/(x+3-a - 2(2-a)/(x+5-a - ...)))
// standard continued fraction, evaluated with modified Lentz; good for x > ~40.
real gamma_inc_cf(const real& a, const real& x) {
  real eps = pow(real(2), -working_bits());
  real tiny = pow(real(2), -(working_bits() + 64));
  real b = x + 1 - a;
  real c = 1 / tiny;
  real d = b.is_zero() ? 1 / tiny : 1 / b;
  real f = d;
  for (long i = 1; i < 100000; ++i) {
    real an = -real(i) * (real(i) - a);
    b += 2;
    d = an * d + b;
    if (d.is_zero()) d = tiny;
    c = b + an / c;
    if (c.is_zero()) c = tiny;
    d = 1 / d;
    real delta = c * d;
    f *= delta;
    if (abs(delta - 1) < eps) break;
  }
  return exp(-x) * pow(x, a) * f;
}

// Gamma(0, x) = E1(x), series form for small x.
real gamma_inc_zero_series(const real& x) {
  real eps = pow(real(2), -working_bits());
  real sum(0);
  real term(1);
  for (long k = 1; k < 100000; ++k) {
    term *= -x;
    term /= k;
    real add = -term / k;
    sum += add;
    if (abs(add) < abs(sum) * eps && x < k) break;
  }
  return -euler_gamma() - log(x) + sum;
}

}  // namespace

real upper_incomplete_gamma(const real& a, const real& x) {
  if (x <= 0) throw std::domain_error("upper_incomplete_gamma: requires x > 0");

  bool use_cf = x > 40;
  bool a_nonpos_int = (a <= 0 && a == floor(a));

  // precision margin: alternating-series cancellation ~0.44*x digits, plus
  // the descent's near-zero divisors for a near a non-positive integer
  long loss_digits = use_cf ? 0 : static_cast<long>(0.45 * x.to_double()) + 2;
  if (a < 1 && !a_nonpos_int) {
    double fr = std::abs(a.to_double() - std::round(a.to_double()));
    if (fr > 0 && fr < 0.5) loss_digits += static_cast<long>(-std::log10(fr)) + 1;
  }
  scoped_precision guard(working_bits() + bits_for_digits(loss_digits + 10));

  real ax = x;
  if (use_cf && !a_nonpos_int && a > 0) return gamma_inc_cf(a, ax);

  real base;
  long steps;
  real a0;
  if (a_nonpos_int) {
    // descend from Gamma(0,x) = E1(x); divisors are -1, -2, ...
    a0 = real(0);
    steps = -a.to_long();
    base = use_cf ? gamma_inc_cf(a0, ax) : gamma_inc_zero_series(ax);
  } else {
    // shift a into (1,2]: a0 = a + floor(2-a); negative floor means ascent
    long m = static_cast<long>(std::floor(2.0 - a.to_double()));
    {
      real chk = a + m;
      while (chk > 2) { ++m; chk = a + m; }
      while (chk <= 1) { --m; chk = a + m; }
    }
    a0 = a + m;
    steps = m;
    base = use_cf ? gamma_inc_cf(a0, ax) : gamma_inc_series(a0, ax);
    if (steps < 0) {
      // ascend: Gamma(a+1,x) = a Gamma(a,x) + x^a e^{-x}
      real g = base;
      real ai = a0;
      for (long i = 0; i < -steps; ++i) {
        g = ai * g + pow(ax, ai) * exp(-ax);
        ai += 1;
      }
      return g;
    }
  }

  // descend: Gamma(a-1,x) = (Gamma(a,x) - x^{a-1} e^{-x}) / (a-1)
  real g = base;
  real ai = a0;
  for (long i = 0; i < steps; ++i) {
    g = (g - pow(ax, ai - 1) * exp(-ax)) / (ai - 1);
    ai -= 1;
  }
  return g;
}

real laguerre(long n, const real& alpha, const real& x) {
  if (n < 0) throw std::domain_error("laguerre: n >= 0");
  real lm(1);
  if (n == 0) return lm;
  real l = alpha + 1 - x;
  for (long k = 1; k < n; ++k) {
    real lp = ((2 * k + 1 + alpha - x) * l - (k + alpha) * lm) / (k + 1);
    lm = std::move(l);
    l = std::move(lp);
  }
  return l;
}

std::vector<real> laguerre_row(long n_max, const real& alpha, const real& x) {
  std::vector<real> out;
  out.reserve(n_max + 1);
  out.emplace_back(1);
  if (n_max >= 1) out.push_back(alpha + 1 - x);
  for (long k = 1; k < n_max; ++k)
    out.push_back(((2 * k + 1 + alpha - x) * out[k] - (k + alpha) * out[k - 1]) / (k + 1));
  return out;
}

long matching_digits(const real& a, const real& b) {
  if (b.is_zero()) return a.is_zero() ? 100 : 0;
  real rel = abs((a - b) / b);
  if (rel.is_zero()) return digits_for_bits(std::min(a.precision(), b.precision()));
  real d = floor(1 - log10(2 * rel));
  return std::max(0L, d.to_long());
}

}  // namespace heun
