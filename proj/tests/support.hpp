#pragma once

#include <functional>

#include "heun/numctx.hpp"

// Test-only numeric oracles, independent of the library's own algorithms.
namespace testsup {

using heun::real;

// integral of f over (0, inf) by exp-sinh double-exponential quadrature;
// nodes cluster exponentially toward 0, so steep-but-integrable behaviour
// near the origin is handled. Assumes working precision is already set.
template <class F>
real integrate_0_inf(F f, long max_level = 11) {
  real half_pi = heun::pi() / 2;
  real tol = heun::pow(real(2), -(heun::working_bits() - 16));
  real prev;
  bool have_prev = false;
  for (long level = 3; level <= max_level; ++level) {
    real h = heun::pow(real(2), -level);
    real sum(0);
    for (int dir : {+1, -1}) {
      long quiet = 0;
      for (long k = (dir > 0 ? 0 : -1);; k += dir) {
        real u = h * k;
        real t = heun::exp(half_pi * heun::sinh(u));
        real w = half_pi * heun::cosh(u) * t;
        real term = f(t) * w;
        sum += term;
        if (heun::abs(term) < heun::abs(sum) * tol || term.is_zero()) {
          if (++quiet >= 8) break;
        } else {
          quiet = 0;
        }
        if (k * dir > 200000) break;
      }
    }
    sum *= h;
    if (have_prev && heun::abs(sum - prev) <= heun::abs(sum) * tol * 1024) return sum;
    prev = sum;
    have_prev = true;
  }
  return prev;
}

// oracle for the upper incomplete gamma: int_x^inf t^{a-1} e^{-t} dt
// via the shift t = x + s.
inline real gamma_inc_quadrature(const real& a, const real& x) {
  return integrate_0_inf([&](const real& s) {
    real t = x + s;
    return heun::pow(t, a - 1) * heun::exp(-t);
  });
}

// reference upper incomplete gamma from MPFR, used as a second oracle
inline real gamma_inc_mpfr(const real& a, const real& x) {
  real r;
  mpfr_gamma_inc(r.raw(), a.raw(), x.raw(), MPFR_RNDN);
  return r;
}

inline real binomial(const real& top, long k) {
  real num(1);
  for (long i = 0; i < k; ++i) num *= (top - i);
  real den(1);
  for (long i = 2; i <= k; ++i) den *= i;
  return num / den;
}

// explicit polynomial form L_n^{(alpha)}(x) = sum_k binom(n+alpha, n-k) (-x)^k / k!
inline real laguerre_explicit(long n, const real& alpha, const real& x) {
  real sum(0);
  real xk(1);
  real kfact(1);
  for (long k = 0; k <= n; ++k) {
    if (k > 0) {
      xk *= -x;
      kfact *= k;
    }
    sum += binomial(alpha + n, n - k) * xk / kfact;
  }
  return sum;
}

}  // namespace testsup
