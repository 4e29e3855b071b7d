#include "heun/wavefn.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>
#include <vector>

namespace heun {

namespace {

constexpr long kMillerCap = 1L << 21;
constexpr long kQuietRun = 48;

std::vector<real> miller_run(const cf_coefficients& cf, long M) {
  std::vector<real> g(static_cast<std::size_t>(M) + 1);
  g[static_cast<std::size_t>(M)] = real(0);
  g[static_cast<std::size_t>(M - 1)] = real(1);
  for (long n = M - 1; n >= 1; --n) {
    const cf_triple t = coeffs(n, cf);
    if (t.A.is_zero()) throw std::runtime_error("miller_run: A_n vanished");
    g[static_cast<std::size_t>(n - 1)] =
        -(t.C * g[static_cast<std::size_t>(n + 1)] + t.B * g[static_cast<std::size_t>(n)]) /
        t.A;
  }
  if (g[0].is_zero() || !g[0].is_finite())
    throw std::runtime_error("miller_run: unusable g_0");
  const real inv = 1 / g[0];
  for (auto& v : g) v *= inv;
  return g;
}

struct sum_pair {
  real S;   // sum g_n r_n L_n^(a)
  real Sp;  // its rho derivative, -sum_{n>=1} g_n r_n L_{n-1}^(a+1)
};

// One streaming pass over the coefficients; both Laguerre families advance by
// forward recurrence. Terms decay like exp(-2 sqrt(n/y)) against a peak that
// grows only polynomially, so a long run of negligible terms ends the sum.
sum_pair laguerre_sums(const laguerre_series& se, const real& rho) {
  const real& a = se.alpha_lag;
  const long M = static_cast<long>(se.g.size()) - 1;
  sum_pair out{se.g[0], real(0)};
  real r(1);                  // n!/(a+1)_n
  real Lp(1), Lc = 1 + a - rho;   // L_{n-1}^(a), L_n^(a) at n = 1
  real Kp(0), Kc(1);              // L_{n-2}^(a+1), L_{n-1}^(a+1) at n = 1
  real peak = abs(out.S);
  const real tiny = pow(real(2), -(static_cast<long>(working_bits()) + 32));
  long quiet = 0;
  for (long n = 1; n <= M; ++n) {
    r = r * n / (a + n);
    const real t = se.g[static_cast<std::size_t>(n)] * r * Lc;
    const real tp = se.g[static_cast<std::size_t>(n)] * r * Kc;
    out.S += t;
    out.Sp -= tp;
    peak = max(peak, max(abs(t), abs(tp)));
    if (abs(t) <= tiny * peak && abs(tp) <= tiny * peak) {
      if (++quiet >= kQuietRun) break;
    } else {
      quiet = 0;
    }
    const real Ln = ((2 * n + 1 + a - rho) * Lc - (n + a) * Lp) / (n + 1);
    Lp = Lc;
    Lc = Ln;
    const real Kn = (n == 1) ? (2 + a - rho)
                             : (((2 * n + a - rho) * Kc - (n + a) * Kp) / n);
    Kp = Kc;
    Kc = Kn;
  }
  return out;
}

real prefactor(const laguerre_series& se, const real& rho) {
  const real p = se.sp.tau - 1 - se.sp.s;
  return pow(rho, p) * exp(-rho / 2);
}

}  // namespace

laguerre_series miller_coefficients(const eigen_result& eig, const real& alpha_fs,
                                    const numeric_context& ctx, long M_start) {
  if (M_start < 8) throw std::invalid_argument("miller_coefficients: M_start too small");
  const long T = ctx.target_digits;
  scoped_precision guard(
      std::max(ctx.precision_bits, bits_for_digits(T + 18)));
  const spectral sp = make_spectral_coupled(alpha_fs, eig.ch, eig.z);
  const cf_coefficients cf = cf_of(sp, eig.ch);
  const real tol = pow(real(10), -T);

  long M = M_start;
  std::vector<real> prev = miller_run(cf, M);
  for (long M2 = 2 * M; M2 <= kMillerCap; M2 *= 2) {
    std::vector<real> cur = miller_run(cf, M2);
    bool ok = true;
    for (long n = 0; n <= M / 2 && ok; ++n) {
      const std::size_t i = static_cast<std::size_t>(n);
      if (!(abs(prev[i] - cur[i]) <= tol * (abs(cur[i]) + tol))) ok = false;
    }
    if (ok) {
      laguerre_series out;
      out.g = std::move(cur);
      out.alpha_lag = 2 * (sp.tau - sp.s);
      out.sp = sp;
      out.ch = eig.ch;
      return out;
    }
    prev = std::move(cur);
    M = M2;
  }
  throw std::runtime_error("miller_coefficients: failed to stabilize below doubling cap");
}

laguerre_series normalize(const laguerre_series& series, const numeric_context& ctx) {
  scoped_precision guard(ctx);
  const real& a = series.alpha_lag;
  real r(1);
  real sum = series.g[0] * series.g[0];
  for (long n = 1; n < static_cast<long>(series.g.size()); ++n) {
    r = r * n / (a + n);
    const real& gn = series.g[static_cast<std::size_t>(n)];
    sum += gn * gn * r;
  }
  sum *= gamma(a + 1);
  if (!sum.is_finite() || !(sum > 0))
    throw std::runtime_error("normalize: zero norm");
  const real ehat = energy_of_z(series.sp.z, series.sp.alpha_fs);
  const real target = pow(2 * ehat / series.sp.z, 3);
  real k = sqrt(target / sum);
  laguerre_series out = series;
  if (out.g[0] < 0) k = -k;
  for (auto& v : out.g) v *= k;
  out.normalized = true;
  return out;
}

real eval_FplusK(const laguerre_series& series, const real& rho,
                 const numeric_context& ctx) {
  scoped_precision guard(ctx);
  if (rho < 0) throw std::invalid_argument("eval_FplusK: rho < 0");
  return prefactor(series, rho) * laguerre_sums(series, rho).S;
}

real eval_FplusK_deriv(const laguerre_series& series, const real& rho,
                       const numeric_context& ctx) {
  scoped_precision guard(ctx);
  if (!(rho > 0)) throw std::invalid_argument("eval_FplusK_deriv: rho must be positive");
  const sum_pair s = laguerre_sums(series, rho);
  const real p = series.sp.tau - 1 - series.sp.s;
  return prefactor(series, rho) * ((p / rho - real(1) / 2) * s.S + s.Sp);
}

fk_pair split_FK(const laguerre_series& series, const real& rho,
                 const numeric_context& ctx) {
  scoped_precision guard(ctx);
  const real fpk = eval_FplusK(series, rho, ctx);
  const real ehat = energy_of_z(series.sp.z, series.sp.alpha_fs);
  const real lam = series.sp.y * (1 + ehat) / ehat;
  const real nu = series.sp.y * (1 - ehat) / ehat;
  const real den = 2 + (lam - nu) * rho;
  const real big = fpk * (1 + lam * rho) / den;
  const real small = fpk * (1 - nu * rho) / den;
  fk_pair out;
  if (series.ch.kind == channel_kind::triplet_j_zero) {
    out.F = small;
    out.K = big;
  } else {
    out.F = big;
    out.K = small;
  }
  return out;
}

real eval_G(const laguerre_series& series, const real& rho, const numeric_context& ctx) {
  scoped_precision guard(ctx);
  if (!(rho > 0)) {
    const real expo = series.sp.tau - 1 - series.sp.s;
    if (expo > 0) return real(0);
    throw std::domain_error("eval_G: singular at rho = 0 for this channel");
  }
  const sum_pair s = laguerre_sums(series, rho);
  const real p = series.sp.tau - 1 - series.sp.s;
  const real pre = prefactor(series, rho);
  const real value = pre * s.S;
  const real deriv = pre * ((p / rho - real(1) / 2) * s.S + s.Sp);
  const real fac = rho / (series.sp.alpha_fs * (1 + series.sp.y * rho));
  const real j(series.ch.J);
  switch (series.ch.kind) {
    case channel_kind::singlet:
      return sqrt((j + 1) / (2 * j + 1)) * (deriv - j / rho * value) * fac;
    case channel_kind::triplet_j_zero:
      return -(deriv + 2 / rho * value) * fac;
    case channel_kind::triplet_j_equal_l:
      return (sqrt(j / (2 * j + 1)) * (deriv - j / rho * value) +
              sqrt((j + 1) / (2 * j + 1)) * (deriv + (j + 1) / rho * value)) /
             2 * fac;
    default:
      throw std::invalid_argument("eval_G: channel has no single large component");
  }
}

radial_grid sample_grid(const laguerre_series& series, const real& r_min,
                        const real& r_max, long points, grid_scale scale,
                        const numeric_context& ctx) {
  if (!(r_min > 0) || !(r_max > r_min))
    throw std::invalid_argument("sample_grid: need 0 < r_min < r_max");
  if (points < 2) throw std::invalid_argument("sample_grid: need at least 2 points");
  scoped_precision guard(ctx);
  radial_grid gr;
  gr.r_points.reserve(static_cast<std::size_t>(points));
  for (long i = 0; i < points; ++i) {
    real r;
    if (i == 0)
      r = r_min;
    else if (i == points - 1)
      r = r_max;
    else if (scale == grid_scale::linear)
      r = r_min + (r_max - r_min) * i / (points - 1);
    else
      r = r_min * exp(log(r_max / r_min) * i / (points - 1));
    const real rho = rho_of_r(series, r);
    const fk_pair fk = split_FK(series, rho, ctx);
    gr.r_points.push_back(r);
    gr.F.push_back(fk.F);
    gr.K.push_back(fk.K);
    gr.G.push_back(eval_G(series, rho, ctx));
  }
  return gr;
}

real rho_of_r(const laguerre_series& series, const real& r_2a0) {
  const real ehat = energy_of_z(series.sp.z, series.sp.alpha_fs);
  return 2 * ehat * r_2a0 / series.sp.z;
}

}  // namespace heun
