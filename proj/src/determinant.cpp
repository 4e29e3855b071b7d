#include "heun/determinant.hpp"

#include <stdexcept>
#include <vector>

namespace heun {

namespace {

constexpr long kDirectCap = 8192;
constexpr long kDenseFallbackCap = 400;

void validate(const det_params& dp, long min_n) {
  if (!dp.stable) throw std::invalid_argument("determinant: missing shat table");
  if (dp.N < min_n) throw std::invalid_argument("determinant: N too small");
  if (dp.stable->size() < dp.N - 1)
    throw std::invalid_argument("determinant: shat table shorter than N-1");
}

// keep the running value's binary exponent bounded; only sign and root
// location matter downstream
void rescale(real& v, long& ex) {
  if (v.is_zero() || !v.is_finite()) return;
  const long e = v.exponent2();
  if (e > (1L << 30) || e < -(1L << 30)) {
    v = v * pow(real(2), -e);
    ex += e;
  }
}

real dense_det(const det_params& dp, long& ex) {
  const long N = dp.N;
  std::vector<std::vector<real>> a(N);
  for (long m = 0; m < N; ++m) {
    a[m].reserve(N);
    for (long n = 0; n < N; ++n) a[m].push_back(delta_prime(dp, m, n));
  }
  real det(1);
  ex = 0;
  for (long k = 0; k < N; ++k) {
    long piv = k;
    for (long m = k + 1; m < N; ++m)
      if (abs(a[m][k]) > abs(a[piv][k])) piv = m;
    if (piv != k) {
      std::swap(a[piv], a[k]);
      det = -det;
    }
    det *= a[k][k];
    rescale(det, ex);
    if (a[k][k].is_zero()) return det;
    for (long m = k + 1; m < N; ++m) {
      const real f = a[m][k] / a[k][k];
      if (f.is_zero()) continue;
      for (long n = k + 1; n < N; ++n) a[m][n] -= f * a[k][n];
    }
  }
  return det;
}

}  // namespace

det_params with_probe(const det_params& dp, const real& z_probe) {
  det_params out = dp;
  out.zeta = zeta_of(z_probe, dp.s, dp.tau);
  return out;
}

real delta_prime(const det_params& dp, long m, long n) {
  if (!dp.stable) throw std::invalid_argument("delta_prime: missing shat table");
  if (m < 0 || n < 0 || m >= dp.N || n >= dp.N)
    throw std::out_of_range("delta_prime: index out of range");
  const real smm = shat(*dp.stable, m, m);
  const real m1 = real(m + 1);
  if (m == n) return (m1 * m1 - (dp.zeta - smm) * (dp.zeta - smm)) / (m1 * m1);
  const real step = (n > m) ? real(1) : real(0);
  return ((m1 + dp.zeta - smm) / (m1 * m1)) * (shat(*dp.stable, m, n) - step);
}

det_value det_direct(const det_params& dp0, const real& z_probe, const numeric_context& ctx) {
  scoped_precision guard(ctx);
  validate(dp0, 2);
  if (dp0.N > kDirectCap) throw std::invalid_argument("det_direct: N exceeds direct cap");
  const det_params dp = with_probe(dp0, z_probe);
  const shat_table& st = *dp.stable;
  const long N = dp.N;
  const real& zeta = dp.zeta;

  const long wd = digits_for_bits(working_bits());
  const real pivot_floor = pow(real(10), -(wd - 20));

  det_value out;
  out.N = N;
  out.method = det_method::direct;

  // Delta' = diag(p) * (diag(dlt) - upper(u v^T) + lower(q W^T)) with
  // u = P, v = V, q = Q limited to the first N entries; the elimination
  // preserves that shape, touching only dlt, u and W.
  std::vector<real> dlt, u, w;
  dlt.reserve(N);
  u.reserve(N);
  w.reserve(N);
  real det(1);
  long ex = 0;
  for (long m = 0; m < N; ++m) {
    const real smm = shat(st, m, m);
    const real m1sq = real((m + 1) * (m + 1));
    det *= (m + 1 + zeta - smm) / m1sq;
    rescale(det, ex);
    dlt.push_back(m + 1 - zeta + smm);
    u.push_back(st.P[m]);
    w.push_back(st.W[m]);
  }

  for (long k = 0; k < N; ++k) {
    real piv = dlt[k];
    det *= piv;
    rescale(det, ex);
    if (k == N - 1) break;
    const real floor_k = pivot_floor * (k + 1);
    if (abs(piv) < floor_k) {
      out.degenerate = true;
      piv = (piv.sign() < 0) ? -floor_k : floor_k;
    }
    const real c = u[k] * w[k] / piv;
    if (c.is_zero()) continue;
    for (long m = k + 1; m < N; ++m) {
      dlt[m] += c * st.Q[m] * st.V[m];
      u[m] -= c * st.Q[m];
      w[m] += c * st.V[m];
    }
  }

  if (out.degenerate && N <= kDenseFallbackCap) {
    long ex2 = 0;
    det = dense_det(dp, ex2);
    ex = ex2;
    out.degenerate = false;
  }
  out.value = det;
  out.exp2 = ex;
  return out;
}

det_value det_recursion(const det_params& dp0, const real& z_probe,
                        const numeric_context& ctx) {
  scoped_precision guard(ctx);
  validate(dp0, 3);
  const det_params dp = with_probe(dp0, z_probe);
  const shat_table& st = *dp.stable;
  const long N = dp.N;
  const real& zeta = dp.zeta;

  const long wd = digits_for_bits(working_bits());
  const real one_floor = pow(real(10), -(wd - 10));

  det_value out;
  out.N = N;
  out.method = det_method::recursion;

  auto dnn = [&st](long n) { return shat(st, n, n); };

  real dN = dnn(N - 1);
  real dprev = real(N) * N - (zeta - dN) * (zeta - dN);
  dprev /= real(N) * N;  // Delta_{N,N}
  real dprev2(1);        // Delta_{N+1,N} convention
  long ex = 0;

  for (long n = N - 1; n >= 1; --n) {
    const real snn = dnn(n);
    const real snn_prev = dnn(n - 1);
    if (abs(snn) < one_floor || abs(snn - 1) < one_floor)
      throw std::runtime_error("det_recursion: diagonal Shat too close to 0 or 1");
    const real lo = shat(st, n, n - 1);   // Shat^n_{n-1}
    const real up = shat(st, n - 1, n);   // Shat^{n-1}_n
    const real lod = lo / snn;
    const real upd = (up - 1) / (snn - 1);
    const real nsq = real(n) * n;
    const real a = ((n + zeta - snn_prev) / nsq) *
                   ((n + 1 - zeta) * (1 + lod * upd) + snn_prev - 1 - (up - 1) * lod);
    const real b = -((n + 1 + zeta - snn) / (real(n + 1) * (n + 1))) * lod * (n + 1 - zeta);
    const real c = -((n + zeta - snn_prev) / nsq) * upd * (n + 2 - zeta);
    real cur = a * dprev - b * c * dprev2;
    if (!cur.is_finite()) throw std::runtime_error("det_recursion: non-finite value");
    const long shift = cur.is_zero() ? 0 : cur.exponent2();
    if (shift > (1L << 26) || shift < -(1L << 26)) {
      // keep the pair on a common scale so the next step stays balanced
      const real f = pow(real(2), -shift);
      cur = cur * f;
      dprev = dprev * f;
      ex += shift;
    }
    dprev2 = dprev;
    dprev = cur;
  }

  out.value = dprev;
  out.exp2 = ex;
  return out;
}

identity_report dirac_structure_check(const det_params& dp, const numeric_context& ctx) {
  scoped_precision guard(ctx);
  validate(dp, 3);
  const shat_table& st = *dp.stable;
  const itable& it = *st.it;
  const real& alpha = it.alpha_lag;
  const real& y = it.y;
  const real& s = dp.s;
  const long n_max = std::min(20L, st.size() - 1);
  const long m_max = std::min(30L, st.size());

  const long dd = digits_for_bits(working_bits());
  const real tol = pow(real(10), -(dd - 12));
  identity_report rep;
  auto S = [&st](long m, long n) { return shat(st, m, n); };

  std::vector<real> r;  // m!/(alpha+1)_m
  r.reserve(m_max + 1);
  r.emplace_back(1);
  for (long m = 1; m <= m_max; ++m) r.push_back(r[m - 1] * m / (alpha + m));

  const real zy = (2 - s) * s * y - 1 / (4 * y);

  real worst1(0), worst2(0);
  for (long n = 1; n <= n_max; ++n) {
    for (long m = n; m <= m_max; ++m) {
      const real t1 = S(n, n) * S(m, n - 1);
      const real t2 = -S(n, n - 1) * S(m, n);
      const real sc = max(max(abs(t1), abs(t2)), real(1));
      worst1 = max(worst1, abs(t1 + t2) / sc);
    }
    for (long m = 0; m < n; ++m) {
      const real t1 = S(n, n) * (S(m, n - 1) - 1);
      const real t2 = -S(n, n - 1) * (S(m, n) - 1);
      const real t3 = (r[m] / it.gamma_a1) * (imn(it, m, n) / (alpha + n)) *
                      (n + 1 - s - zy);
      const real sc = max(max(abs(t1), abs(t2)), max(abs(t3), real(1)));
      worst2 = max(worst2, abs(t1 + t2 + t3) / sc);
    }
  }
  identity_check c1{"dirac_minor_vanishes", worst1, tol, false};
  c1.pass = worst1.is_finite() && !(worst1 > tol);
  rep.checks.push_back(std::move(c1));
  identity_check c2{"dirac_minor_bracket", worst2, tol, false};
  c2.pass = worst2.is_finite() && !(worst2 > tol);
  rep.checks.push_back(std::move(c2));

  // zeta was set at the probed z; at a Dirac eigenvalue z equals
  // z_y = (2-s) s y - 1/(4y) identically
  const real z_here = dp.zeta - s;  // tau = 1 in Dirac mode
  const real res = abs(z_here - zy) / max(abs(z_here), real(1));
  identity_check c3{"dirac_bracket_at_eigenvalue", res, tol, false};
  c3.pass = res.is_finite() && !(res > tol);
  rep.checks.push_back(std::move(c3));
  return rep;
}

}  // namespace heun
