#include "heun/determinant.hpp"

#include <memory>
#include <utility>
#include <vector>

#include "doctest.h"
#include "support.hpp"

using heun::build_itable;
using heun::det_method;
using heun::det_mode;
using heun::det_params;
using heun::det_value;
using heun::delta_prime;
using heun::itable;
using heun::make_shat_table;
using heun::numeric_context;
using heun::real;
using heun::scoped_precision;
using heun::shat;
using heun::shat_table;

namespace {

det_params params_for(const real& tau, const real& s, long spin_lambda, const real& y,
                      long N, det_mode mode, const numeric_context& ctx) {
  const real alpha_lag = 2 * (tau - s);
  auto it = std::make_shared<itable>(build_itable(alpha_lag, y, N, ctx));
  const real omega = heun::omega_of(y, tau, s, real(spin_lambda));
  det_params dp;
  dp.stable = std::make_shared<shat_table>(make_shat_table(std::move(it), omega, ctx));
  dp.s = s;
  dp.tau = tau;
  dp.zeta = real(0);
  dp.N = N;
  dp.mode = mode;
  return dp;
}

det_params singlet_params(const real& alpha_fs, const real& y, long N,
                          const numeric_context& ctx) {
  return params_for(real(1), heun::s_of(alpha_fs, real(1)), 0, y, N, det_mode::free_y,
                    ctx);
}

real full_value(const det_value& dv) {
  if (dv.exp2 == 0) return dv.value;
  return dv.value * heun::pow(real(2), dv.exp2);
}

// Dense LU with partial pivoting over the explicitly assembled matrix.
real dense_det(const det_params& dp) {
  const long N = dp.N;
  std::vector<std::vector<real>> a(N, std::vector<real>(N));
  for (long m = 0; m < N; ++m)
    for (long n = 0; n < N; ++n) a[m][n] = delta_prime(dp, m, n);

  real det(1);
  for (long k = 0; k < N; ++k) {
    long piv = k;
    for (long r = k + 1; r < N; ++r)
      if (heun::abs(a[r][k]) > heun::abs(a[piv][k])) piv = r;
    if (piv != k) {
      std::swap(a[piv], a[k]);
      det = -det;
    }
    det *= a[k][k];
    if (a[k][k].is_zero()) return det;
    for (long r = k + 1; r < N; ++r) {
      const real f = a[r][k] / a[k][k];
      for (long c = k; c < N; ++c) a[r][c] -= f * a[k][c];
    }
  }
  return det;
}

}  // namespace

TEST_CASE("matrix elements match the explicit low-order entries") {
  const numeric_context ctx = numeric_context::for_digits(40);
  scoped_precision guard(ctx.precision_bits);
  const real alpha = real(1) / 137;
  det_params dp = singlet_params(alpha, real(1), 12, ctx);
  const real z("1.17");
  dp = heun::with_probe(dp, z);
  const shat_table& st = *dp.stable;

  const real zeta = dp.zeta;
  CHECK(heun::abs(delta_prime(dp, 0, 0) -
                  (1 - heun::pow(zeta - shat(st, 0, 0), 2))) < real("1e-36"));
  for (long n : {1L, 3L, 7L}) {
    const real want = (1 + zeta - shat(st, 0, 0)) * (shat(st, 0, n) - 1);
    CHECK(heun::abs(delta_prime(dp, 0, n) - want) < real("1e-36"));
  }
  const real want10 = ((2 + zeta - shat(st, 1, 1)) / 4) * shat(st, 1, 0);
  CHECK(heun::abs(delta_prime(dp, 1, 0) - want10) < real("1e-36"));

  // general diagonal
  for (long m : {2L, 6L}) {
    const real want =
        (heun::pow(real(m + 1), 2) - heun::pow(zeta - shat(st, m, m), 2)) /
        heun::pow(real(m + 1), 2);
    CHECK(heun::abs(delta_prime(dp, m, m) - want) < real("1e-36"));
  }
}

TEST_CASE("with_probe refreshes zeta only") {
  const numeric_context ctx = numeric_context::for_digits(30);
  scoped_precision guard(ctx.precision_bits);
  const real alpha = real(1) / 137;
  const det_params base = singlet_params(alpha, real(1), 8, ctx);
  const real z("0.8125");
  const det_params dp = heun::with_probe(base, z);
  CHECK(dp.zeta == z + dp.s - (dp.tau - 1));
  CHECK(dp.stable.get() == base.stable.get());
  CHECK(dp.N == base.N);
}

TEST_CASE("structured elimination agrees with dense pivoted elimination") {
  const numeric_context ctx = numeric_context::for_digits(40);
  scoped_precision guard(ctx.precision_bits);
  const real alpha = real(1) / 137;
  det_params dp = singlet_params(alpha, real(1), 24, ctx);

  for (const char* zs : {"0.9", "1.17", "1.6"}) {
    const real z(zs);
    const det_value dv = heun::det_direct(dp, z, ctx);
    CHECK_FALSE(dv.degenerate);
    const real dense = dense_det(heun::with_probe(dp, z));
    CHECK(heun::abs(full_value(dv) - dense) < real("1e-30") * (1 + heun::abs(dense)));
  }
}

TEST_CASE("recursion reproduces the direct value at depth") {
  const numeric_context ctx = numeric_context::for_digits(30);
  scoped_precision guard(ctx.precision_bits);
  const real alpha = real(1) / 137;
  det_params dp = singlet_params(alpha, real(1), 200, ctx);

  for (const char* zs : {"1.05", "1.172769", "1.31"}) {
    const real z(zs);
    const real a = full_value(heun::det_direct(dp, z, ctx));
    const real b = full_value(heun::det_recursion(dp, z, ctx));
    CHECK(heun::abs(a - b) < real("1e-21") * (1 + heun::abs(a)));
  }
}

TEST_CASE("determinant changes sign across the y = 1 ground root") {
  const numeric_context ctx = numeric_context::for_digits(30);
  scoped_precision guard(ctx.precision_bits);
  const real alpha = real(1) / 137;
  det_params dp = singlet_params(alpha, real(1), 100, ctx);

  // N = 100 truncation root: 1.172769351954842309142413
  const real root("1.1727693519548423");
  const real lo = full_value(heun::det_direct(dp, root - real("1e-3"), ctx));
  const real hi = full_value(heun::det_direct(dp, root + real("1e-3"), ctx));
  CHECK(lo * hi < 0);
  const real at = full_value(heun::det_direct(dp, root, ctx));
  CHECK(heun::abs(at) < heun::abs(lo));
  CHECK(heun::abs(at) < heun::abs(hi));
}

TEST_CASE("off-diagonal entries decay along a row") {
  const numeric_context ctx = numeric_context::for_digits(30);
  scoped_precision guard(ctx.precision_bits);
  const real alpha = real(1) / 137;
  det_params dp = singlet_params(alpha, real(1), 40, ctx);
  dp = heun::with_probe(dp, real("1.2"));
  const real e2 = heun::abs(delta_prime(dp, 0, 2));
  const real e8 = heun::abs(delta_prime(dp, 0, 8));
  const real e32 = heun::abs(delta_prime(dp, 0, 32));
  CHECK(e8 < e2);
  CHECK(e32 < e8);
}

TEST_CASE("dirac structure relations hold") {
  const numeric_context ctx = numeric_context::for_digits(30);
  scoped_precision guard(ctx.precision_bits);
  const real alpha = real(1) / 137;
  const heun::dirac_params dmap = heun::dirac_map(alpha, 0);
  const real y = heun::dirac_y_of(alpha, dmap.z_prime);
  det_params dp = params_for(real(1), dmap.s_prime, 0, y, 64, det_mode::coupled, ctx);
  dp = heun::with_probe(dp, dmap.z_prime);

  const heun::identity_report rep = heun::dirac_structure_check(dp, ctx);
  for (const heun::identity_check& c : rep.checks) {
    INFO(c.name << " residual " << heun::to_decimal(c.residual, 6));
    CHECK(c.pass);
  }
  CHECK(rep.all_pass());
}
