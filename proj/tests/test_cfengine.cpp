#include "heun/cfengine.hpp"

#include "doctest.h"
#include "support.hpp"

using heun::accelerator_kind;
using heun::cf_coefficients;
using heun::cf_of;
using heun::channel;
using heun::coeffs;
using heun::make_channel;
using heun::numeric_context;
using heun::real;
using heun::scoped_precision;

namespace {

cf_coefficients singlet_cf(const real& alpha, const real& z) {
  const channel ch = make_channel(0, 0, 0);
  return cf_of(heun::make_spectral_coupled(alpha, ch, z), ch);
}

cf_coefficients free_y_cf(const real& alpha, const real& z, const real& y) {
  const channel ch = make_channel(0, 0, 0);
  return cf_of(heun::make_spectral_free_y(alpha, ch, z, y), ch);
}

}  // namespace

TEST_CASE("recurrence coefficients match their defining formulas") {
  scoped_precision guard(heun::bits_for_digits(50));
  const real alpha = real(1) / 137;
  const channel ch = make_channel(2, 1, 2);  // J=L triplet, lambda = -1
  const real z("2.73");
  const heun::spectral sp = heun::make_spectral_coupled(alpha, ch, z);
  const cf_coefficients cf = cf_of(sp, ch);

  const real tau = sp.tau, s = sp.s, y = sp.y;
  const real lam_tilde = -real(ch.spin_lambda());
  for (long n : {0L, 1L, 2L, 5L, 17L}) {
    const heun::cf_triple t = coeffs(n, cf);
    const real A = (n + 2 * tau - 2 * s) * (n - 1 - z + tau - s);
    const real B = -real(n) * (2 * n + 1 / y + 2 * (1 + 2 * tau - 2 * s - z)) -
                   (1 + 2 * tau - 2 * s) * (1 / (2 * y) - z + tau - s) + z / y -
                   (tau - 1 - s + lam_tilde);
    const real C = (n + 1) * (n + 2 - z + tau - s);
    CHECK(heun::abs(t.A - A) < real("1e-44") * (1 + heun::abs(A)));
    CHECK(heun::abs(t.B - B) < real("1e-44") * (1 + heun::abs(B)));
    CHECK(heun::abs(t.C - C) < real("1e-44") * (1 + heun::abs(C)));
  }
}

TEST_CASE("nu offset shifts the recurrence index") {
  scoped_precision guard(heun::bits_for_digits(45));
  const real alpha = real(1) / 137;
  cf_coefficients base = singlet_cf(alpha, real("1.3"));
  cf_coefficients shifted = base;
  shifted.nu = real(3);
  for (long n : {0L, 1L, 4L, 9L}) {
    const heun::cf_triple a = coeffs(n + 3, base);
    const heun::cf_triple b = coeffs(n, shifted);
    CHECK(heun::abs(a.A - b.A) < real("1e-40") * (1 + heun::abs(a.A)));
    CHECK(heun::abs(a.B - b.B) < real("1e-40") * (1 + heun::abs(a.B)));
    CHECK(heun::abs(a.C - b.C) < real("1e-40") * (1 + heun::abs(a.C)));
  }
}

TEST_CASE("condition value is tiny at published roots and changes sign across them") {
  // the accelerated tail is roundoff-limited, so the working precision has to
  // stay well ahead of the lozenge depth
  const numeric_context ctx = numeric_context::for_digits(120);
  scoped_precision guard(ctx.precision_bits);
  const real alpha = real(1) / 137;

  const real z1("0.9999999968218806697141710");
  const real f_root = heun::cf_value(singlet_cf(alpha, z1), ctx, 2000,
                                     accelerator_kind::rho_osada(real(20)));
  const real f_off = heun::cf_value(singlet_cf(alpha, z1 - real("1e-6")), ctx, 2000,
                                    accelerator_kind::rho_osada(real(20)));
  CHECK(heun::abs(f_root) < real("1e-12"));
  CHECK(heun::abs(f_off) > real("1e-8"));

  const real lo = heun::cf_value(singlet_cf(alpha, z1 - real("1e-8")), ctx, 2000,
                                 accelerator_kind::rho_osada(real(20)));
  const real hi = heun::cf_value(singlet_cf(alpha, z1 + real("1e-8")), ctx, 2000,
                                 accelerator_kind::rho_osada(real(20)));
  CHECK(lo * hi < 0);
}

TEST_CASE("free-y condition vanishes at the y=1 benchmark root") {
  const numeric_context ctx = numeric_context::for_digits(30);
  scoped_precision guard(ctx.precision_bits);
  const real alpha = real(1) / 137;
  const real z("1.172769351954842311051307");

  // unaccelerated tail converges slowly; the root is still well separated
  const real at = heun::cf_value(free_y_cf(alpha, z, real(1)), ctx, 3000,
                                 accelerator_kind::none());
  const real off = heun::cf_value(free_y_cf(alpha, z + real("1e-4"), real(1)), ctx,
                                  3000, accelerator_kind::none());
  CHECK(heun::abs(at) < real("1e-7"));
  CHECK(heun::abs(off) > 10 * heun::abs(at));
}

TEST_CASE("lentz trace shape and monotone settling") {
  const numeric_context ctx = numeric_context::for_digits(40);
  scoped_precision guard(ctx.precision_bits);
  const real alpha = real(1) / 137;
  const heun::convergent_trace tr =
      heun::lentz_sequence(singlet_cf(alpha, real("0.99999999")), ctx, 400);

  CHECK(tr.values.size() == 401);
  CHECK(tr.terms_used == 400);
  CHECK_FALSE(tr.terminated);

  // values[0] = B_0/C_0 by construction
  const heun::cf_triple t0 = coeffs(0, singlet_cf(alpha, real("0.99999999")));
  CHECK(heun::abs(tr.values[0] - t0.B / t0.C) < real("1e-38"));

  // successive differences shrink once the tail regime is reached
  const real d_early = heun::abs(tr.values[60] - tr.values[50]);
  const real d_late = heun::abs(tr.values[390] - tr.values[380]);
  CHECK(d_late < d_early);
}

TEST_CASE("dirac parameters truncate the fraction at the eigenvalue") {
  const numeric_context ctx = numeric_context::for_digits(40);
  scoped_precision guard(ctx.precision_bits);
  const real alpha = real(1) / 137;

  // n_r = 3: C_{n_r - 2}(z') = 0 exactly at the Dirac point, so the Lentz
  // run must report the collapse instead of dividing by a rounding residue
  const heun::dirac_params dp = heun::dirac_map(alpha, 3);
  cf_coefficients cf;
  cf.z = dp.z_prime;
  cf.y = heun::dirac_y_of(alpha, dp.z_prime);
  cf.tau = real(1);
  cf.s = dp.s_prime;
  cf.spin_lambda = 0;
  cf.nu = real(0);
  const heun::convergent_trace tr = heun::lentz_sequence(cf, ctx, 120);
  CHECK(tr.truncated_at == 1);
  CHECK(tr.terms_used == 0);
}
