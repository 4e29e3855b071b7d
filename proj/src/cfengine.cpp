#include "heun/cfengine.hpp"

#include <stdexcept>

namespace heun {

cf_coefficients cf_of(const spectral& sp, const channel& ch) {
  cf_coefficients cf;
  cf.z = sp.z;
  cf.y = sp.y;
  cf.tau = sp.tau;
  cf.s = sp.s;
  cf.spin_lambda = ch.spin_lambda();
  cf.nu = real(0);
  return cf;
}

cf_triple coeffs(long n, const cf_coefficients& cf) {
  cf_triple t;
  const real& z = cf.z;
  const real& y = cf.y;
  const real lam = real(-cf.spin_lambda);
  const real ts = cf.tau - cf.s;
  if (cf.nu.is_zero()) {
    t.A = (n + 2 * ts) * (n - 1 - z + ts);
    t.B = -real(n) * (2 * n + 1 / y + 2 * (1 + 2 * ts - z)) -
          (1 + 2 * ts) * (1 / (2 * y) - z + ts) + z / y - (ts - 1 + lam);
    t.C = real(n + 1) * (n + 2 - z + ts);
  } else {
    const real four_p = 1 / y;
    const real gamma_h = 1 + 2 * ts;
    const real delta_h(-1);
    const real beta_h = ts - z;
    const real sigma_h = ts - 1 + lam + 1 / (2 * y) - (z - ts) / y;
    const real nn = real(n) + cf.nu;
    t.A = (gamma_h + nn - 1) * (beta_h + nn - 1);
    t.B = nn * (-four_p - gamma_h + delta_h - 2 * beta_h - 2 * nn) -
          beta_h * gamma_h - sigma_h;
    t.C = (nn + 1) * (beta_h - delta_h + nn + 1);
  }
  return t;
}

convergent_trace lentz_sequence(const cf_coefficients& cf, const numeric_context& ctx,
                                long max_terms) {
  scoped_precision guard(ctx);
  if (max_terms < 1) throw std::invalid_argument("lentz_sequence: max_terms must be >= 1");

  const long wd = digits_for_bits(working_bits());
  const real tiny = pow(real(10), -(wd + 30));
  const real collapse = pow(real(10), -(wd - 10));

  convergent_trace tr;
  tr.values.reserve(static_cast<size_t>(max_terms) + 1);

  const cf_triple t0 = coeffs(0, cf);
  real f = t0.B / t0.C;
  if (abs(f) < tiny) f = (f.sign() < 0) ? -tiny : tiny;
  real C = f;
  real D(0);
  tr.values.push_back(f);

  for (long m = 1; m <= max_terms; ++m) {
    const cf_triple t = coeffs(m, cf);
    const real scale = real((m + 1) * (m + 1));
    if (abs(t.C) < collapse * scale) {
      tr.truncated_at = m;
      break;
    }
    const real a = -t.A / t.C;
    if (a.is_zero()) {
      tr.terminated = true;
      break;
    }
    const real b = t.B / t.C;
    const real floor_f = tiny * max(real(1), abs(f));
    D = b + a * D;
    if (abs(D) < floor_f) D = (D.sign() < 0) ? -floor_f : floor_f;
    C = b + a / C;
    if (abs(C) < floor_f) C = (C.sign() < 0) ? -floor_f : floor_f;
    D = 1 / D;
    f = f * (C * D);
    tr.values.push_back(f);
  }

  tr.terms_used = static_cast<long>(tr.values.size()) - 1;
  return tr;
}

real cf_value(const cf_coefficients& cf, const numeric_context& ctx, long max_terms,
              const accelerator_kind& kind) {
  scoped_precision guard(ctx);
  convergent_trace tr = lentz_sequence(cf, ctx, max_terms);
  if (tr.terminated || kind.family == accel_family::none) return tr.values.back();
  return accelerate(tr.values, kind, ctx).estimate;
}

}  // namespace heun
