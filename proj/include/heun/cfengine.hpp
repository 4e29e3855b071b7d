#pragma once

#include <vector>

#include "heun/accel.hpp"
#include "heun/numctx.hpp"
#include "heun/params.hpp"

namespace heun {

// Coefficients of the three-term recurrence
//   C_n g_{n+1} + B_n g_n + A_n g_{n-1} = 0
// satisfied by the Laguerre expansion coefficients of the radial solution.
// nu is an index offset used only for analytic cross-checks; the physical
// problem has nu = 0.
struct cf_coefficients {
  real z;
  real y;
  real tau;
  real s;
  long spin_lambda = 0;
  real nu;
};

cf_coefficients cf_of(const spectral& sp, const channel& ch);

struct cf_triple {
  real A;
  real B;
  real C;
};

cf_triple coeffs(long n, const cf_coefficients& cf);

// Convergents f_m of the eigenvalue condition
//   f = B_0/C_0 + K_{m>=1} (-A_m/C_m) / (B_m/C_m),
// evaluated with the modified Lentz scheme.  values[m] holds the convergent
// after m fraction terms; values[0] = B_0/C_0.
struct convergent_trace {
  std::vector<real> values;
  long terms_used = 0;
  // index m at which |C_m| collapsed below rounding scale, -1 if never
  long truncated_at = -1;
  // true when some A_m vanished exactly, so the fraction is finite and the
  // last convergent is the exact value
  bool terminated = false;
};

convergent_trace lentz_sequence(const cf_coefficients& cf, const numeric_context& ctx,
                                long max_terms);

// Lentz trace followed by sequence acceleration; kind none() returns the raw
// final convergent.
real cf_value(const cf_coefficients& cf, const numeric_context& ctx, long max_terms,
              const accelerator_kind& kind);

}  // namespace heun
