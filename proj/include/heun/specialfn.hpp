#pragma once

#include <memory>
#include <string>
#include <vector>

#include "heun/numctx.hpp"

namespace heun {

// Cached rows of the integrals
//   I^{(a)}_{m,n}(y) = int_0^inf rho^a e^{-rho} L_m^{(a)}(rho) L_n^{(a)}(rho) / (1+y rho) drho
// for m = 0, at Laguerre order alpha_lag and alpha_lag + 1, together with the
// Laguerre values at -1/y that factorize the general (m,n) entry.
struct itable {
  real alpha_lag;
  real y;
  long N = 0;
  std::vector<real> i0;        // I^{(alpha)}_{0,k}, k = 0..N
  std::vector<real> i0_plus;   // I^{(alpha+1)}_{0,k}
  std::vector<real> lag_at;    // L_k^{(alpha)}(-1/y)
  std::vector<real> lag_plus;  // L_k^{(alpha+1)}(-1/y)
  real gamma_a1;               // Gamma(alpha+1)
  real gamma_a2;               // Gamma(alpha+2)
};

// I_{0,0} = Gamma(alpha+1) y^{-alpha-1} e^{1/y} Gamma(-alpha, 1/y)
real i00(const real& alpha_lag, const real& y, const numeric_context& ctx);

// Builds both m = 0 rows by forward recurrence from the i00 closed form.
// I_{0,n} is the minimal solution of the recurrence, so the build runs at
// ctx.precision_bits + ceil(3.33 * 4 sqrt(N/y)) + 64 bits to absorb the
// contamination by the e^{+2 sqrt(n/y)} dominant solution.  When N/y is large
// enough for the tail asymptotics to apply (N >= 49 y), the last entries are
// validated against the known decay exponent -2/sqrt(y); any failure, or a
// non-positive entry, raises "precision insufficient".
itable build_itable(const real& alpha_lag, const real& y, long N, const numeric_context& ctx);

// I^{(alpha)}_{m,n} = L_min^{(alpha)}(-1/y) I_{0,max} from the cached rows.
real imn(const itable& it, long m, long n);

// Shat^m_n = Sbar^m_n - omega y Ibar_{m,n}, tabulated through the factorized
// representation: for m <= n, 1 - Shat = P[m] V[n]; for m > n, Shat = Q[m] W[n].
struct shat_table {
  std::shared_ptr<const itable> it;
  real omega;
  std::vector<real> P;  // (m!/(alpha+1)_m) L_m^{(alpha)}(-1/y)
  std::vector<real> V;  // y (alpha+1) Ibar^{(alpha+1)}_{0,n} + omega y Ibar^{(alpha)}_{0,n}
  std::vector<real> Q;  // Ibar^{(alpha)}_{m,0}
  std::vector<real> W;  // L_n^{(alpha+1)}(-1/y) - omega y L_n^{(alpha)}(-1/y)
  long size() const { return it ? it->N : -1; }
};

shat_table make_shat_table(std::shared_ptr<const itable> it, const real& omega,
                           const numeric_context& ctx);

real shat(const shat_table& st, long m, long n);

// Combinations in which the leading large-y asymptotics cancel.  All are
// O(1/y^2) except s1 (O(1/y)) and s7 (O(1/y^3)).
enum class shat_combo { s0, s1, s2, s3, s4, s5, s6, s7 };

// i is the n index of the combination; j is the second (m) index, used only
// by s5 and s7.
real shat_combos(const shat_table& st, shat_combo which, long i, long j = 0);

struct identity_check {
  std::string name;
  real residual;   // relative to the largest participating term
  real tolerance;
  bool pass = false;
};

struct identity_report {
  std::vector<identity_check> checks;
  bool all_pass() const;
  std::string to_json(long digits = 20) const;
};

// Executable form of the summation formulae and the Shat recurrence/product
// relations.  The overload taking s_exponent additionally checks the product
// relation whose right-hand side carries the channel exponent s.
identity_report identity_suite(const shat_table& st, const numeric_context& ctx);
identity_report identity_suite(const shat_table& st, const numeric_context& ctx,
                               const real& s_exponent);

// Residual of the 1/y expansion of I_{0,n} (two-term 1F1 combination, both
// series truncated at 20 terms) against the recurrence-built value; y >= 10.
real i0n_smallinvy_check(const real& alpha_lag, const real& y, long n,
                         const numeric_context& ctx);

}  // namespace heun
