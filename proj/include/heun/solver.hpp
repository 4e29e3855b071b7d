#pragma once

#include <string>
#include <vector>

#include "heun/accel.hpp"
#include "heun/cfengine.hpp"
#include "heun/determinant.hpp"
#include "heun/numctx.hpp"
#include "heun/params.hpp"

namespace heun {

enum class solve_method { cf, det_direct, det_recursion };

std::string method_name(solve_method m);

// alpha = 1/alpha_inverse carried at enough precision for the deepest stage a
// target-digits solve can reach. Every solver entry point reads alpha at its
// stage precision, so the value handed in must not be the bottleneck.
real alpha_from_inverse(const std::string& alpha_inverse, long target_digits);

struct eigen_result {
  channel ch;
  long n_index = 0;
  real z;
  real energy;  // E/(2m), electron-mass units
  solve_method method = solve_method::cf;
  long certified_digits = 0;
};

struct solve_options {
  // Osada rho decay exponent for the coupled-mode trace acceleration.
  real theta = real(24);
  // 0 = staged defaults; otherwise a hard cap on CF terms per evaluation.
  long max_terms = 0;
};

// Coupled mode (y = 2z/alpha^2). Stages of increasing precision and term
// count, bracketed by (N - alpha^2, N) with a pre-scan fallback.
eigen_result find_eigenvalue_cf(const real& alpha_fs, const channel& ch, long n_index,
                                const numeric_context& ctx, const solve_options& opts = {});

// Decoupled mode: y held fixed, s and tau stay pinned to the physical alpha.
// Raw Lentz evaluation (the fixed-y fraction converges without acceleration).
eigen_result find_eigenvalue_cf_free_y(const real& alpha_fs, const real& y,
                                       const channel& ch, long n_index,
                                       const numeric_context& ctx);

// Root of det Delta'(z) at fixed matrix size N_size, same bracketing.
// free-y mode reuses one Shat table across probes; coupled mode rebuilds it
// at each probe's y.
eigen_result find_eigenvalue_det(const real& alpha_fs, const channel& ch, long n_index,
                                 const numeric_context& ctx, solve_method method,
                                 long N_size);
eigen_result find_eigenvalue_det_free_y(const real& alpha_fs, const real& y,
                                        const channel& ch, long n_index,
                                        const numeric_context& ctx, solve_method method,
                                        long N_size);

// Dirac limit (tau = 1, s replaced by s' = 1-sqrt(1-alpha^2),
// y = y'(z)). Returns z' = n_r + 1 - s' to working tolerance.
eigen_result find_eigenvalue_dirac(const real& alpha_fs, long n_r,
                                   const numeric_context& ctx, solve_method method,
                                   long N_size = 400);

struct scan_row {
  real z;
  real value;
  bool ok = false;  // false marks truncation singularities / failed evaluations
};

std::vector<scan_row> scan_cf(const real& alpha_fs, const channel& ch, const real& z_lo,
                              const real& z_hi, long steps, const numeric_context& ctx,
                              const solve_options& opts = {});

struct level_request {
  channel ch;
  long n_index = 0;
};

struct level_entry {
  level_request req;
  bool ok = false;
  std::string error;
  eigen_result result;
};

// All requested levels, resolved independently; failures are recorded per-row.
// jobs > 1 distributes the searches over that many threads.
std::vector<level_entry> level_table(const real& alpha_fs,
                                     const std::vector<level_request>& reqs,
                                     const numeric_context& ctx, int jobs = 1,
                                     const solve_options& opts = {});

// Standard request lists mirroring the published tables: singlet L = 0..n-1,
// triplet 3P0, triplet J = L, for principal index n = 1..n_max.
std::vector<level_request> standard_levels(channel_kind kind, long n_max);

}  // namespace heun
