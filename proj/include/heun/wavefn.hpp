#pragma once

#include <vector>

#include "heun/cfengine.hpp"
#include "heun/numctx.hpp"
#include "heun/params.hpp"
#include "heun/solver.hpp"

namespace heun {

// Laguerre expansion of the radial combination F+K at a solved eigenvalue,
// in coupled (physical) mode.
struct laguerre_series {
  std::vector<real> g;
  real alpha_lag;  // 2(tau - s)
  spectral sp;
  channel ch;
  bool normalized = false;
};

// Miller backward recurrence with (g_M, g_{M-1}) = (0, 1) trial seed; M
// doubles until the leading half of the coefficients stabilizes to
// ctx.target_digits. The returned vector is scaled to g_0 = 1.
laguerre_series miller_coefficients(const eigen_result& eig, const real& alpha_fs,
                                    const numeric_context& ctx, long M_start = 256);

// Scales so Gamma(alpha+1) sum g_n^2 n!/(alpha+1)_n = (2 E/(2m) / z)^3, with
// g_0 > 0. Idempotent.
laguerre_series normalize(const laguerre_series& series, const numeric_context& ctx);

// (F+K)(rho) = rho^{tau-1-s} e^{-rho/2} sum g_n (n!/(alpha+1)_n) L_n^{(alpha)}(rho).
// Diverges like rho^{-s} at the origin for tau = 1 channels; rho (F+K) -> 0.
real eval_FplusK(const laguerre_series& series, const real& rho,
                 const numeric_context& ctx);

// d(F+K)/drho, term-by-term analytic via dL_n^{(a)}/drho = -L_{n-1}^{(a+1)}.
real eval_FplusK_deriv(const laguerre_series& series, const real& rho,
                       const numeric_context& ctx);

struct fk_pair {
  real F;
  real K;
};

// K/F = (1 - nu rho)/(1 + lambda rho) with the 3P0 channel swapping the roles.
fk_pair split_FK(const laguerre_series& series, const real& rho,
                 const numeric_context& ctx);

// Large-small component from the channel's derivative relation, in rho units:
// the operator combination acting on F+K times rho/(alpha (1 + y rho)).
// At rho = 0 returns the power-law limit when it exists.
real eval_G(const laguerre_series& series, const real& rho, const numeric_context& ctx);

enum class grid_scale { linear, log_scale };

struct radial_grid {
  std::vector<real> r_points;  // units 2 a0
  std::vector<real> F, K, G;
};

radial_grid sample_grid(const laguerre_series& series, const real& r_min,
                        const real& r_max, long points, grid_scale scale,
                        const numeric_context& ctx);

// rho = 2 (E/2m) rhat / z for rhat in units 2 a0
real rho_of_r(const laguerre_series& series, const real& r_2a0);

}  // namespace heun
