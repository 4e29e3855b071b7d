#pragma once

#include <memory>

#include "heun/numctx.hpp"
#include "heun/params.hpp"
#include "heun/specialfn.hpp"

namespace heun {

enum class det_mode { coupled, free_y };
enum class det_method { direct, recursion };

// Probe-independent inputs of the truncated semi-infinite determinant.  The
// Shat table fixes (alpha, y, omega); s and tau derive zeta from a probe z.
// zeta itself is stored for element-level access and refreshed by the probe
// entry points.  In coupled mode the caller must rebuild the table so that
// its y matches the probed z; the determinant cannot check that itself.
struct det_params {
  std::shared_ptr<const shat_table> stable;
  real s;
  real tau;
  real zeta;
  long N = 0;
  det_mode mode = det_mode::free_y;
};

det_params with_probe(const det_params& dp, const real& z_probe);

// Element of the converging-factor determinant.
//   diagonal:     ((m+1)^2 - (zeta - Shat^m_m)^2) / (m+1)^2
//   off-diagonal: ((m+1+zeta-Shat^m_m)/(m+1)^2) (Shat^m_n - H(n-m-1/2))
real delta_prime(const det_params& dp, long m, long n);

struct det_value {
  real value;      // determinant scaled by 2^exp2
  long exp2 = 0;
  long N = 0;
  det_method method = det_method::direct;
  // a pivot collapsed below rounding scale; value kept, magnitude unreliable
  bool degenerate = false;
};

// Structured O(N^2) elimination using the rank-one upper/lower form of the
// off-diagonal blocks; falls back to dense pivoted elimination for small N
// when a pivot collapses.
det_value det_direct(const det_params& dp, const real& z_probe, const numeric_context& ctx);

// O(N) tail-first evaluation of the tri-band reduction: Delta_{n} =
// a_n Delta_{n+1} - b_n c_n Delta_{n+2}, n = N-1 .. 1.
det_value det_recursion(const det_params& dp, const real& z_probe, const numeric_context& ctx);

// Residuals of the two index-exchange relations that make the Dirac
// determinant collapse, over n <= 20, m <= 30, plus the vanishing of the
// bracket n+1-s-z_y at the eigenvalue the table was built for.
identity_report dirac_structure_check(const det_params& dp, const numeric_context& ctx);

}  // namespace heun
