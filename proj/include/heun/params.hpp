#pragma once

#include <string>

#include "heun/numctx.hpp"

namespace heun {

// Quantum-number channels. kappa selects the sigma-model branch:
//   0  spin singlet (any L, J=L) and the triplet 3P0 state,
//   1  triplet J=L,
//   2  triplet J=L+-1 (indicial analysis only; not solvable).
enum class channel_kind { singlet, triplet_j_zero, triplet_j_equal_l, triplet_mixed };

struct channel {
  long L = 0;
  long S = 0;
  long J = 0;
  int kappa = 0;
  channel_kind kind = channel_kind::singlet;

  // tau = sqrt(1 + J(J+1) - kappa), evaluated at the ambient working precision
  // so callers at elevated precision never see a stale low-precision value.
  real tau() const;
  // spin_lambda = (J(J+1) - L(L+1) - S(S+1))/2; integral for every listed channel.
  long spin_lambda() const;
  bool solvable() const { return kappa != 2; }
  std::string label() const;
};

// Validates against the listed channels; throws std::invalid_argument otherwise.
channel make_channel(long L, long S, long J, int kappa);
// Same, inferring kappa from (L, S, J).
channel make_channel(long L, long S, long J);

// s = tau - sqrt(tau^2 - alpha^2/4), the small root of s(2 tau - s) = alpha^2/4.
real s_of(const real& alpha_fs, const real& tau);

// E/(2m) = 1/sqrt(1 + alpha^2/(4 z^2)).
real energy_of_z(const real& z, const real& alpha_fs);

// zeta = z + s - (tau - 1).
real zeta_of(const real& z, const real& s, const real& tau);

// omega = 1/(2y) - tau + s + 1 + spin_lambda.
// The trailing term is the spin term entering with the sign that makes the
// determinant and CF spectra coincide (checked for the singlet, 3P0 and J=L
// channels); for the singlet it is zero and omega = 1/(2y) + s.
real omega_of(const real& y, const real& tau, const real& s, const real& spin_lambda);

// Parameter pack shared by the CF and determinant paths. "coupled" means the
// physical identification z = alpha^2 y / 2 is in force; otherwise y floats
// freely while s and tau stay pinned to the physical alpha.
struct spectral {
  real alpha_fs;
  real tau;
  real s;
  real y;
  real z;
  bool coupled = true;
};

spectral make_spectral_coupled(const real& alpha_fs, const channel& ch, const real& z);
spectral make_spectral_free_y(const real& alpha_fs, const channel& ch, const real& z,
                              const real& y);

// Coefficients of the confluent Heun normal form: 4p = 1/y, gamma = 1+2tau-2s,
// delta = -1, 4p*beta = (tau - s - z)/y, sigma per the channel model.
struct heun_params {
  real four_p;
  real gamma_h;
  real delta_h;
  real four_p_beta;
  real sigma_h;
};

heun_params heun_params_of(const spectral& sp, const channel& ch);

// Dirac limit: s' = 1 - sqrt(1-alpha^2), z' = n+1-s', E'/m = z'/sqrt(z'^2+alpha^2).
struct dirac_params {
  real s_prime;
  real z_prime;
  real energy_ratio;  // E'/m
};

dirac_params dirac_map(const real& alpha_fs, long n);

// Inverse of z' = alpha^2 y' - 1/(4y'): y'(z') = (z' + sqrt(z'^2 + alpha^2))/(2 alpha^2).
real dirac_y_of(const real& alpha_fs, const real& z);

// Indicial exponents near rho = 0 for the coupled J = L +- 1 system.
struct exponent_pair {
  real sigma1;
  real sigma2;
};

struct mixed_exponents {
  exponent_pair solution1;  // sigma1 = 1 + sqrt(J(J+1) - 1 - alpha^2/4), sigma2 = sigma1 - 1
  exponent_pair solution2;  // sigma1 = sqrt(J(J+1) - alpha^2/4), sigma2 = sigma1 + 1
};

mixed_exponents triplet_mixed_exponents(const real& alpha_fs, long J);

}  // namespace heun
