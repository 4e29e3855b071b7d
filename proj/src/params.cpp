#include "heun/params.hpp"

#include <stdexcept>

namespace heun {

real channel::tau() const {
  return sqrt(real(1 + J * (J + 1) - kappa));
}

long channel::spin_lambda() const {
  return (J * (J + 1) - L * (L + 1) - S * (S + 1)) / 2;
}

std::string channel::label() const {
  const char* k = "";
  switch (kind) {
    case channel_kind::singlet: k = "singlet"; break;
    case channel_kind::triplet_j_zero: k = "triplet-J0"; break;
    case channel_kind::triplet_j_equal_l: k = "triplet-JL"; break;
    case channel_kind::triplet_mixed: k = "triplet-mixed"; break;
  }
  return std::string(k) + "(L=" + std::to_string(L) + ",S=" + std::to_string(S) +
         ",J=" + std::to_string(J) + ")";
}

channel make_channel(long L, long S, long J, int kappa) {
  if (L < 0 || J < 0 || (S != 0 && S != 1))
    throw std::invalid_argument("make_channel: quantum numbers out of range");

  channel ch;
  ch.L = L;
  ch.S = S;
  ch.J = J;
  ch.kappa = kappa;

  if (S == 0 && J == L && kappa == 0) {
    ch.kind = channel_kind::singlet;
    return ch;
  }
  if (S == 1 && L == 1 && J == 0 && kappa == 0) {
    ch.kind = channel_kind::triplet_j_zero;
    return ch;
  }
  if (S == 1 && J == L && L >= 1 && kappa == 1) {
    ch.kind = channel_kind::triplet_j_equal_l;
    return ch;
  }
  if (S == 1 && J >= 1 && (J == L + 1 || J == L - 1) && kappa == 2) {
    ch.kind = channel_kind::triplet_mixed;
    return ch;
  }
  throw std::invalid_argument("make_channel: unknown channel combination (L=" +
                              std::to_string(L) + ",S=" + std::to_string(S) + ",J=" +
                              std::to_string(J) + ",kappa=" + std::to_string(kappa) + ")");
}

channel make_channel(long L, long S, long J) {
  int kappa = 0;
  if (S == 1) {
    if (J == L)
      kappa = 1;
    else if (J == 0 && L == 1)
      kappa = 0;
    else
      kappa = 2;
  }
  return make_channel(L, S, J, kappa);
}

real s_of(const real& alpha_fs, const real& tau) {
  real rad = tau * tau - alpha_fs * alpha_fs / 4;
  if (rad.sign() <= 0)
    throw std::domain_error("s_of: alpha^2 >= 4 tau^2");
  return tau - sqrt(rad);
}

real energy_of_z(const real& z, const real& alpha_fs) {
  if (z.sign() <= 0)
    throw std::domain_error("energy_of_z: requires z > 0");
  return 1 / sqrt(1 + alpha_fs * alpha_fs / (4 * z * z));
}

real zeta_of(const real& z, const real& s, const real& tau) {
  return z + s - (tau - 1);
}

real omega_of(const real& y, const real& tau, const real& s, const real& spin_lambda) {
  return 1 / (2 * y) - tau + s + 1 + spin_lambda;
}

spectral make_spectral_coupled(const real& alpha_fs, const channel& ch, const real& z) {
  spectral sp;
  sp.alpha_fs = alpha_fs;
  sp.tau = ch.tau();
  sp.s = s_of(alpha_fs, sp.tau);
  sp.z = z;
  sp.y = 2 * z / (alpha_fs * alpha_fs);
  sp.coupled = true;
  return sp;
}

spectral make_spectral_free_y(const real& alpha_fs, const channel& ch, const real& z,
                              const real& y) {
  spectral sp;
  sp.alpha_fs = alpha_fs;
  sp.tau = ch.tau();
  sp.s = s_of(alpha_fs, sp.tau);
  sp.z = z;
  sp.y = y;
  sp.coupled = false;
  return sp;
}

heun_params heun_params_of(const spectral& sp, const channel& ch) {
  heun_params hp;
  hp.four_p = 1 / sp.y;
  hp.gamma_h = 1 + 2 * sp.tau - 2 * sp.s;
  hp.delta_h = real(-1);
  hp.four_p_beta = (sp.tau - sp.s - sp.z) / sp.y;
  // lambda_tilde = -spin_lambda is the spin term as it enters the recurrence.
  real lambda_tilde = real(-ch.spin_lambda());
  hp.sigma_h = sp.tau - 1 - sp.s + lambda_tilde + 1 / (2 * sp.y) -
               (sp.z - sp.tau + sp.s) / sp.y;
  return hp;
}

dirac_params dirac_map(const real& alpha_fs, long n) {
  if (!(alpha_fs < 1))
    throw std::domain_error("dirac_map: requires alpha < 1");
  dirac_params d;
  d.s_prime = 1 - sqrt(1 - alpha_fs * alpha_fs);
  d.z_prime = n + 1 - d.s_prime;
  d.energy_ratio = d.z_prime / sqrt(d.z_prime * d.z_prime + alpha_fs * alpha_fs);
  return d;
}

real dirac_y_of(const real& alpha_fs, const real& z) {
  real a2 = alpha_fs * alpha_fs;
  return (z + sqrt(z * z + a2)) / (2 * a2);
}

mixed_exponents triplet_mixed_exponents(const real& alpha_fs, long J) {
  if (J < 1)
    throw std::domain_error("triplet_mixed_exponents: requires J >= 1");
  real jj = real(J * (J + 1));
  real q = alpha_fs * alpha_fs / 4;
  real rad1 = jj - 1 - q;
  real rad2 = jj - q;
  if (rad1.sign() < 0 || rad2.sign() < 0)
    throw std::domain_error("triplet_mixed_exponents: negative radicand");
  mixed_exponents me;
  me.solution1.sigma1 = 1 + sqrt(rad1);
  me.solution1.sigma2 = me.solution1.sigma1 - 1;
  me.solution2.sigma1 = sqrt(rad2);
  me.solution2.sigma2 = me.solution2.sigma1 + 1;
  return me;
}

}  // namespace heun
