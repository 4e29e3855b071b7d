#include "heun/solver.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace heun {

namespace {

using objective = std::function<real(const real&)>;

struct bracket_pair {
  real lo, hi, flo, fhi;
};

// Safeguarded secant: keeps a sign-change bracket and falls back to bisection
// whenever the secant proposal leaves it or stops shrinking it. Convergence is
// judged on |dz|, so the iteration also pins sign-change singularities (the
// Dirac fraction crosses through a pole at its n_r >= 2 eigenvalues).
real secant_bisect(const objective& f, bracket_pair br, const real& ztol, long cap) {
  real a = br.lo, fa = br.flo, b = br.hi, fb = br.fhi;
  if (fa.is_zero()) return a;
  if (fb.is_zero()) return b;
  if (fa.sign() * fb.sign() > 0)
    throw std::invalid_argument("secant_bisect: endpoints do not bracket");
  real x = b, fx = fb, xp = a, fp = fa;
  bool force_bisect = false;
  real width = abs(b - a);
  for (long it = 0; it < cap; ++it) {
    if (width < ztol) return (a + b) / 2;
    real xn;
    bool secant = false;
    if (!force_bisect) {
      const real den = fx - fp;
      if (!den.is_zero()) {
        const real cand = x - fx * (x - xp) / den;
        const real lo = min(a, b), hi = max(a, b);
        const real margin = width / 64;
        if (cand.is_finite() && cand > lo + margin && cand < hi - margin) {
          xn = cand;
          secant = true;
        }
      }
    }
    if (!secant) xn = (a + b) / 2;
    real fn = f(xn);
    if (!fn.is_finite()) {
      xn = (a + 3 * b) / 4;
      fn = f(xn);
      if (!fn.is_finite())
        throw std::runtime_error("objective not finite during refinement");
    }
    if (fn.is_zero()) return xn;
    if (secant && abs(xn - x) < ztol / 4 && abs(fn) <= abs(fx)) return xn;
    if (fn.sign() == fa.sign()) {
      a = xn;
      fa = fn;
    } else {
      b = xn;
      fb = fn;
    }
    xp = x;
    fp = fx;
    x = xn;
    fx = fn;
    const real nw = abs(b - a);
    force_bisect = secant && (2 * nw > width);
    width = nw;
  }
  throw std::runtime_error("precision exhausted: refinement did not reach tolerance");
}

// Endpoint check first, then an even scan. Among sign-change cells the one
// with the smallest |f| endpoint wins: a root cell has a small value next to
// it while a pole cell blows up on both sides.
bracket_pair acquire_bracket(const objective& f, const real& lo, const real& hi,
                             long points, const std::string& what) {
  try {
    const real flo = f(lo), fhi = f(hi);
    if (flo.is_finite() && fhi.is_finite() && flo.sign() * fhi.sign() < 0)
      return {lo, hi, flo, fhi};
  } catch (const std::exception&) {
  }
  std::vector<real> zs, fs;
  std::vector<bool> ok;
  zs.reserve(points + 1);
  for (long i = 0; i <= points; ++i) {
    const real z = lo + (hi - lo) * i / points;
    bool good = true;
    real v;
    try {
      v = f(z);
      good = v.is_finite();
    } catch (const std::exception&) {
      good = false;
    }
    zs.push_back(z);
    fs.push_back(good ? v : real(0));
    ok.push_back(good);
  }
  long best = -1;
  real best_score;
  for (long i = 0; i < points; ++i) {
    if (!ok[i] || !ok[i + 1]) continue;
    if (fs[i].sign() * fs[i + 1].sign() < 0) {
      const real score = min(abs(fs[i]), abs(fs[i + 1]));
      if (best < 0 || score < best_score) {
        best = i;
        best_score = score;
      }
    }
  }
  if (best < 0) throw std::runtime_error("no sign change in bracket: " + what);
  return {zs[best], zs[best + 1], fs[best], fs[best + 1]};
}

// Small bracket around a known approximation, widening a few times before
// surrendering to the full-window scan.
bracket_pair local_bracket(const objective& f, const real& z0, real w, const real& win_lo,
                           const real& win_hi, long points, const std::string& what) {
  for (int attempt = 0; attempt < 4; ++attempt) {
    const real lo = z0 - w, hi = z0 + w;
    try {
      const real flo = f(lo), fhi = f(hi);
      if (flo.is_finite() && fhi.is_finite() && flo.sign() * fhi.sign() < 0)
        return {lo, hi, flo, fhi};
    } catch (const std::exception&) {
    }
    w *= 32;
  }
  return acquire_bracket(f, win_lo, win_hi, points, what);
}

struct cf_stage {
  long dps;
  long terms;
  long ztol_digits;
};

// Term counts and precisions for the coupled (physical y ~ 2z/alpha^2)
// fraction, where plain convergence is hopeless and the Osada-rho estimate
// carries the digits. Deeper stages pay off only for higher targets.
std::vector<cf_stage> coupled_stage_plan(long target_digits, long cap) {
  std::vector<cf_stage> plan;
  plan.push_back({120, 300, 10});
  plan.push_back({600, 600, 16});
  if (target_digits > 12) plan.push_back({2400, 1300, std::min(target_digits + 5, 24L)});
  if (target_digits > 20) plan.push_back({4800, 1600, target_digits + 5});
  if (target_digits > 26) {
    const long terms = 1600 + 300 * (target_digits - 25);
    plan.push_back({3 * terms, terms, target_digits + 5});
  }
  if (cap > 0)
    for (auto& st : plan) st.terms = std::min(st.terms, cap);
  plan.back().ztol_digits = target_digits + 5;
  return plan;
}

// Decoupled mode converges like exp(-4 sqrt(terms/y)): invert for the term
// count that buys the requested digits.
long free_y_terms(const real& y, long digits) {
  const double yd = y.to_double();
  const double root = digits * 0.5757 + 1.5;
  double t = yd * root * root + 160;
  if (t > 2.0e6) t = 2.0e6;
  return static_cast<long>(t);
}

real cf_probe_coupled(const real& alpha_fs, const channel& ch, const real& z, long bits,
                      long dps, long terms, const accelerator_kind& kind) {
  scoped_precision guard(bits);
  const spectral sp = make_spectral_coupled(alpha_fs, ch, z);
  const cf_coefficients cf = cf_of(sp, ch);
  const numeric_context local{bits, dps};
  return cf_value(cf, local, terms, kind);
}

real dirac_energy(const real& z, const real& alpha_fs) {
  return z / sqrt(z * z + alpha_fs * alpha_fs);
}

det_params build_det_params(const real& tau, const real& s, long spin_lambda, const real& y,
                            long N_size, det_mode mode, const numeric_context& ctx) {
  const real alpha_lag = 2 * (tau - s);
  auto it = std::make_shared<itable>(build_itable(alpha_lag, y, N_size, ctx));
  const real omega = omega_of(y, tau, s, real(spin_lambda));
  auto st = std::make_shared<shat_table>(make_shat_table(std::move(it), omega, ctx));
  det_params dp;
  dp.stable = std::move(st);
  dp.s = s;
  dp.tau = tau;
  dp.zeta = real(0);
  dp.N = N_size;
  dp.mode = mode;
  return dp;
}

real det_probe(const det_params& dp, const real& z, solve_method method,
               const numeric_context& ctx) {
  const det_value dv = (method == solve_method::det_recursion)
                           ? det_recursion(dp, z, ctx)
                           : det_direct(dp, z, ctx);
  if (dv.exp2 == 0) return dv.value;
  scoped_precision guard(ctx);
  return dv.value * pow(real(2), dv.exp2);
}

void check_channel(const channel& ch, long n_index) {
  if (!ch.solvable())
    throw std::invalid_argument("channel " + ch.label() + " has no scalar reduction");
  if (n_index < ch.L + 1)
    throw std::invalid_argument("n_index must be at least L+1");
}

// Root of the determinant near a continued-fraction reference value. The
// determinant is pole-free, so a small straddle around the reference always
// isolates the matching root.
eigen_result det_solve_common(const real& alpha_fs, const channel& ch, long n_index,
                              const numeric_context& ctx, solve_method method,
                              const std::function<objective(long)>& make_objective,
                              const real& z_ref, const real& win_lo, const real& win_hi) {
  const long T = ctx.target_digits;
  const long bits = std::max(ctx.precision_bits, bits_for_digits(T + 12));
  scoped_precision guard(bits);

  const objective f = make_objective(bits);
  const real w = max(real(1), abs(z_ref)) * pow(real(10), -4);
  const real ztol = max(real(1), abs(z_ref)) * pow(real(10), -(T + 5));
  bracket_pair br =
      local_bracket(f, z_ref, w, win_lo, win_hi, 64, "determinant root near reference");
  const real z1 = secant_bisect(f, br, ztol, 240);

  // certification: precision doubling at the same matrix size
  const long bits2 = 2 * bits;
  scoped_precision guard2(bits2);
  const objective f2 = make_objective(bits2);
  const real w2 = max(real(1), abs(z1)) * pow(real(10), -(T - 2));
  bracket_pair br2 = local_bracket(f2, z1, w2, win_lo, win_hi, 64, "determinant recheck");
  const real z2 = secant_bisect(f2, br2, ztol / 4, 240);

  eigen_result out;
  out.ch = ch;
  out.n_index = n_index;
  out.z = z2;
  out.energy = energy_of_z(z2, alpha_fs);
  out.method = method;
  out.certified_digits = matching_digits(z1, z2);
  return out;
}

}  // namespace

std::string method_name(solve_method m) {
  switch (m) {
    case solve_method::cf: return "CF";
    case solve_method::det_direct: return "DetDirect";
    case solve_method::det_recursion: return "DetRecursion";
  }
  return "?";
}

real alpha_from_inverse(const std::string& alpha_inverse, long target_digits) {
  long dps = 600;
  if (target_digits > 12) dps = 2400;
  if (target_digits > 20) dps = 4800;
  if (target_digits > 26) dps = 3 * (1600 + 300 * (target_digits - 25));
  scoped_precision guard(bits_for_digits(dps + 80));
  const real inv = parse_decimal(alpha_inverse);
  if (!(inv > 0)) throw std::invalid_argument("alpha inverse must be positive");
  return 1 / inv;
}

eigen_result find_eigenvalue_cf(const real& alpha_fs, const channel& ch, long n_index,
                                const numeric_context& ctx, const solve_options& opts) {
  check_channel(ch, n_index);
  const long T = ctx.target_digits;
  const auto plan = coupled_stage_plan(T, opts.max_terms);
  const accelerator_kind kind = accelerator_kind::rho_osada(opts.theta);

  real z, z_prev;
  for (size_t si = 0; si < plan.size(); ++si) {
    const cf_stage st = plan[si];
    long bits = bits_for_digits(st.dps);
    if (si + 1 == plan.size()) bits = std::max(bits, ctx.precision_bits);
    scoped_precision guard(bits);
    const objective f = [&, st, bits](const real& zz) {
      return cf_probe_coupled(alpha_fs, ch, zz, bits, st.dps, st.terms, kind);
    };
    const real ztol = max(real(1), real(n_index)) * pow(real(10), -st.ztol_digits);
    bracket_pair br;
    if (si == 0) {
      const real lo = real(n_index) - alpha_fs * alpha_fs;
      const real hi(n_index);
      br = acquire_bracket(f, lo, hi, 32, "coupled CF, level " + ch.label());
    } else {
      const real w = max(real(1), abs(z)) * pow(real(10), -(plan[si - 1].ztol_digits - 2));
      const real lo = real(n_index) - alpha_fs * alpha_fs;
      const real hi(n_index);
      br = local_bracket(f, z, w, lo, hi, 32, "coupled CF refine, level " + ch.label());
    }
    z_prev = z;
    z = secant_bisect(f, br, ztol, 240);
  }

  eigen_result out;
  out.ch = ch;
  out.n_index = n_index;
  {
    scoped_precision guard(std::max(ctx.precision_bits, bits_for_digits(plan.back().dps)));
    out.energy = energy_of_z(z, alpha_fs);
  }
  out.z = z;
  out.method = solve_method::cf;
  out.certified_digits = matching_digits(z_prev, z);
  return out;
}

eigen_result find_eigenvalue_cf_free_y(const real& alpha_fs, const real& y,
                                       const channel& ch, long n_index,
                                       const numeric_context& ctx) {
  check_channel(ch, n_index);
  if (!(y > 0)) throw std::invalid_argument("free-y mode requires y > 0");
  const long T = ctx.target_digits;
  struct stage {
    long dps;
    long terms;
    long ztol_digits;
  };
  const stage stages[3] = {
      {60, free_y_terms(y, 15), 12},
      {T + 25, free_y_terms(y, T + 8), T + 5},
      {T + 45, free_y_terms(y, T + 14), T + 5},
  };

  real z, z_prev;
  for (int si = 0; si < 3; ++si) {
    const stage st = stages[si];
    long bits = bits_for_digits(st.dps);
    if (si == 2) bits = std::max(bits, ctx.precision_bits);
    scoped_precision guard(bits);
    const objective f = [&, st, bits](const real& zz) {
      scoped_precision inner(bits);
      const spectral sp = make_spectral_free_y(alpha_fs, ch, zz, y);
      const cf_coefficients cf = cf_of(sp, ch);
      const numeric_context local{bits, st.dps};
      return cf_value(cf, local, st.terms, accelerator_kind::none());
    };
    const real ztol = max(real(1), real(n_index)) * pow(real(10), -st.ztol_digits);
    bracket_pair br;
    const real win_lo = real(n_index) - real(1) / 4;
    const real win_hi = real(n_index) + real(17) / 20;
    if (si == 0) {
      br = acquire_bracket(f, win_lo, win_hi, 64, "free-y CF, level " + ch.label());
    } else {
      const real w =
          max(real(1), abs(z)) * pow(real(10), -(stages[si - 1].ztol_digits - 3));
      br = local_bracket(f, z, w, win_lo, win_hi, 64, "free-y CF refine");
    }
    z_prev = z;
    z = secant_bisect(f, br, ztol, 240);
  }

  eigen_result out;
  out.ch = ch;
  out.n_index = n_index;
  {
    scoped_precision guard(std::max(ctx.precision_bits, bits_for_digits(T + 45)));
    out.energy = energy_of_z(z, alpha_fs);
  }
  out.z = z;
  out.method = solve_method::cf;
  out.certified_digits = matching_digits(z_prev, z);
  return out;
}

eigen_result find_eigenvalue_det(const real& alpha_fs, const channel& ch, long n_index,
                                 const numeric_context& ctx, solve_method method,
                                 long N_size) {
  check_channel(ch, n_index);
  if (method == solve_method::cf)
    throw std::invalid_argument("find_eigenvalue_det: pick a determinant method");

  const numeric_context ref_ctx = numeric_context::for_digits(10);
  const eigen_result ref = find_eigenvalue_cf(alpha_fs, ch, n_index, ref_ctx);

  const long lam = ch.spin_lambda();
  auto make_objective = [&, lam, N_size, method](long bits) -> objective {
    return [&, lam, N_size, method, bits](const real& zz) {
      scoped_precision inner(bits);
      const numeric_context local{bits, digits_for_bits(bits)};
      const real tau = ch.tau();
      const real y = 2 * zz / (alpha_fs * alpha_fs);
      const det_params dp = build_det_params(tau, s_of(alpha_fs, tau), lam, y, N_size,
                                             det_mode::coupled, local);
      return det_probe(dp, zz, method, local);
    };
  };
  const real win_lo = real(n_index) - alpha_fs * alpha_fs;
  const real win_hi(n_index);
  return det_solve_common(alpha_fs, ch, n_index, ctx, method, make_objective,
                          ref.z, win_lo, win_hi);
}

eigen_result find_eigenvalue_det_free_y(const real& alpha_fs, const real& y,
                                        const channel& ch, long n_index,
                                        const numeric_context& ctx, solve_method method,
                                        long N_size) {
  check_channel(ch, n_index);
  if (method == solve_method::cf)
    throw std::invalid_argument("find_eigenvalue_det_free_y: pick a determinant method");

  const numeric_context ref_ctx = numeric_context::for_digits(12);
  const eigen_result ref = find_eigenvalue_cf_free_y(alpha_fs, y, ch, n_index, ref_ctx);

  auto make_objective = [&](long bits) -> objective {
    // one table per precision level; zeta is the only z-dependence
    scoped_precision inner(bits);
    const numeric_context local{bits, digits_for_bits(bits)};
    const real tau = ch.tau();
    const real s = s_of(alpha_fs, tau);
    auto dp = std::make_shared<det_params>(
        build_det_params(tau, s, ch.spin_lambda(), y, N_size, det_mode::free_y, local));
    return [dp, method, bits](const real& zz) {
      scoped_precision probe_guard(bits);
      const numeric_context probe_ctx{bits, digits_for_bits(bits)};
      return det_probe(*dp, zz, method, probe_ctx);
    };
  };
  const real win_lo = real(n_index) - real(1) / 4;
  const real win_hi = real(n_index) + real(17) / 20;
  return det_solve_common(alpha_fs, ch, n_index, ctx, method, make_objective,
                          ref.z, win_lo, win_hi);
}

eigen_result find_eigenvalue_dirac(const real& alpha_fs, long n_r,
                                   const numeric_context& ctx, solve_method method,
                                   long N_size) {
  if (n_r < 0) throw std::invalid_argument("n_r must be nonnegative");
  const long T = ctx.target_digits;
  const long bits = std::max(ctx.precision_bits, bits_for_digits(T + 25));
  const channel ch = make_channel(0, 0, 0);

  scoped_precision guard(bits);
  const real s_prime = dirac_map(alpha_fs, n_r).s_prime;
  const real win_lo = real(n_r + 1) - alpha_fs * alpha_fs;
  const real win_hi(n_r + 1);

  if (method == solve_method::cf) {
    const long terms = std::max(64L, n_r + 50);
    auto probe = [&, terms](long pbits) -> objective {
      return [&, terms, pbits](const real& zz) {
        scoped_precision inner(pbits);
        cf_coefficients cf;
        cf.z = zz;
        cf.y = dirac_y_of(alpha_fs, zz);
        cf.tau = real(1);
        cf.s = 1 - sqrt(1 - alpha_fs * alpha_fs);
        cf.spin_lambda = 0;
        cf.nu = real(0);
        const numeric_context local{pbits, digits_for_bits(pbits)};
        return cf_value(cf, local, terms, accelerator_kind::none());
      };
    };
    const real ztol = real(n_r + 1) * pow(real(10), -(T + 5));
    const objective f = probe(bits);
    bracket_pair br = acquire_bracket(f, win_lo, win_hi, 32, "Dirac CF");
    const real z1 = secant_bisect(f, br, ztol, 260);
    const objective f2 = probe(2 * bits);
    scoped_precision guard2(2 * bits);
    const real w2 = real(n_r + 1) * pow(real(10), -(T - 2));
    bracket_pair br2 = local_bracket(f2, z1, w2, win_lo, win_hi, 64, "Dirac CF recheck");
    const real z2 = secant_bisect(f2, br2, ztol / 4, 260);

    eigen_result out;
    out.ch = ch;
    out.n_index = n_r;
    out.z = z2;
    out.energy = dirac_energy(z2, alpha_fs);
    out.method = method;
    out.certified_digits = matching_digits(z1, z2);
    return out;
  }

  auto make_objective = [&, N_size, method](long pbits) -> objective {
    return [&, N_size, method, pbits](const real& zz) {
      scoped_precision inner(pbits);
      const numeric_context local{pbits, digits_for_bits(pbits)};
      const real sp = 1 - sqrt(1 - alpha_fs * alpha_fs);
      const real y = dirac_y_of(alpha_fs, zz);
      const det_params dp =
          build_det_params(real(1), sp, 0, y, N_size, det_mode::coupled, local);
      return det_probe(dp, zz, method, local);
    };
  };
  const real z_ref = real(n_r + 1) - s_prime;
  eigen_result out = det_solve_common(alpha_fs, ch, n_r, ctx, method,
                                      make_objective, z_ref, win_lo, win_hi);
  out.energy = dirac_energy(out.z, alpha_fs);
  return out;
}

std::vector<scan_row> scan_cf(const real& alpha_fs, const channel& ch, const real& z_lo,
                              const real& z_hi, long steps, const numeric_context& ctx,
                              const solve_options& opts) {
  if (steps < 2) throw std::invalid_argument("scan needs at least 2 steps");
  const long dps = std::max(120L, ctx.target_digits);
  const long bits = bits_for_digits(dps);
  const long terms = opts.max_terms > 0 ? opts.max_terms : 400;
  const accelerator_kind kind = accelerator_kind::rho_osada(opts.theta);

  std::vector<scan_row> rows;
  rows.reserve(steps);
  for (long i = 0; i < steps; ++i) {
    scoped_precision guard(bits);
    scan_row row;
    row.z = z_lo + (z_hi - z_lo) * i / (steps - 1);
    try {
      const spectral sp = make_spectral_coupled(alpha_fs, ch, row.z);
      const cf_coefficients cf = cf_of(sp, ch);
      const numeric_context local{bits, dps};
      const convergent_trace tr = lentz_sequence(cf, local, terms);
      if (tr.terminated) {
        row.value = tr.values.back();
        row.ok = true;
      } else {
        const accel_result ar = accelerate(tr.values, kind, local);
        row.value = ar.ok ? ar.estimate : tr.values.back();
        row.ok = row.value.is_finite() && tr.truncated_at < 0;
      }
    } catch (const std::exception&) {
      row.ok = false;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<level_entry> level_table(const real& alpha_fs,
                                     const std::vector<level_request>& reqs,
                                     const numeric_context& ctx, int jobs,
                                     const solve_options& opts) {
  std::vector<level_entry> out(reqs.size());
  for (size_t i = 0; i < reqs.size(); ++i) out[i].req = reqs[i];
  std::atomic<size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const size_t i = next.fetch_add(1);
      if (i >= out.size()) break;
      try {
        out[i].result =
            find_eigenvalue_cf(alpha_fs, out[i].req.ch, out[i].req.n_index, ctx, opts);
        out[i].ok = true;
      } catch (const std::exception& e) {
        out[i].error = e.what();
      }
    }
  };
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return out;
}

std::vector<level_request> standard_levels(channel_kind kind, long n_max) {
  std::vector<level_request> reqs;
  switch (kind) {
    case channel_kind::singlet:
      for (long n = 1; n <= n_max; ++n)
        for (long L = 0; L < n; ++L) reqs.push_back({make_channel(L, 0, L), n});
      break;
    case channel_kind::triplet_j_zero:
      for (long n = 2; n <= n_max; ++n) reqs.push_back({make_channel(1, 1, 0), n});
      break;
    case channel_kind::triplet_j_equal_l:
      for (long L = 1; L < n_max; ++L)
        for (long n = L + 1; n <= n_max; ++n) reqs.push_back({make_channel(L, 1, L), n});
      break;
    default:
      throw std::invalid_argument("no level table for this channel kind");
  }
  return reqs;
}

}  // namespace heun
