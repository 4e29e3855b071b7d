#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "heun/accel.hpp"
#include "heun/cfengine.hpp"
#include "heun/determinant.hpp"
#include "heun/numctx.hpp"
#include "heun/params.hpp"
#include "heun/solver.hpp"
#include "heun/specialfn.hpp"
#include "heun/wavefn.hpp"

namespace {

using namespace heun;

struct global_opts {
  std::string alpha_inv = "137";
  long digits = 25;
  long precision_bits = 0;  // 0 = derive from digits
  std::string output = "csv";
  std::string out_path;
  int jobs = 1;
  std::string theta = "24";
};

numeric_context context_of(const global_opts& g) {
  numeric_context ctx = numeric_context::for_digits(g.digits);
  if (g.precision_bits > 0) ctx.precision_bits = g.precision_bits;
  return ctx;
}

struct table_data {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += '"';
  return out;
}

std::string render_csv(const table_data& t) {
  std::string out;
  for (std::size_t i = 0; i < t.header.size(); ++i) {
    if (i) out += ',';
    out += csv_field(t.header[i]);
  }
  out += '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += csv_field(row[i]);
    }
    out += '\n';
  }
  return out;
}

std::string json_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  return out;
}

std::string render_json(const table_data& t) {
  std::string out = "[\n";
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    out += "  {";
    for (std::size_t i = 0; i < t.header.size() && i < t.rows[r].size(); ++i) {
      if (i) out += ", ";
      out += '"' + json_escape(t.header[i]) + "\": \"" + json_escape(t.rows[r][i]) + '"';
    }
    out += (r + 1 < t.rows.size()) ? "},\n" : "}\n";
  }
  out += "]\n";
  return out;
}

void write_out(const std::string& body, const std::string& path) {
  if (path.empty()) {
    std::fwrite(body.data(), 1, body.size(), stdout);
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file: " + path);
  f << body;
}

void emit_table(const table_data& t, const global_opts& g) {
  write_out(g.output == "json" ? render_json(t) : render_csv(t), g.out_path);
}

solve_method parse_method(const std::string& m) {
  if (m == "cf") return solve_method::cf;
  if (m == "det-direct" || m == "direct") return solve_method::det_direct;
  if (m == "det-recursion" || m == "recursion") return solve_method::det_recursion;
  throw std::invalid_argument("unknown method: " + m);
}

channel_kind parse_kind(const std::string& k) {
  if (k == "singlet") return channel_kind::singlet;
  if (k == "triplet-j0") return channel_kind::triplet_j_zero;
  if (k == "triplet-jl") return channel_kind::triplet_j_equal_l;
  throw std::invalid_argument("unknown level kind: " + k);
}

channel channel_of(const std::vector<long>& lsj) {
  if (lsj.size() != 3) throw std::invalid_argument("--channel expects L S J");
  return make_channel(lsj[0], lsj[1], lsj[2]);
}

std::vector<std::string> eigen_row(const eigen_result& r, long digits) {
  return {std::to_string(r.n_index),      std::to_string(r.ch.L),
          std::to_string(r.ch.S),         std::to_string(r.ch.J),
          to_decimal(r.z, digits),        to_decimal(r.energy, digits),
          method_name(r.method),          std::to_string(r.certified_digits)};
}

const std::vector<std::string> kEigenHeader = {"n", "l", "s", "j", "z", "energy",
                                               "method", "certified_digits"};

// ---- eigen ----------------------------------------------------------------

struct eigen_opts {
  std::vector<long> channel{0, 0, 0};
  long n = 1;
  std::string method = "cf";
  std::string y;
  long det_size = 400;
  long levels = 0;
  std::string kind = "singlet";
  bool dirac = false;
};

int cmd_eigen(const global_opts& g, const eigen_opts& e) {
  const numeric_context ctx = context_of(g);
  const real alpha = alpha_from_inverse(g.alpha_inv, g.digits);
  solve_options sopts;
  {
    scoped_precision guard(ctx);
    sopts.theta = real(g.theta);
  }

  table_data t;
  t.header = kEigenHeader;

  if (e.levels > 0) {
    const auto reqs = standard_levels(parse_kind(e.kind), e.levels);
    const auto entries = level_table(alpha, reqs, ctx, g.jobs, sopts);
    bool any_fail = false;
    for (const auto& en : entries) {
      if (en.ok) {
        t.rows.push_back(eigen_row(en.result, g.digits));
      } else {
        any_fail = true;
        std::cerr << "level " << en.req.ch.label() << " n=" << en.req.n_index
                  << " failed: " << en.error << '\n';
      }
    }
    emit_table(t, g);
    return any_fail ? 1 : 0;
  }

  eigen_result r;
  if (e.dirac) {
    r = find_eigenvalue_dirac(alpha, e.n, ctx, parse_method(e.method), e.det_size);
  } else if (!e.y.empty()) {
    scoped_precision guard(ctx);
    const real y = parse_decimal(e.y);
    const channel ch = channel_of(e.channel);
    const solve_method m = parse_method(e.method);
    r = (m == solve_method::cf)
            ? find_eigenvalue_cf_free_y(alpha, y, ch, e.n, ctx)
            : find_eigenvalue_det_free_y(alpha, y, ch, e.n, ctx, m, e.det_size);
  } else {
    const channel ch = channel_of(e.channel);
    const solve_method m = parse_method(e.method);
    r = (m == solve_method::cf)
            ? find_eigenvalue_cf(alpha, ch, e.n, ctx, sopts)
            : find_eigenvalue_det(alpha, ch, e.n, ctx, m, e.det_size);
  }
  t.rows.push_back(eigen_row(r, g.digits));
  emit_table(t, g);
  return 0;
}

// ---- det ------------------------------------------------------------------

struct det_opts {
  std::vector<long> channel{0, 0, 0};
  long n = 1;
  std::string y;
  bool coupled = false;
  bool dirac = false;
  std::vector<long> sizes{100, 200, 400};
  std::string method;  // empty = pick by size
};

int cmd_det(const global_opts& g, const det_opts& d) {
  const numeric_context ctx = context_of(g);
  const real alpha = alpha_from_inverse(g.alpha_inv, g.digits);
  if (!d.coupled && !d.dirac && d.y.empty())
    throw std::invalid_argument("det: give --y <value>, --coupled, or --dirac");
  for (long N : d.sizes)
    if (N < 3) throw std::invalid_argument("det: sizes must be >= 3");

  solve_options sopts;
  real y;
  channel ch = make_channel(0, 0, 0);
  {
    scoped_precision guard(ctx);
    sopts.theta = real(g.theta);
    if (!d.y.empty()) y = parse_decimal(d.y);
  }
  if (!d.dirac) ch = channel_of(d.channel);

  eigen_result ref;
  if (d.dirac)
    ref = find_eigenvalue_dirac(alpha, d.n, ctx, solve_method::cf);
  else if (d.coupled)
    ref = find_eigenvalue_cf(alpha, ch, d.n, ctx, sopts);
  else
    ref = find_eigenvalue_cf_free_y(alpha, y, ch, d.n, ctx);

  table_data t;
  t.header = {"N", "z_root", "digits_vs_cf", "z_cf", "method", "certified_digits"};
  for (long N : d.sizes) {
    const solve_method m =
        d.method.empty() ? (N > 8192 ? solve_method::det_recursion : solve_method::det_direct)
                         : parse_method(d.method);
    eigen_result r;
    if (d.dirac)
      r = find_eigenvalue_dirac(alpha, d.n, ctx, m, N);
    else if (d.coupled)
      r = find_eigenvalue_det(alpha, ch, d.n, ctx, m, N);
    else
      r = find_eigenvalue_det_free_y(alpha, y, ch, d.n, ctx, m, N);
    t.rows.push_back({std::to_string(N), to_decimal(r.z, g.digits),
                      std::to_string(matching_digits(r.z, ref.z)),
                      to_decimal(ref.z, g.digits), method_name(m),
                      std::to_string(r.certified_digits)});
  }
  emit_table(t, g);
  return 0;
}

// ---- wavefn ---------------------------------------------------------------

struct wavefn_opts {
  std::vector<long> channel{0, 0, 0};
  long n = 1;
  std::string rmin = "0.001";
  std::string rmax = "2.5";
  long points = 40;
  std::string scale = "linear";
  long m_start = 256;
};

int cmd_wavefn(const global_opts& g, const wavefn_opts& w) {
  const numeric_context ctx = context_of(g);
  const real alpha = alpha_from_inverse(g.alpha_inv, g.digits);
  const channel ch = channel_of(w.channel);
  solve_options sopts;
  real rmin, rmax;
  {
    scoped_precision guard(ctx);
    sopts.theta = real(g.theta);
    rmin = parse_decimal(w.rmin);
    rmax = parse_decimal(w.rmax);
  }
  const eigen_result eig = find_eigenvalue_cf(alpha, ch, w.n, ctx, sopts);
  const laguerre_series series =
      normalize(miller_coefficients(eig, alpha, ctx, w.m_start), ctx);
  const radial_grid grid = sample_grid(
      series, rmin, rmax, w.points,
      w.scale == "log" ? grid_scale::log_scale : grid_scale::linear, ctx);

  table_data t;
  t.header = {"r", "F", "K", "G"};
  for (std::size_t i = 0; i < grid.r_points.size(); ++i)
    t.rows.push_back({to_decimal(grid.r_points[i], g.digits),
                      to_decimal(grid.F[i], g.digits), to_decimal(grid.K[i], g.digits),
                      to_decimal(grid.G[i], g.digits)});
  emit_table(t, g);
  return 0;
}

// ---- accel-bench ----------------------------------------------------------

struct bench_opts {
  std::string z = "0.9999999968218806697141710";
  std::vector<long> channel{0, 0, 0};
  long terms = 2800;
  long step = 100;
  long bench_digits = 1000;
};

int cmd_accel_bench(const global_opts& g, const bench_opts& b) {
  numeric_context ctx = numeric_context::for_digits(std::max(g.digits, b.bench_digits));
  if (g.precision_bits > 0) ctx.precision_bits = g.precision_bits;
  if (b.step < 1 || b.terms < b.step)
    throw std::invalid_argument("accel-bench: need terms >= step >= 1");

  std::vector<accelerator_kind> kinds;
  convergent_trace tr;
  {
    scoped_precision guard(ctx);
    const real alpha = 1 / parse_decimal(g.alpha_inv);
    if (!(alpha > 0)) throw std::invalid_argument("alpha_inverse must be positive");
    const channel ch = channel_of(b.channel);
    const spectral sp = make_spectral_coupled(alpha, ch, parse_decimal(b.z));
    tr = lentz_sequence(cf_of(sp, ch), ctx, b.terms);
    kinds = {accelerator_kind::none(),
             accelerator_kind::epsilon(),
             accelerator_kind::rho(),
             accelerator_kind::rho_osada(real(g.theta)),
             accelerator_kind::iterated_rho(),
             accelerator_kind::theta_algorithm(),
             accelerator_kind::iterated_theta()};
  }

  std::vector<long> checkpoints;
  for (long c = b.step; c <= std::min<long>(b.terms, static_cast<long>(tr.values.size()));
       c += b.step)
    checkpoints.push_back(c);
  if (checkpoints.empty()) throw std::runtime_error("accel-bench: trace too short");

  const bench_report rep = bench_accelerators(tr.values, checkpoints, kinds, ctx);

  table_data t;
  t.header = {"terms"};
  for (const auto& k : rep.kinds) t.header.push_back(k.name());
  for (const auto& row : rep.rows) {
    std::vector<std::string> cells{std::to_string(row.terms)};
    for (std::size_t i = 0; i < row.values.size(); ++i)
      cells.push_back(row.ok[i] ? to_decimal(row.values[i], 8) : "diverged");
    t.rows.push_back(std::move(cells));
  }
  emit_table(t, g);
  return 0;
}

// ---- identities -----------------------------------------------------------

struct id_opts {
  std::string y = "1";
  std::string z = "0.5";
  long N = 0;  // 0 = auto
  bool dirac = false;
};

void append_report(identity_report& into, const identity_report& from) {
  into.checks.insert(into.checks.end(), from.checks.begin(), from.checks.end());
}

identity_check ratio_check(const std::string& name, const real& lo_y, const real& hi_y,
                           long order, const real& tol) {
  identity_check c;
  c.name = name;
  c.tolerance = tol;
  if (lo_y.is_zero() || !lo_y.is_finite() || !hi_y.is_finite()) {
    c.residual = real(1);
    c.pass = false;
    return c;
  }
  c.residual = abs(abs(hi_y / lo_y) * pow(real(2), order) - 1);
  c.pass = c.residual.is_finite() && !(c.residual > tol);
  return c;
}

int cmd_identities(const global_opts& g, const id_opts& id) {
  const numeric_context ctx = context_of(g);
  const real alpha = alpha_from_inverse(g.alpha_inv, g.digits);
  identity_report rep;

  scoped_precision guard(ctx);
  const real y = parse_decimal(id.y);
  if (!(y > 0)) throw std::invalid_argument("identities: y must be positive");
  const double yd = y.to_double();
  const long N = id.N > 0
                     ? id.N
                     : std::max<long>(500, static_cast<long>(std::ceil(300.0 * yd)));

  const channel ch = make_channel(0, 0, 0);
  const real tau = ch.tau();
  const real s = s_of(alpha, tau);
  const real alpha_lag = 2 * (tau - s);
  const real omega = omega_of(y, tau, s, ch.spin_lambda());

  auto it = std::make_shared<const itable>(build_itable(alpha_lag, y, N, ctx));
  const shat_table st = make_shat_table(it, omega, ctx);
  append_report(rep, identity_suite(st, ctx, s));

  // Order-scaling of the cancellation combos between y and 2y; meaningful in
  // the large-y regime only.
  if (yd >= 32.0) {
    auto it2 = std::make_shared<const itable>(build_itable(alpha_lag, 2 * y, 64, ctx));
    const shat_table st2 =
        make_shat_table(it2, omega_of(2 * y, tau, s, ch.spin_lambda()), ctx);
    auto small_it = std::make_shared<const itable>(build_itable(alpha_lag, y, 64, ctx));
    const shat_table st1 = make_shat_table(small_it, omega, ctx);
    const real tol("0.4");
    const long i = 4, j = 2;
    const shat_combo combos[] = {shat_combo::s0, shat_combo::s1, shat_combo::s2,
                                 shat_combo::s3, shat_combo::s4, shat_combo::s5,
                                 shat_combo::s6, shat_combo::s7};
    const long orders[] = {2, 1, 2, 2, 2, 2, 2, 3};
    for (int k = 0; k < 8; ++k)
      rep.checks.push_back(ratio_check("scaling_s" + std::to_string(k),
                                       shat_combos(st1, combos[k], i, j),
                                       shat_combos(st2, combos[k], i, j), orders[k],
                                       tol));
  }

  // Determinant invariants on the same table.
  {
    det_params dp;
    dp.stable = std::make_shared<const shat_table>(st);
    dp.s = s;
    dp.tau = tau;
    dp.N = std::min<long>(N, 256);
    dp.mode = det_mode::free_y;
    const real z = parse_decimal(id.z);
    const det_params dpz = with_probe(dp, z);

    identity_check c;
    c.name = "det_direct_vs_recursion";
    c.tolerance = pow(real(10), -(g.digits - 8));
    const det_value v1 = det_direct(dpz, z, ctx);
    const det_value v2 = det_recursion(dpz, z, ctx);
    if (v2.value.is_zero() || !v1.value.is_finite() || !v2.value.is_finite()) {
      c.residual = real(1);
    } else {
      c.residual = abs(v1.value / v2.value * pow(real(2), v1.exp2 - v2.exp2) - 1);
    }
    c.pass = c.residual.is_finite() && !(c.residual > c.tolerance);
    rep.checks.push_back(c);

    identity_check a0;
    a0.name = "delta_prime_anchor_00";
    a0.tolerance = pow(real(10), -(g.digits - 5));
    const real d00 = delta_prime(dpz, 0, 0);
    const real want = 1 - pow(dpz.zeta - shat(st, 0, 0), 2);
    a0.residual = abs(d00 - want) / max(real(1), abs(want));
    a0.pass = a0.residual.is_finite() && !(a0.residual > a0.tolerance);
    rep.checks.push_back(a0);

    identity_check rs;
    rs.name = "offdiag_rowsum_decay";
    rs.tolerance = real(1);
    real s2(0), s12(0);
    for (long n = 0; n < dpz.N; ++n) {
      if (n != 2) s2 += abs(delta_prime(dpz, 2, n));
      if (n != 12) s12 += abs(delta_prime(dpz, 12, n));
    }
    rs.residual = s12 / s2;
    rs.pass = rs.residual.is_finite() && rs.residual < 1;
    rep.checks.push_back(rs);
  }

  if (id.dirac) {
    const dirac_params dm = dirac_map(alpha, 0);
    const real yp = dirac_y_of(alpha, dm.z_prime);
    const real tau1(1);
    const real lag_d = 2 * (tau1 - dm.s_prime);
    auto itd = std::make_shared<const itable>(build_itable(lag_d, yp, 64, ctx));
    const shat_table std_ = make_shat_table(itd, omega_of(yp, tau1, dm.s_prime, 0), ctx);
    det_params dp;
    dp.stable = std::make_shared<const shat_table>(std_);
    dp.s = dm.s_prime;
    dp.tau = tau1;
    dp.zeta = zeta_of(dm.z_prime, dm.s_prime, tau1);
    dp.N = 64;
    dp.mode = det_mode::coupled;
    append_report(rep, dirac_structure_check(dp, ctx));
  }

  write_out(rep.to_json(20) + "\n", g.out_path);
  return rep.all_pass() ? 0 : 1;
}

// ---- scan -----------------------------------------------------------------

struct scan_opts {
  std::vector<long> channel{0, 0, 0};
  std::string zlo = "0.5";
  std::string zhi = "1.5";
  long steps = 64;
  long terms = 0;
};

int cmd_scan(const global_opts& g, const scan_opts& s) {
  const numeric_context ctx = context_of(g);
  const real alpha = alpha_from_inverse(g.alpha_inv, g.digits);
  const channel ch = channel_of(s.channel);
  solve_options sopts;
  real zlo, zhi;
  {
    scoped_precision guard(ctx);
    sopts.theta = real(g.theta);
    sopts.max_terms = s.terms;
    zlo = parse_decimal(s.zlo);
    zhi = parse_decimal(s.zhi);
  }
  const auto rows = scan_cf(alpha, ch, zlo, zhi, s.steps, ctx, sopts);
  table_data t;
  t.header = {"z", "value", "ok"};
  for (const auto& r : rows)
    t.rows.push_back({to_decimal(r.z, g.digits), to_decimal(r.value, 12),
                      r.ok ? "1" : "0"});
  emit_table(t, g);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Eigenvalues and radial wavefunctions of the equal-mass Coulomb "
               "Breit equation, to arbitrary precision"};
  app.require_subcommand(1);
  app.set_config("--config", "", "flat key=value configuration file");

  global_opts g;
  app.add_option("--alpha-inv", g.alpha_inv, "inverse fine-structure constant (decimal string)")
      ->capture_default_str();
  app.add_option("--digits", g.digits, "target certified decimal digits")
      ->capture_default_str();
  app.add_option("--precision-bits", g.precision_bits,
                 "override working precision in bits (0 = derive from --digits)");
  app.add_option("--output", g.output, "output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  app.add_option("--out", g.out_path, "output file (default: stdout)");
  app.add_option("--jobs", g.jobs, "worker threads for multi-level runs")
      ->capture_default_str();
  app.add_option("--theta", g.theta, "Osada rho decay exponent")->capture_default_str();

  eigen_opts eo;
  CLI::App* ce = app.add_subcommand("eigen", "solve one level (or a standard table)");
  ce->fallthrough();
  ce->add_option("--channel", eo.channel, "L S J")->expected(3);
  ce->add_option("--n", eo.n, "principal index (Dirac mode: radial index)")
      ->capture_default_str();
  ce->add_option("--method", eo.method, "cf | det-direct | det-recursion")
      ->capture_default_str();
  ce->add_option("--y", eo.y, "free-y mode: solve at this fixed y");
  ce->add_option("--det-size", eo.det_size, "determinant truncation size")
      ->capture_default_str();
  ce->add_option("--levels", eo.levels, "emit the standard table up to this n");
  ce->add_option("--kind", eo.kind, "level table kind")
      ->check(CLI::IsMember({"singlet", "triplet-j0", "triplet-jl"}))
      ->capture_default_str();
  ce->add_flag("--dirac", eo.dirac, "single-particle reduction mode");

  det_opts dop;
  CLI::App* cd = app.add_subcommand("det", "determinant root ladder vs the CF reference");
  cd->fallthrough();
  cd->add_option("--channel", dop.channel, "L S J")->expected(3);
  cd->add_option("--n", dop.n, "principal index")->capture_default_str();
  cd->add_option("--y", dop.y, "free-y mode value");
  cd->add_flag("--coupled", dop.coupled, "physical coupled mode (y = 2z/alpha^2)");
  cd->add_flag("--dirac", dop.dirac, "single-particle reduction mode");
  cd->add_option("--sizes", dop.sizes, "truncation sizes")
      ->delimiter(',')
      ->capture_default_str();
  cd->add_option("--method", dop.method, "direct | recursion (default: by size)");

  wavefn_opts wo;
  CLI::App* cw = app.add_subcommand("wavefn", "radial component grid for one level");
  cw->fallthrough();
  cw->add_option("--channel", wo.channel, "L S J")->expected(3);
  cw->add_option("--n", wo.n, "principal index")->capture_default_str();
  cw->add_option("--rmin", wo.rmin, "grid start, units 2 a0")->capture_default_str();
  cw->add_option("--rmax", wo.rmax, "grid end, units 2 a0")->capture_default_str();
  cw->add_option("--points", wo.points, "grid size")->capture_default_str();
  cw->add_option("--scale", wo.scale, "grid spacing")
      ->check(CLI::IsMember({"linear", "log"}))
      ->capture_default_str();
  cw->add_option("--m-start", wo.m_start, "initial Miller truncation")
      ->capture_default_str();

  bench_opts bo;
  CLI::App* cb = app.add_subcommand("accel-bench", "sequence accelerator comparison grid");
  cb->fallthrough();
  cb->add_option("--z", bo.z, "probe eigenvalue parameter")->capture_default_str();
  cb->add_option("--channel", bo.channel, "L S J")->expected(3);
  cb->add_option("--terms", bo.terms, "continued-fraction terms")->capture_default_str();
  cb->add_option("--step", bo.step, "checkpoint spacing")->capture_default_str();
  cb->add_option("--bench-digits", bo.bench_digits, "working digits for the bench")
      ->capture_default_str();

  id_opts io;
  CLI::App* ci = app.add_subcommand("identities", "identity suites and determinant invariants");
  ci->fallthrough();
  ci->add_option("--y", io.y, "table y")->capture_default_str();
  ci->add_option("--z", io.z, "determinant probe z")->capture_default_str();
  ci->add_option("--size", io.N, "table size (0 = auto)");
  ci->add_flag("--dirac", io.dirac, "include the single-particle structure checks");

  scan_opts so;
  CLI::App* cs = app.add_subcommand("scan", "continued-fraction values over a z window");
  cs->fallthrough();
  cs->add_option("--channel", so.channel, "L S J")->expected(3);
  cs->add_option("--zlo", so.zlo, "window start")->capture_default_str();
  cs->add_option("--zhi", so.zhi, "window end")->capture_default_str();
  cs->add_option("--steps", so.steps, "sample count")->capture_default_str();
  cs->add_option("--terms", so.terms, "CF terms per sample (0 = default)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*ce) return cmd_eigen(g, eo);
    if (*cd) return cmd_det(g, dop);
    if (*cw) return cmd_wavefn(g, wo);
    if (*cb) return cmd_accel_bench(g, bo);
    if (*ci) return cmd_identities(g, io);
    if (*cs) return cmd_scan(g, so);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return 1;
  }
  std::cerr << "error: no subcommand\n";
  return 1;
}
