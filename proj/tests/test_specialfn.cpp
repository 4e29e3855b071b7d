#include "heun/specialfn.hpp"

#include <memory>
#include <stdexcept>
#include <utility>
#include <vector>

#include "doctest.h"
#include "heun/params.hpp"
#include "support.hpp"

using heun::build_itable;
using heun::i00;
using heun::imn;
using heun::itable;
using heun::make_shat_table;
using heun::numeric_context;
using heun::real;
using heun::scoped_precision;
using heun::shat;
using heun::shat_combo;
using heun::shat_table;

namespace {

// I^{(a)}_{m,n}(y) by direct double-exponential quadrature; the library
// never integrates, so this is an independent oracle.
real imn_quadrature(const real& alpha_lag, const real& y, long m, long n) {
  return testsup::integrate_0_inf([&](const real& x) {
    return heun::pow(x, alpha_lag) * heun::exp(-x) *
           testsup::laguerre_explicit(m, alpha_lag, x) *
           testsup::laguerre_explicit(n, alpha_lag, x) / (1 + y * x);
  });
}

shat_table table_for(const real& alpha_lag, const real& y, long N, const real& omega,
                     const numeric_context& ctx) {
  auto it = std::make_shared<itable>(build_itable(alpha_lag, y, N, ctx));
  return make_shat_table(std::move(it), omega, ctx);
}

}  // namespace

TEST_CASE("i00 against quadrature and the incomplete-gamma closed form") {
  const numeric_context ctx = numeric_context::for_digits(40);
  scoped_precision guard(ctx.precision_bits);
  for (const auto& [a_str, y_str] : std::vector<std::pair<const char*, const char*>>{
           {"1.75", "1"}, {"1.75", "0.5"}, {"2.25", "8"}}) {
    const real a(a_str), y(y_str);
    const real lib = i00(a, y, ctx);
    const real quad = imn_quadrature(a, y, 0, 0);
    const real closed = testsup::gamma_inc_mpfr(-a, 1 / y) * heun::gamma(a + 1) *
                        heun::pow(y, -a - 1) * heun::exp(1 / y);
    CHECK(heun::abs(lib - quad) < real("1e-32") * heun::abs(lib));
    CHECK(heun::abs(lib - closed) < real("1e-35") * heun::abs(lib));
  }
}

TEST_CASE("itable entries factorize the general matrix element") {
  const numeric_context ctx = numeric_context::for_digits(40);
  scoped_precision guard(ctx.precision_bits);
  const real a("1.75"), y(1);
  const itable it = build_itable(a, y, 16, ctx);
  CHECK(it.N == 16);
  CHECK(heun::abs(it.gamma_a1 - heun::gamma(a + 1)) < real("1e-36"));

  const std::pair<long, long> pts[] = {{0, 0}, {0, 1}, {1, 1}, {2, 1}, {3, 4}, {5, 5}};
  for (const auto& [m, n] : pts) {
    const real quad = imn_quadrature(a, y, m, n);
    CHECK(heun::abs(imn(it, m, n) - quad) < real("1e-30") * (1 + heun::abs(quad)));
  }
  // symmetry of the kernel is inherited by the factorized form
  CHECK(imn(it, 2, 5) == imn(it, 5, 2));
}

TEST_CASE("generating function of the m = 0 row") {
  const numeric_context ctx = numeric_context::for_digits(40);
  scoped_precision guard(ctx.precision_bits);
  const real a("1.75"), y(1), w("0.5");
  const itable it = build_itable(a, y, 160, ctx);
  real lhs(0), wk(1);
  for (long k = 0; k <= it.N; ++k) {
    lhs += it.i0[k] * wk;
    wk *= w;
  }
  const real rhs = i00(a, y * (1 - w), ctx);
  CHECK(heun::abs(lhs - rhs) < real("1e-34") * heun::abs(rhs));
}

TEST_CASE("shat against the defining sums built from quadrature") {
  const numeric_context ctx = numeric_context::for_digits(40);
  scoped_precision guard(ctx.precision_bits);
  const real a("1.75"), y(1), omega("0.37");
  const shat_table st = table_for(a, y, 12, omega, ctx);

  const std::pair<long, long> pts[] = {{0, 0}, {1, 0}, {0, 2}, {2, 1}, {2, 3}};
  for (const auto& [m, n] : pts) {
    real acc(0);
    for (long k = 0; k <= n; ++k) acc += imn_quadrature(a, y, m, k);
    const real fac = heun::gamma(real(m + 1)) / heun::gamma(a + m + 1);
    const real oracle = fac * (acc - omega * y * imn_quadrature(a, y, m, n));
    CHECK(heun::abs(shat(st, m, n) - oracle) < real("1e-28") * (1 + heun::abs(oracle)));
  }
}

TEST_CASE("large-y closed forms of shat") {
  const numeric_context ctx = numeric_context::for_digits(40);
  scoped_precision guard(ctx.precision_bits);
  const real a("1.75"), y("1e6");
  const real omega = real("0.75") / y;  // keeps y*omega of order one
  const shat_table st = table_for(a, y, 10, omega, ctx);
  const real yom = y * omega;

  // m >= n branch
  for (const auto& [m, n] : std::vector<std::pair<long, long>>{{3, 1}, {5, 0}, {4, 4}}) {
    real head(1);  // (m!/(a+1)_m) ((a+1)_n/n!)
    for (long k = 0; k < m; ++k) head *= (k + 1) / (a + 1 + k);
    for (long k = 0; k < n; ++k) head *= (a + 1 + k) / (k + 1);
    const real closed = head * (1 / (a * y)) * (n / (a + 1) + 1 - yom);
    CHECK(heun::abs(shat(st, m, n) - closed) < real("1e-4") * heun::abs(closed));
  }
  // m <= n branch
  for (const auto& [m, n] : std::vector<std::pair<long, long>>{{1, 3}, {0, 5}, {2, 2}}) {
    const real closed = (n - m + 1 + m / (a + 1) - yom) / (a * y);
    CHECK(heun::abs(shat(st, m, n) - closed) < real("1e-4") * heun::abs(closed));
  }
}

TEST_CASE("diagonal entries stay inside (0,1) and settle near one half") {
  const numeric_context ctx = numeric_context::for_digits(30);
  scoped_precision guard(ctx.precision_bits);
  const real alpha = real(1) / 137;
  const real s = heun::s_of(alpha, real(1));
  const real a = 2 * (1 - s);

  {
    const real y(1);
    const shat_table st = table_for(a, y, 500, heun::omega_of(y, real(1), s, real(0)), ctx);
    for (long m = 0; m <= st.size(); m += 25) {
      const real d = shat(st, m, m);
      CHECK(d > 0);
      CHECK(d < 1);
    }
    CHECK(heun::abs(shat(st, 500, 500) - real("0.5")) < real("0.25"));
  }
  {
    const real y = 2 / (alpha * alpha);  // coupled value at z = 1
    const shat_table st = table_for(a, y, 64, heun::omega_of(y, real(1), s, real(0)), ctx);
    for (long m = 0; m <= st.size(); ++m) {
      const real d = shat(st, m, m);
      CHECK(d > 0);
      CHECK(d < 1);
    }
  }
}

TEST_CASE("combination orders in 1/y") {
  const numeric_context ctx = numeric_context::for_digits(40);
  scoped_precision guard(ctx.precision_bits);
  const real alpha = real(1) / 137;
  const real s = heun::s_of(alpha, real(1));
  const real a = 2 * (1 - s);

  auto combos_at = [&](const real& y) {
    const shat_table st = table_for(a, y, 64, heun::omega_of(y, real(1), s, real(0)), ctx);
    std::vector<real> v;
    for (int c = 0; c <= 7; ++c)
      v.push_back(heun::shat_combos(st, static_cast<shat_combo>(c), 4, 2));
    return v;
  };
  const std::vector<real> lo = combos_at(real(1000));
  const std::vector<real> hi = combos_at(real(2000));
  const long order[] = {2, 1, 2, 2, 2, 2, 2, 3};
  for (int c = 0; c <= 7; ++c) {
    REQUIRE(!hi[c].is_zero());
    const real ratio = heun::abs(lo[c] / hi[c]);
    CHECK(heun::abs(heun::log(ratio) / heun::log(real(2)) - order[c]) < real("0.45"));
  }
}

TEST_CASE("identity suite passes on a deep table") {
  const numeric_context ctx = numeric_context::for_digits(30);
  scoped_precision guard(ctx.precision_bits);
  const real alpha = real(1) / 137;
  const real s = heun::s_of(alpha, real(1));
  const real y(1);
  const shat_table st =
      table_for(2 * (1 - s), y, 500, heun::omega_of(y, real(1), s, real(0)), ctx);
  const heun::identity_report rep = heun::identity_suite(st, ctx, s);

  bool saw_single = false, saw_double = false, saw_zy = false;
  for (const heun::identity_check& c : rep.checks) {
    INFO(c.name << " residual " << heun::to_decimal(c.residual, 6));
    CHECK(c.pass);
    saw_single |= c.name == "isumsingle";
    saw_double |= c.name == "isumdouble";
    saw_zy |= c.name == "other_product_zy";
  }
  CHECK(rep.all_pass());
  CHECK(saw_single);
  CHECK(saw_double);
  CHECK(saw_zy);
  CHECK(rep.to_json(10).find("isumsingle") != std::string::npos);
}

TEST_CASE("small-1/y expansion of the m = 0 row") {
  const numeric_context ctx = numeric_context::for_digits(35);
  scoped_precision guard(ctx.precision_bits);
  CHECK(heun::i0n_smallinvy_check(real("1.75"), real(50), 3, ctx) < real("1e-20"));
  CHECK(heun::i0n_smallinvy_check(real("1.75"), real(200), 0, ctx) < real("1e-25"));
  CHECK_THROWS_AS(heun::i0n_smallinvy_check(real("1.75"), real(2), 1, ctx),
                  std::domain_error);
}
