#include "heun/numctx.hpp"

#include "doctest.h"
#include "support.hpp"

using heun::real;
using heun::scoped_precision;

namespace {
real rel_err(const real& got, const real& want) {
  return heun::abs((got - want) / want);
}
}  // namespace

TEST_CASE("context and precision plumbing") {
  auto ctx = heun::numeric_context::for_digits(25);
  CHECK(ctx.precision_bits >= 25 * 3.32 + 64);
  CHECK(ctx.target_digits == 25);

  scoped_precision outer(200);
  CHECK(heun::working_bits() == 200);
  {
    scoped_precision inner(500);
    CHECK(heun::working_bits() == 500);
    real x(1);
    CHECK(x.precision() == 500);
  }
  CHECK(heun::working_bits() == 200);
}

TEST_CASE("decimal formatting and parsing") {
  scoped_precision guard(256);
  real z("0.9999999968218806697141710");
  CHECK(heun::to_decimal(z, 25) == "0.9999999968218806697141710");
  real t("1.9999955600612685817892653");
  CHECK(heun::to_decimal(t, 25) == "1.999995560061268581789265");
  CHECK(heun::to_decimal(real("-5.30682e-27"), 6) == "-5.30682e-27");
  CHECK(heun::to_decimal(real(0), 10) == "0");
  CHECK(heun::to_decimal(real(42), 6) == "42");

  real x = heun::parse_decimal("1.25e-8");
  CHECK(heun::to_decimal(x * 8, 3) == "1e-7");

  real rt = heun::parse_decimal(heun::to_decimal(heun::sqrt(real(2)), 60));
  CHECK(heun::matching_digits(rt, heun::sqrt(real(2))) >= 59);
}

TEST_CASE("matching_digits convention") {
  scoped_precision guard(256);
  CHECK(heun::matching_digits(real("1.001"), real(1)) == 3);
  CHECK(heun::matching_digits(real("0.999999996721711325628515"),
                              real("0.999999996821880669700205")) == 10);
  CHECK(heun::matching_digits(real("0.999999996818832675025857"),
                              real("0.999999996821880669700205")) == 12);
}

TEST_CASE("gamma basics") {
  scoped_precision guard(heun::bits_for_digits(40));
  CHECK(heun::gamma(real(1)) == 1);
  CHECK(heun::gamma(real(5)) == 24);
  CHECK(rel_err(heun::gamma(real(0.5)), heun::sqrt(heun::pi())) < real("1e-38"));
  CHECK_THROWS_AS(heun::gamma(real(0)), std::domain_error);
  CHECK_THROWS_AS(heun::gamma(real(-3)), std::domain_error);
}

TEST_CASE("upper incomplete gamma closed forms") {
  scoped_precision guard(heun::bits_for_digits(40));
  for (const char* xs : {"0.3", "2", "50"}) {
    real x(xs);
    CHECK(rel_err(heun::upper_incomplete_gamma(real(1), x), heun::exp(-x)) < real("1e-37"));
  }
}

TEST_CASE("upper incomplete gamma vs quadrature oracle") {
  scoped_precision guard(heun::bits_for_digits(45));
  real got = heun::upper_incomplete_gamma(real(-2), real(1));
  real oracle = testsup::gamma_inc_quadrature(real(-2), real(1));
  CHECK(rel_err(got, oracle) < real("1e-30"));
  CHECK(rel_err(got, testsup::gamma_inc_mpfr(real(-2), real(1))) < real("1e-40"));

  real a("-1.99998"), x("0.0000266");
  CHECK(rel_err(heun::upper_incomplete_gamma(a, x), testsup::gamma_inc_quadrature(a, x)) <
        real("1e-25"));
  CHECK(rel_err(heun::upper_incomplete_gamma(a, x), testsup::gamma_inc_mpfr(a, x)) <
        real("1e-33"));
}

TEST_CASE("upper incomplete gamma recurrence residual") {
  scoped_precision guard(heun::bits_for_digits(40));
  for (const char* as : {"-2.3", "-1.5", "-0.5", "0.7", "1.3", "2.8"}) {
    for (const char* xs : {"0.1", "1", "10", "60"}) {
      real a(as), x(xs);
      real lhs = heun::upper_incomplete_gamma(a + 1, x);
      real rhs = a * heun::upper_incomplete_gamma(a, x) + heun::pow(x, a) * heun::exp(-x);
      CHECK(rel_err(rhs, lhs) < real("1e-36"));
    }
  }
}

TEST_CASE("upper incomplete gamma precision doubling self-consistency") {
  real lo, hi;
  {
    scoped_precision guard(heun::bits_for_digits(30));
    lo = heun::upper_incomplete_gamma(real("-1.9"), real("0.001"));
  }
  {
    scoped_precision guard(heun::bits_for_digits(60));
    hi = heun::upper_incomplete_gamma(real("-1.9"), real("0.001"));
  }
  CHECK(heun::matching_digits(lo, hi) >= 28);
}

TEST_CASE("laguerre closed forms and explicit polynomial") {
  scoped_precision guard(heun::bits_for_digits(40));
  real alpha("2"), x("-3");
  CHECK(heun::laguerre(0, alpha, x) == 1);
  CHECK(heun::laguerre(1, alpha, x) == alpha + 1 - x);
  CHECK(rel_err(heun::laguerre(5, alpha, x), testsup::laguerre_explicit(5, alpha, x)) <
        real("1e-37"));
  real a2("0.37");
  CHECK(rel_err(heun::laguerre(12, a2, real("1.5")),
                testsup::laguerre_explicit(12, a2, real("1.5"))) < real("1e-35"));
}

TEST_CASE("laguerre_row consistency and summation identity") {
  scoped_precision guard(heun::bits_for_digits(40));
  real alpha(2), x("-0.125");
  auto row = heun::laguerre_row(10, alpha, x);
  REQUIRE(row.size() == 11);
  for (long n = 0; n <= 10; ++n)
    CHECK(rel_err(row[n], heun::laguerre(n, alpha, x)) < real("1e-38"));

  // sum_{k<=n} L_k^(a) = L_n^(a+1)
  auto rowp = heun::laguerre_row(10, alpha + 1, x);
  real acc(0);
  for (long n = 0; n <= 10; ++n) {
    acc += row[n];
    CHECK(rel_err(acc, rowp[n]) < real("1e-37"));
  }
}

TEST_CASE("laguerre three-term recurrence residual") {
  scoped_precision guard(heun::bits_for_digits(40));
  for (const char* as : {"0.5", "2", "3"}) {
    for (const char* xs : {"-5", "0", "1", "10"}) {
      real alpha(as), x(xs);
      auto row = heun::laguerre_row(50, alpha, x);
      for (long n = 1; n < 50; ++n) {
        real res = (n + 1) * row[n + 1] - (2 * n + 1 + alpha - x) * row[n] + (n + alpha) * row[n - 1];
        real scale = heun::max(heun::abs(row[n]), real(1));
        CHECK(heun::abs(res) / scale < real("1e-36"));
      }
    }
  }
}
