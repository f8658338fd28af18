#include <doctest.h>

#include <cmath>

#include "udn/errors.hpp"
#include "udn/se.hpp"

using namespace udn;
using namespace udn::se;

namespace {
NetworkParams net(double lb, double lu, double a) { return {lb, lu, a}; }
}  // namespace

TEST_CASE("rho_0 closed form at reference exponents") {
  CHECK(rho_zero_analytic(2.5) == doctest::Approx(4.27583732846238).epsilon(1e-12));
  CHECK(rho_zero_analytic(3.0) == doctest::Approx(2.41839915231229).epsilon(1e-12));
  CHECK(rho_zero_analytic(4.0) == doctest::Approx(M_PI_2).epsilon(1e-14));
  CHECK(rho_zero_analytic(6.0) == doctest::Approx(1.20919957615615).epsilon(1e-12));
  CHECK(rho_zero_analytic(10.0) == doctest::Approx(1.0689593321156).epsilon(1e-12));
}

TEST_CASE("rho_0 quadrature reproduces the closed form to 1e-9") {
  for (double alpha : {2.5, 3.0, 4.0, 6.0, 10.0}) {
    const double q = rho_zero_quadrature(alpha);
    CHECK(std::abs(q - rho_zero_analytic(alpha)) < 1e-9);
    CHECK(rho_zero(alpha) == rho_zero_analytic(alpha));
  }
}

TEST_CASE("rho_t frozen values") {
  // At alpha=4 and t=log 2 the lower limit is 1 and the tail is exactly pi/4.
  CHECK(rho_t(std::log(2.0), 4.0) == doctest::Approx(M_PI_4).epsilon(1e-10));
  CHECK(rho_t(0.1, 3.0) == doctest::Approx(0.920618906879617).epsilon(1e-9));
  CHECK(rho_t(2.0, 6.0) == doctest::Approx(0.689669536884409).epsilon(1e-9));
  CHECK(rho_t(5.0, 2.5) == doctest::Approx(4.25747763864466).epsilon(1e-9));
}

TEST_CASE("rho_t is increasing in t and bounded by rho_0") {
  for (double alpha : {2.5, 4.0, 7.0}) {
    const double cap = rho_zero_analytic(alpha);
    double prev = 0.0;
    for (double t = 0.05; t < 12.0; t *= 1.9) {
      const double v = rho_t(t, alpha);
      CHECK(v > prev);
      CHECK(v < cap);
      prev = v;
    }
    // the lower limit decays as exp(-2t/alpha), so t must scale with alpha
    CHECK(rho_t(13.0 * alpha, alpha) == doctest::Approx(cap).epsilon(1e-9));
  }
}

TEST_CASE("activity probability frozen values and bounds") {
  CHECK(p_active(0.02, 1.0) == doctest::Approx(0.0197455262185).epsilon(1e-9));
  CHECK(p_active(0.1, 1.0) == doctest::Approx(0.093893173081).epsilon(1e-9));
  CHECK(p_active(0.2, 1.0) == doctest::Approx(0.176749276623).epsilon(1e-9));
  CHECK(p_active(1.0, 1.0) == doctest::Approx(0.585051349019134).epsilon(1e-11));

  // Scale-free in the density ratio; always below both 1 and the ratio.
  CHECK(p_active(0.2, 1.0) == doctest::Approx(p_active(0.02, 0.1)).epsilon(1e-14));
  for (double r : {1e-4, 0.05, 0.3, 1.0, 4.0, 1e3}) {
    const double p = p_active(r, 1.0);
    CHECK(p > 0.0);
    CHECK(p <= 1.0);
    CHECK(p <= r + 1e-15);
  }
}

TEST_CASE("sparse-limit SE constant gamma_alpha") {
  CHECK(se_sparse_gamma_alpha(2.5).value == doctest::Approx(0.521299588182).epsilon(1e-9));
  CHECK(se_sparse_gamma_alpha(3.0).value == doctest::Approx(0.87125979322).epsilon(1e-9));
  CHECK(se_sparse_gamma_alpha(4.0).value == doctest::Approx(1.48898762466583).epsilon(1e-9));
  CHECK(se_sparse_gamma_alpha(6.0).value == doctest::Approx(2.61782978051).epsilon(1e-9));
  CHECK(se_sparse_gamma_alpha(10.0).value == doctest::Approx(4.74164370877).epsilon(1e-9));
  CHECK(se_sparse_gamma_alpha(4.0).method == Method::SparseClosedForm);
}

TEST_CASE("exact SE frozen values") {
  CHECK(se_exact(net(0.1, 0.02, 4.0)).value == doctest::Approx(3.45919983289).epsilon(1e-9));
  CHECK(se_exact(net(0.2, 0.02, 4.0)).value == doctest::Approx(4.41513873051).epsilon(1e-9));
  CHECK(se_exact(net(1.0, 0.02, 4.0)).value == doctest::Approx(7.13111028138).epsilon(1e-9));
  CHECK(se_exact(net(0.05, 0.5, 4.0)).value == doctest::Approx(1.49645964114).epsilon(1e-9));
  CHECK(se_exact(net(0.2, 0.02, 3.0)).value == doctest::Approx(2.80973334746).epsilon(1e-9));
  CHECK(se_exact(net(0.2, 0.02, 6.0)).value == doctest::Approx(7.29760950668).epsilon(1e-9));
}

TEST_CASE("exact SE depends only on the density ratio") {
  const double v1 = se_exact(net(0.2, 0.02, 4.0)).value;
  const double v2 = se_exact(net(2.0, 0.2, 4.0)).value;
  const double v3 = se_exact(net(0.002, 0.0002, 4.0)).value;
  CHECK(v1 == doctest::Approx(v2).epsilon(1e-10));
  CHECK(v1 == doctest::Approx(v3).epsilon(1e-10));
}

TEST_CASE("exact SE approaches gamma_alpha when users saturate every cell") {
  for (double alpha : {3.0, 4.0}) {
    const double g = se_sparse_gamma_alpha(alpha).value;
    CHECK(se_exact(net(1.0, 1e6, alpha)).value == doctest::Approx(g).epsilon(1e-6));
  }
}

TEST_CASE("exact SE increases with BS density at fixed user density") {
  double prev = 0.0;
  for (double lb : {0.05, 0.1, 0.2, 0.5, 1.0, 3.0}) {
    const double v = se_exact(net(lb, 0.02, 4.0)).value;
    CHECK(v > prev);
    prev = v;
  }
}

TEST_CASE("densification gains over the single-density baseline") {
  // Closed-form ultra-dense SE relative to gamma_alpha: +62%, +150%, +365%.
  const double g4 = se_sparse_gamma_alpha(4.0).value;
  CHECK(se_udn_closed_form(net(0.1, 0.02, 4.0)).value / g4 ==
        doctest::Approx(1.6184382).epsilon(1e-6));
  CHECK(se_udn_closed_form(net(0.2, 0.02, 4.0)).value / g4 ==
        doctest::Approx(2.5026261).epsilon(1e-6));
  CHECK(se_udn_closed_form(net(1.0, 0.02, 4.0)).value / g4 ==
        doctest::Approx(4.6487069).epsilon(1e-6));
}

TEST_CASE("ultra-dense closed form and its approach to the exact value") {
  const NetworkParams p = net(0.2, 0.02, 4.0);
  const double expect = std::log1p(std::pow(0.2 / (M_PI_2 * 0.02), 2.0));
  CHECK(se_udn_closed_form(p).value == doctest::Approx(expect).epsilon(1e-12));

  // Ratio closed-form/exact climbs toward 1 as lambda_b grows.
  const double r1 = se_udn_closed_form(net(0.1, 0.02, 4.0)).value / se_exact(net(0.1, 0.02, 4.0)).value;
  const double r2 = se_udn_closed_form(net(0.2, 0.02, 4.0)).value / se_exact(net(0.2, 0.02, 4.0)).value;
  const double r3 = se_udn_closed_form(net(1.0, 0.02, 4.0)).value / se_exact(net(1.0, 0.02, 4.0)).value;
  CHECK(r1 == doctest::Approx(0.69664506).epsilon(1e-6));
  CHECK(r2 == doctest::Approx(0.84400055).epsilon(1e-5));
  CHECK(r3 == doctest::Approx(0.97065771).epsilon(1e-6));
  CHECK(r1 < r2);
  CHECK(r2 < r3);
}

TEST_CASE("lower bound frozen values, parameterized by a = rho_0 lambda_u / lambda_b") {
  auto lb_at = [](double a, double alpha) {
    return se_lower_bound(net(rho_zero_analytic(alpha) / a, 1.0, alpha)).value;
  };
  CHECK(lb_at(0.001, 4.0) == doctest::Approx(11.8186511506).epsilon(1e-9));
  CHECK(lb_at(0.1, 4.0) == doctest::Approx(2.9093460517).epsilon(1e-9));
  CHECK(lb_at(1.0, 4.0) == doctest::Approx(0.263943507355).epsilon(1e-9));
  CHECK(lb_at(0.05, 3.0) == doctest::Approx(3.15264878466).epsilon(1e-9));
  CHECK(lb_at(0.2, 6.0) == doctest::Approx(2.54983986176).epsilon(1e-9));
  CHECK(lb_at(0.7, 2.5) == doctest::Approx(0.488523883401).epsilon(1e-9));
  CHECK(lb_at(1.5, 5.0) == doctest::Approx(0.0942625178301).epsilon(1e-9));
}

TEST_CASE("lower bound sits below the exact SE") {
  // Deterministic parameter sweep; the slack mirrors quadrature tolerance.
  for (double ratio : {1.0, 3.0, 10.0, 50.0, 300.0, 1000.0}) {
    for (double alpha : {2.7, 4.0, 5.5}) {
      const NetworkParams p = net(ratio, 1.0, alpha);
      CHECK(se_lower_bound(p).value <= se_exact(p).value + 1e-8);
    }
  }
}

TEST_CASE("relative gap between lower bound and ultra-dense closed form") {
  auto gap = [](double a, double alpha) {
    const NetworkParams p = net(rho_zero_analytic(alpha) / a, 1.0, alpha);
    const double udn = se_udn_closed_form(p).value;
    return std::abs(se_lower_bound(p).value - udn) / udn;
  };
  CHECK(gap(0.001, 4.0) == doctest::Approx(0.144538).epsilon(1e-4));
  CHECK(gap(0.0157, 4.0) == doctest::Approx(0.234842).epsilon(1e-4));
  CHECK(gap(0.043, 2.5) == doctest::Approx(0.282793).epsilon(1e-4));
  CHECK(gap(0.0121, 6.0) == doctest::Approx(0.223209).epsilon(1e-4));
}

TEST_CASE("scheduler-adjusted SE by regime") {
  const NetworkParams even = net(0.1, 0.1, 4.0);
  const SEValue sp = se_with_multiple_access(even, Regime::Sparse);
  CHECK(sp.value == doctest::Approx(se_sparse_gamma_alpha(4.0).value).epsilon(1e-12));
  CHECK_FALSE(sp.validity_warning);

  const SEValue half = se_with_multiple_access(net(0.05, 0.1, 4.0), Regime::Sparse);
  CHECK(half.value == doctest::Approx(0.5 * se_sparse_gamma_alpha(4.0).value).epsilon(1e-12));

  const SEValue over = se_with_multiple_access(net(0.2, 0.1, 4.0), Regime::Sparse);
  CHECK(over.validity_warning);

  const NetworkParams dense = net(5.0, 0.1, 4.0);
  CHECK(se_with_multiple_access(dense, Regime::UltraDense).value ==
        doctest::Approx(se_udn_closed_form(dense).value).epsilon(1e-12));

  CHECK_THROWS_AS(se_with_multiple_access(dense, Regime::General), DomainError);
}

TEST_CASE("domain validation") {
  CHECK_THROWS_AS(se_exact(net(0.0, 0.1, 4.0)), DomainError);
  CHECK_THROWS_AS(se_exact(net(0.1, -0.1, 4.0)), DomainError);
  CHECK_THROWS_AS(se_exact(net(0.1, 0.1, 2.0)), DomainError);
  CHECK_THROWS_AS(rho_t(0.0, 4.0), DomainError);
  CHECK_THROWS_AS(rho_t(-1.0, 4.0), DomainError);
  CHECK_THROWS_AS(rho_zero_analytic(1.9), DomainError);
  CHECK_THROWS_AS(se_exact_at_activity(0.0, 4.0), DomainError);
  CHECK_THROWS_AS(se_exact_at_activity(1.3, 4.0), DomainError);
}
