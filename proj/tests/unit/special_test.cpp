#include <doctest.h>

#include <cmath>

#include "udn/errors.hpp"
#include "udn/special.hpp"

using udn::special::hyp2f1_11c;

// 2F1(1,1;1/2;z) = (1 + sqrt(z) asin(sqrt(z)) / sqrt(1-z)) / (1-z)
static double half_c_closed_form(double z) {
  const double s = std::sqrt(z);
  return (1.0 + s * std::asin(s) / std::sqrt(1.0 - z)) / (1.0 - z);
}

TEST_CASE("value at z=0 is 1 for any admissible c") {
  CHECK(hyp2f1_11c(0.5, 0.0) == 1.0);
  CHECK(hyp2f1_11c(7.3, 0.0) == 1.0);
}

TEST_CASE("matches the c=1/2 closed form across the unit interval") {
  for (double z : {0.05, 0.2, 0.5, 0.8, 0.93, 0.97, 0.995}) {
    CHECK(hyp2f1_11c(0.5, z) == doctest::Approx(half_c_closed_form(z)).epsilon(1e-11));
  }
}

TEST_CASE("frozen reference values") {
  CHECK(hyp2f1_11c(0.5, 0.5) == doctest::Approx(2.0 + M_PI_2).epsilon(1e-12));
  CHECK(hyp2f1_11c(0.5, 0.99) == doctest::Approx(1563.25728575102).epsilon(1e-10));
  CHECK(hyp2f1_11c(1.0 / 3.0, 0.97) == doctest::Approx(818.568601545773).epsilon(1e-10));
}

TEST_CASE("series and near-unit branches join continuously") {
  for (double c : {1.0 / 3.0, 0.4, 0.51, 2.7}) {
    const double below = hyp2f1_11c(c, 0.949999);
    const double above = hyp2f1_11c(c, 0.950001);
    CHECK(std::abs(above - below) / below < 1e-4);
    CHECK(above > below);
  }
}

TEST_CASE("monotone increasing in z for fixed c") {
  double prev = 0.0;
  for (double z = 0.0; z < 0.999; z += 0.037) {
    const double v = hyp2f1_11c(0.8, z);
    CHECK(v >= prev);
    prev = v;
  }
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(hyp2f1_11c(0.5, 1.0), udn::DomainError);
  CHECK_THROWS_AS(hyp2f1_11c(0.5, -0.1), udn::DomainError);
  CHECK_THROWS_AS(hyp2f1_11c(0.0, 0.5), udn::DomainError);
  CHECK_THROWS_AS(hyp2f1_11c(-2.0, 0.5), udn::DomainError);
}
