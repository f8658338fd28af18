#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <set>

#include "udn/philox.hpp"

using udn::rng::Philox4x32;
using udn::rng::PhiloxStream;

TEST_CASE("known-answer vectors for the 10-round block") {
  {
    auto out = Philox4x32::block({0, 0, 0, 0}, {0, 0});
    CHECK(out[0] == 0x6627e8d5u);
    CHECK(out[1] == 0xe169c58du);
    CHECK(out[2] == 0xbc57ac4cu);
    CHECK(out[3] == 0x9b00dbd8u);
  }
  {
    auto out = Philox4x32::block({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                                 {0xffffffffu, 0xffffffffu});
    CHECK(out[0] == 0x408f276du);
    CHECK(out[1] == 0x41c83b0eu);
    CHECK(out[2] == 0xa20bc7c6u);
    CHECK(out[3] == 0x6d5451fdu);
  }
  {
    auto out = Philox4x32::block({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                                 {0xa4093822u, 0x299f31d0u});
    CHECK(out[0] == 0xd16cfe09u);
    CHECK(out[1] == 0x94fdccebu);
    CHECK(out[2] == 0x5001e420u);
    CHECK(out[3] == 0x24126ea1u);
  }
  {
    auto out = Philox4x32::block({7u, 3u, 12345u, 0u}, {0x9E3779B9u, 0x12345678u});
    CHECK(out[0] == 0x1e856aafu);
    CHECK(out[1] == 0x548ce0cdu);
    CHECK(out[2] == 0xdbff9ec9u);
    CHECK(out[3] == 0xece4b89bu);
  }
}

TEST_CASE("streams are reproducible and distinct") {
  PhiloxStream a(42, 7, 3);
  PhiloxStream b(42, 7, 3);
  for (int i = 0; i < 64; ++i) CHECK(a.next_u32() == b.next_u32());

  PhiloxStream c(42, 7, 4);
  PhiloxStream d(42, 8, 3);
  PhiloxStream e(43, 7, 3);
  PhiloxStream f(42, 7, 3, 1);
  PhiloxStream base(42, 7, 3);
  std::set<std::uint32_t> firsts;
  firsts.insert(base.next_u32());
  firsts.insert(c.next_u32());
  firsts.insert(d.next_u32());
  firsts.insert(e.next_u32());
  firsts.insert(f.next_u32());
  CHECK(firsts.size() == 5);
}

TEST_CASE("unit draws stay inside the open interval") {
  PhiloxStream s(1234, 0, 0);
  for (int i = 0; i < 20000; ++i) {
    const double u = s.next_unit();
    CHECK(u > 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("exponential draws have unit mean") {
  PhiloxStream s(99, 0, 0);
  const int n = 100000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += s.next_exponential();
  const double mean = sum / n;
  CHECK(std::abs(mean - 1.0) < 3.0 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("poisson draws match mean and variance") {
  PhiloxStream s(7, 0, 0);
  const int n = 4000;
  const double mean = 100.0;
  double sum = 0.0, sumsq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double k = static_cast<double>(s.next_poisson(mean));
    sum += k;
    sumsq += k * k;
  }
  const double m = sum / n;
  const double var = sumsq / n - m * m;
  CHECK(std::abs(m - mean) < 3.0 * std::sqrt(mean / n));
  // variance of the sample variance for Poisson ~ (2 mean^2 + mean)/n
  CHECK(std::abs(var - mean) < 3.0 * std::sqrt((2.0 * mean * mean + mean) / n));
}

TEST_CASE("poisson zero mean yields zero") {
  PhiloxStream s(7, 1, 0);
  for (int i = 0; i < 100; ++i) CHECK(s.next_poisson(0.0) == 0);
}
