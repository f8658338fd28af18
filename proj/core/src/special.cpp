#include "udn/special.hpp"

#include <cmath>
#include <limits>

#include "udn/errors.hpp"

namespace udn::special {

namespace {

constexpr int kTermCap = 1000000;
constexpr double kRelStop = 1e-14;

// Power series for 2F1(1,1;c;z): term_0 = 1, term_{k+1} = term_k * z*(k+1)/(k+c).
double series_11c(double c, double z) {
  double sum = 1.0;
  double term = 1.0;
  for (int k = 0; k < kTermCap; ++k) {
    term *= z * (k + 1.0) / (k + c);
    sum += term;
    if (std::abs(term) < kRelStop * std::abs(sum)) return sum;
  }
  throw NumericalError("hyp2f1_11c series did not converge within term cap", sum);
}

bool near_nonpositive_integer(double x) {
  return x < 0.5 && std::abs(x - std::round(x)) < 1e-12;
}

}  // namespace

double hyp2f1_11c(double c, double z) {
  if (!(z >= 0.0) || z >= 1.0) throw DomainError("hyp2f1_11c requires 0 <= z < 1");
  if (near_nonpositive_integer(c)) throw DomainError("hyp2f1_11c: c at a series pole");
  if (z == 0.0) return 1.0;
  if (z <= 0.95) return series_11c(c, z);

  // Connection formula; valid when c-2 is not an integer (the Gamma(2-c) pole
  // and the (c-1)/(c-2) coefficient are then finite). Integer c falls back to
  // the direct series, which still converges for z < 1.
  if (std::abs(c - std::round(c)) < 1e-12) return series_11c(c, z);
  const double w = 1.0 - z;
  const double analytic =
      std::tgamma(c) * std::tgamma(2.0 - c) * std::pow(w, c - 2.0) * std::pow(z, 1.0 - c);
  return (c - 1.0) / (c - 2.0) * series_11c(3.0 - c, w) + analytic;
}

}  // namespace udn::special
