#pragma once

#include <cmath>
#include <cstdint>
#include <queue>
#include <utility>
#include <vector>

#include "udn/errors.hpp"

namespace udn::quad {

struct QuadratureConfig {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  double outer_truncation = 0.0;  // upper limit T for improper outer integrals; 0 = derive from tail decay
  int max_subdivisions = 2000;

  void validate() const {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) throw DomainError("tolerances must be > 0");
    if (outer_truncation < 0.0) throw DomainError("outer_truncation must be >= 0");
    if (max_subdivisions < 1) throw DomainError("max_subdivisions must be >= 1");
  }
};

struct QuadResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int subdivisions = 1;
};

namespace detail {

// Gauss-Kronrod 7-15 pair; positive abscissae, odd indices are the Gauss nodes.
inline constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.000000000000000};
inline constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
inline constexpr double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

template <class F>
inline void gk15(F&& f, double a, double b, double& value, double& error) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double resk = fc * kWgk[7];
  double resg = fc * kWg[3];
  for (int i = 0; i < 7; ++i) {
    const double dx = h * kXgk[i];
    const double f1 = f(c - dx);
    const double f2 = f(c + dx);
    resk += kWgk[i] * (f1 + f2);
    if (i % 2 == 1) resg += kWg[i / 2] * (f1 + f2);
  }
  value = resk * h;
  error = std::abs((resk - resg) * h);
}

}  // namespace detail

// Adaptive bisection driven by the embedded G7/K15 error estimate. The
// worst-error segment is split first; ties break on the older segment so the
// refinement order (and hence the floating-point result) is deterministic.
template <class F>
QuadResult integrate(F&& f, double a, double b, double abs_tol, double rel_tol,
                     int max_subdivisions) {
  struct Seg {
    double a, b, value, error;
    std::int64_t id;
  };
  struct Worse {
    bool operator()(const Seg& x, const Seg& y) const {
      if (x.error != y.error) return x.error < y.error;
      return x.id > y.id;
    }
  };

  if (a == b) return {0.0, 0.0, 0};

  Seg first{a, b, 0.0, 0.0, 0};
  detail::gk15(f, a, b, first.value, first.error);
  double total = first.value;
  double err = first.error;

  std::priority_queue<Seg, std::vector<Seg>, Worse> heap;
  heap.push(first);
  std::int64_t next_id = 1;
  int used = 1;

  auto tol = [&] { return std::max(abs_tol, rel_tol * std::abs(total)); };
  while (err > tol() && used < max_subdivisions && !heap.empty()) {
    const Seg worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) continue;  // interval below ulp resolution
    Seg left{worst.a, mid, 0.0, 0.0, next_id++};
    Seg right{mid, worst.b, 0.0, 0.0, next_id++};
    detail::gk15(f, left.a, left.b, left.value, left.error);
    detail::gk15(f, right.a, right.b, right.value, right.error);
    total += left.value + right.value - worst.value;
    err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++used;
  }

  if (err > tol())
    throw NumericalError("quadrature did not reach tolerance within subdivision budget", total);
  return {total, err, used};
}

template <class F>
QuadResult integrate(F&& f, double a, double b, const QuadratureConfig& cfg = {}) {
  return integrate(std::forward<F>(f), a, b, cfg.abs_tol, cfg.rel_tol, cfg.max_subdivisions);
}

}  // namespace udn::quad
