#pragma once

#include <string>

#include "udn/errors.hpp"

namespace udn {

// Network-wide densities and propagation exponent. Densities are per abstract
// unit area; power decays as r^{-alpha} with alpha > 2.
struct NetworkParams {
  double lambda_b = 0.0;  // BS density
  double lambda_u = 0.0;  // user density
  double alpha = 4.0;     // path-loss exponent

  void validate() const {
    if (!(lambda_b > 0.0)) throw DomainError("lambda_b must be > 0");
    if (!(lambda_u > 0.0)) throw DomainError("lambda_u must be > 0");
    if (!(alpha > 2.0)) throw DomainError("alpha must be > 2");
  }
};

// User-side economics: willingness-to-pay theta is uniform on [0, b]; a user
// facing price p per nat demands X*(theta) = max(theta/p - 1, 0).
struct DemandModel {
  double b = 0.0;  // maximum willingness-to-pay (currency per nat)

  void validate() const {
    if (!(b > 0.0)) throw DomainError("b must be > 0");
  }
};

// Operator cost structure, per unit area.
struct CostParams {
  double c_b = 0.0;  // operating cost per unit BS density
  double c_w = 0.0;  // operating cost per unit bandwidth

  void validate() const {
    if (!(c_b > 0.0)) throw DomainError("c_b must be > 0");
    if (!(c_w > 0.0)) throw DomainError("c_w must be > 0");
  }
};

enum class Regime { None, Sparse, UltraDense, General };

inline const char* to_string(Regime r) {
  switch (r) {
    case Regime::None: return "none";
    case Regime::Sparse: return "sparse";
    case Regime::UltraDense: return "ultradense";
    case Regime::General: return "general";
  }
  return "?";
}

}  // namespace udn
