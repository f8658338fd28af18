#pragma once

namespace udn::special {

// Gauss hypergeometric function 2F1(1, 1; c; z) for z in [0, 1).
//
// Direct power series (term ratio z*(k+1)/(k+c)) up to z = 0.95; beyond that
// the series needs thousands of terms, so the z -> 1-z linear connection
// formula is used instead:
//   2F1(1,1;c;z) = ((c-1)/(c-2)) * 2F1(1,1;3-c;1-z)
//                  + Gamma(c) Gamma(2-c) (1-z)^(c-2) z^(1-c),
// whose series argument 1-z < 0.05 converges in a handful of terms.
// Throws DomainError for z outside [0,1) and NumericalError (with partial sum)
// if the series fails to converge within the term cap.
double hyp2f1_11c(double c, double z);

}  // namespace udn::special
