#pragma once

#include <complex>

#include "dirichlet/jet.hpp"

namespace dirichlet {

struct TailJet {
  Jet value;
  /// Size of the last Euler-Maclaurin correction used; a remainder estimate.
  double remainder;
};

/// sum_{m >= 0} (x + m)^-(s + h) as a jet in h, by Euler-Maclaurin summation
/// started at x. Needs Re(s) > 1 and x well above |s| / (2 pi).
/// with_integral = false drops the term x^(1-u)/(u-1).
TailJet hurwitz_tail(std::size_t order, std::complex<double> s, double x, int correction_terms = 10,
                     bool with_integral = true);

}  // namespace dirichlet
