// swan/logmath.hpp
//
// Log-domain arithmetic for the dynamic programs. All probabilities in this
// library live in natural-log space; -inf is the log of zero.

#pragma once

#include <cmath>
#include <limits>
#include <span>

namespace swan {

inline constexpr double kLogZero = -std::numeric_limits<double>::infinity();

// log(exp(a) + exp(b)) without leaving log space.
inline double log_add(double a, double b) {
  if (a < b) std::swap(a, b);
  if (b == kLogZero) return a;  // covers a == b == -inf as well
  return a + std::log1p(std::exp(b - a));
}

// Max-shifted log(sum_i exp(xs[i])). Empty input yields log(0) = -inf.
double logsumexp(std::span<const double> xs);

}  // namespace swan
