// swan/logmath.cpp

#include "swan/logmath.hpp"

#include <algorithm>

namespace swan {

double logsumexp(std::span<const double> xs) {
  if (xs.empty()) return kLogZero;
  double m = *std::max_element(xs.begin(), xs.end());
  if (m == kLogZero) return kLogZero;  // every term is log(0)
  double sum = 0.0;
  for (double x : xs) sum += std::exp(x - m);
  return m + std::log(sum);
}

}  // namespace swan
