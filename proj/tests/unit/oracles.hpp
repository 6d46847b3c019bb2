#pragma once

// Closed forms used as independent oracles. Nothing here calls the library.

#include <cmath>

namespace oracle {

// Solution of (|w'|^(p-2) w')' = (p-1) c on (-1, 1), w(+-1) = 0:
//   w'(x) = sign(x) ((p-1) c |x|)^(1/(p-1)), integrated from the boundary.
inline double w1d(double x, double p, double c = 1.0) {
  const double q = p / (p - 1.0);
  return (p - 1.0) / p * std::pow((p - 1.0) * c, 1.0 / (p - 1.0)) * (std::pow(std::abs(x), q) - 1.0);
}

inline double barrier_M(double p, int N, double f_sup) {
  // smallest M with M^(p-1) 2^(-2p) N^(1-p/2) >= f_sup, times (1 + 1e-6)
  return std::pow(f_sup * std::pow(4.0, p) / std::pow(N, 1.0 - p / 2.0), 1.0 / (p - 1.0)) * (1.0 + 1e-6);
}

}  // namespace oracle
