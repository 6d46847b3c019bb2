#include "pseudoplap/random.hpp"

#include <cmath>
#include <numbers>

#include "pseudoplap/error.hpp"

namespace pseudoplap {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

double uniform(Rng& rng, double a, double b) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return a + (b - a) * u;
}

double log_uniform(Rng& rng, double a, double b) {
  if (!(a > 0.0) || !(b > a)) throw PreconditionError("log_uniform needs 0 < a < b");
  return std::exp(uniform(rng, std::log(a), std::log(b)));
}

double normal(Rng& rng) {
  double u1 = 0.0;
  while (u1 == 0.0) u1 = uniform(rng, 0.0, 1.0);
  const double u2 = uniform(rng, 0.0, 1.0);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Vector random_unit_vector(Rng& rng, std::size_t n) {
  Vector v(n);
  double len = 0.0;
  while (len < 1e-8) {
    for (double& c : v) c = normal(rng);
    len = norm2(v);
  }
  for (double& c : v) c /= len;
  return v;
}

Matrix random_symmetric(Rng& rng, std::size_t n) {
  Matrix s(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      s(i, j) = normal(rng);
      s(j, i) = s(i, j);
    }
  }
  return s;
}

}  // namespace pseudoplap
