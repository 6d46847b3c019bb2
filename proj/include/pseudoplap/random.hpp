#pragma once

#include <cstdint>
#include <random>

#include "pseudoplap/dense.hpp"

namespace pseudoplap {

// mt19937_64 is fully specified by the standard; the distributions are not,
// so the helpers below do their own conversions to stay bit-reproducible.
using Rng = std::mt19937_64;

std::uint64_t splitmix64(std::uint64_t x);

/// Independent stream for sample `index` of a run seeded with `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

inline Rng make_rng(std::uint64_t seed, std::uint64_t index) { return Rng(derive_seed(seed, index)); }

/// Uniform in [a, b).
double uniform(Rng& rng, double a, double b);
/// Log-uniform in [a, b), a > 0.
double log_uniform(Rng& rng, double a, double b);
/// Standard normal via Box-Muller.
double normal(Rng& rng);

Vector random_unit_vector(Rng& rng, std::size_t n);
/// Symmetric matrix with N(0,1) entries (off-diagonal mirrored).
Matrix random_symmetric(Rng& rng, std::size_t n);

}  // namespace pseudoplap
