#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pseudoplap/solver.hpp"

namespace pseudoplap {

// Named right-hand sides. Random presets draw their parameters from
// (seed, stream) so every run is reproducible.
//
//   constant       f = c
//   separable      f = N c; pairs with the separable boundary preset, whose
//                  extension sum_i w(x_i) is the exact solution
//   gaussian       f = c exp(-|x - x0|^2 / (2 sigma^2)), random centre x0 in B_1/2
//   checkerboard   f = +-c on cells of width 2/k
//   random_smooth  f = c sum_j a_j cos(pi k_j.x + phi_j) / sum_j |a_j|, six modes
enum class RhsKind { constant, separable, gaussian, checkerboard, random_smooth };

struct RhsPreset {
  RhsKind kind = RhsKind::constant;
  double c = 1.0;
  double sigma = 0.25;  // gaussian
  int cells = 4;        // checkerboard
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;

  void validate() const;
  /// Stable text form without commas, e.g. "gaussian(c=1;sigma=0.25;seed=7/0)".
  std::string describe() const;
};

// Boundary presets:
//   zero        g = 0
//   constant    g = c
//   affine      g = c + a.x, random unit direction a scaled by `slope`
//   separable   g = sum_i w(x_i), w(t) = ((p-1)/p) ((p-1)c)^(1/(p-1)) (|t|^(p/(p-1)) - 1)
//   trig        g = c cos(pi x_1) (+ sin(pi x_2) for N >= 2)
enum class BoundaryKind { zero, constant, affine, separable, trig };

struct BoundaryPreset {
  BoundaryKind kind = BoundaryKind::zero;
  double c = 0.0;
  double slope = 1.0;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;

  void validate() const;
  std::string describe() const;
};

std::string to_string(RhsKind k);
std::string to_string(BoundaryKind k);
std::optional<RhsKind> parse_rhs_kind(const std::string& s);
std::optional<BoundaryKind> parse_boundary_kind(const std::string& s);

/// f on interior and boundary nodes.
ScalarField make_rhs(const GridPtr& grid, const RhsPreset& preset);

/// g as a boundary function. `p` is used by the separable preset only.
BoundaryFunction make_boundary(const BoundaryPreset& preset, int dimension, double p);

/// Separable profile w(t) (zero at t = +-1).
double separable_profile(double t, double p, double c);

/// Exact solution of the separable pair (rhs separable c, boundary separable c).
double separable_solution(const Point& x, int dimension, double p, double c);

/// Ten right-hand sides of varied shape for regularity sweeps; the random
/// members draw from `seed`.
std::vector<RhsPreset> regularity_rhs_family(std::uint64_t seed);

}  // namespace pseudoplap
