#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pseudoplap/grid.hpp"

namespace pseudoplap {

using Point = std::array<double, 3>;
using BoundaryFunction = std::function<double(const Point&)>;

/// Dirichlet problem for Delta~_p u = (p-1) f on the grid's interior nodes.
struct EnergyProblem {
  GridPtr grid;
  double p = 3.0;
  ScalarField f;                    // read on interior nodes
  BoundaryFunction boundary_data;   // evaluated on boundary nodes

  EnergyProblem(GridPtr g, double exponent, ScalarField rhs, BoundaryFunction boundary);

  /// Throws PreconditionError on p <= 2, grid mismatch or non-finite data.
  void validate() const;
};

enum class InitialGuess { boundary_mean, user_field };

/// Search direction of the descent loop. Both use the same Armijo backtracking.
enum class DescentDirection { steepest, polak_ribiere };

struct SolveConfig {
  double grad_tol = 1e-8;   // sup-norm of the energy gradient per unit cell volume
  long max_iters = 200000;
  double armijo_c = 1e-4;
  double backtrack_factor = 0.5;
  InitialGuess initial_guess = InitialGuess::boundary_mean;
  std::optional<ScalarField> user_guess;
  DescentDirection direction = DescentDirection::polak_ribiere;
  bool record_energy = false;

  void validate() const;
};

struct SolveReport {
  bool converged = false;
  long iterations = 0;
  double final_energy = 0.0;
  double final_grad_sup = 0.0;
  double divergence_residual = 0.0;
  double wall_time = 0.0;  // seconds
  std::vector<double> energy_trace;  // accepted iterates, when requested
};

struct SolveResult {
  ScalarField u;
  SolveReport report;
};

/// (1/p) sum_links |D^+ u|^p h^N + (p-1) sum_interior f u h^N.
double energy(const ScalarField& u, const EnergyProblem& prob);

/// dJ/du at interior nodes: [-apply_divergence(u) + (p-1) f] h^N.
ScalarField energy_gradient(const ScalarField& u, const EnergyProblem& prob);

/// Boundary nodes set from the problem's boundary function, interior set to `fill`.
ScalarField boundary_extension(const EnergyProblem& prob, double fill);

/// Minimise the discrete energy with fixed boundary values.
SolveResult solve_dirichlet(const EnergyProblem& prob, const SolveConfig& cfg = {});

/// Normalised box average of f over interior nodes within `radius`. radius >= h.
ScalarField mollify_rhs(const ScalarField& f, double radius);

std::string to_string(DescentDirection d);

}  // namespace pseudoplap
