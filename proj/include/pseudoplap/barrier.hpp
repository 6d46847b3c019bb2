#pragma once

#include "pseudoplap/grid.hpp"

namespace pseudoplap {

// Radial barrier  b(x) = boundary_sup + M (1 - 1/(1 + d(x))),  d(x) = 1 - |x|.
// For M above min_barrier_M it satisfies Delta~_p b <= -(p-1) |f|_inf away
// from the origin, which bounds every solution of the Dirichlet problem.

struct BarrierParams {
  double M = 1.0;
  double boundary_sup = 0.0;
  double p = 3.0;
  int dimension = 2;
};

/// (f_sup 2^(2p) N^(p/2-1))^(1/(p-1)) (1 + 1e-6).
double min_barrier_M(double p, int dimension, double f_sup);

/// Barrier values on every non-exterior node. Ball grids only.
ScalarField barrier_field(const GridPtr& grid, const BarrierParams& params);

/// Analytic lower bound magnitude (p-1) max(f_sup, M^(p-1) 2^(-2p) N^(1-p/2)),
/// used to scale the discretisation tolerance.
double barrier_scale(const BarrierParams& params, double f_sup);

/// max over interior nodes with |x| >= exclusion_radius of
/// apply_nondivergence(b) + (p-1) f_sup. Requires exclusion_radius >= 2h.
double verify_supersolution(const GridPtr& grid, const BarrierParams& params, double f_sup,
                            double exclusion_radius);

/// 10 h^(1/2) barrier_scale: admissible discretisation error for verify_supersolution.
double supersolution_tolerance(const Grid& grid, const BarrierParams& params, double f_sup);

struct LinfBound {
  double bound = 0.0;
  double u_sup = 0.0;
  bool satisfied = false;
};

/// bound = boundary_sup + min_barrier_M(p, N, |f|_inf) / 2, checked against |u|_inf + slack.
LinfBound linf_bound_check(const ScalarField& u, const ScalarField& f, double boundary_sup, double p,
                           double slack = 1e-8);

struct ComparisonOutcome {
  bool premise_holds = false;
  bool conclusion_holds = false;
  double operator_gap = 0.0;   // max over interior of apply_div(v) - apply_div(u)
  double boundary_gap = 0.0;   // max over boundary of u - v
  double interior_gap = 0.0;   // max over interior of u - v
  double conclusion_tol = 0.0;
};

/// Graph diameter of the grid in axis steps: N (n - 1).
double stencil_diameter(const Grid& grid);

/// Discrete comparison: premise is apply_div(u) >= apply_div(v) - tol on the
/// interior and u <= v + tol on the boundary; conclusion is u <= v + tol * diameter.
ComparisonOutcome comparison_check(const ScalarField& u, const ScalarField& v, double p, double tol);

}  // namespace pseudoplap
