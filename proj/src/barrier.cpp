#include "pseudoplap/barrier.hpp"

#include <cmath>

#include "pseudoplap/error.hpp"
#include "pseudoplap/operator.hpp"

namespace pseudoplap {

double min_barrier_M(double p, int dimension, double f_sup) {
  require_exponent(p);
  if (dimension < 1) throw PreconditionError("dimension must be >= 1");
  if (f_sup < 0.0) throw PreconditionError("f_sup must be >= 0");
  const double power = f_sup * std::pow(2.0, 2.0 * p) * std::pow(static_cast<double>(dimension), p / 2.0 - 1.0);
  return std::pow(power, 1.0 / (p - 1.0)) * (1.0 + 1e-6);
}

ScalarField barrier_field(const GridPtr& grid, const BarrierParams& params) {
  if (grid->spec().shape != DomainShape::ball) {
    throw PreconditionError("barrier is defined through the distance to the unit sphere; ball grids only");
  }
  ScalarField out(grid);
  for (std::size_t i = 0; i < grid->size(); ++i) {
    if (grid->node_class(i) == NodeClass::exterior) continue;
    const double d = 1.0 - grid->norm(i);
    out[i] = params.boundary_sup + params.M * (1.0 - 1.0 / (1.0 + d));
  }
  return out;
}

double barrier_scale(const BarrierParams& params, double f_sup) {
  const double analytic = std::pow(params.M, params.p - 1.0) * std::pow(2.0, -2.0 * params.p) *
                          std::pow(static_cast<double>(params.dimension), 1.0 - params.p / 2.0);
  return (params.p - 1.0) * std::max(f_sup, analytic);
}

double supersolution_tolerance(const Grid& grid, const BarrierParams& params, double f_sup) {
  return 10.0 * std::sqrt(grid.h()) * barrier_scale(params, f_sup);
}

double verify_supersolution(const GridPtr& grid, const BarrierParams& params, double f_sup,
                            double exclusion_radius) {
  require_exponent(params.p);
  if (params.dimension != grid->dimension()) throw PreconditionError("barrier dimension does not match grid");
  if (exclusion_radius < 2.0 * grid->h() * (1.0 - 1e-12)) {
    throw PreconditionError("exclusion radius must be at least 2h: the barrier is not C^2 at the origin");
  }
  const ScalarField b = barrier_field(grid, params);
  const ScalarField lb = apply_nondivergence(b, params.p);
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < grid->size(); ++i) {
    if (grid->node_class(i) != NodeClass::interior) continue;
    if (grid->norm(i) < exclusion_radius * (1.0 - 1e-12)) continue;
    worst = std::max(worst, lb[i] + (params.p - 1.0) * f_sup);
  }
  return worst;
}

LinfBound linf_bound_check(const ScalarField& u, const ScalarField& f, double boundary_sup, double p,
                           double slack) {
  LinfBound out;
  const double f_sup = f.sup_norm(false);
  out.bound = boundary_sup + min_barrier_M(p, u.grid().dimension(), f_sup) / 2.0;
  out.u_sup = u.sup_norm();
  out.satisfied = out.u_sup <= out.bound + slack;
  return out;
}

double stencil_diameter(const Grid& grid) {
  return static_cast<double>(grid.dimension()) * static_cast<double>(grid.n() - 1);
}

ComparisonOutcome comparison_check(const ScalarField& u, const ScalarField& v, double p, double tol) {
  if (u.grid().spec() != v.grid().spec()) throw PreconditionError("comparison fields live on different grids");
  const Grid& grid = u.grid();
  const ScalarField lu = apply_divergence(u, p);
  const ScalarField lv = apply_divergence(v, p);

  ComparisonOutcome out;
  out.operator_gap = -std::numeric_limits<double>::infinity();
  out.boundary_gap = -std::numeric_limits<double>::infinity();
  out.interior_gap = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    switch (grid.node_class(i)) {
      case NodeClass::interior:
        out.operator_gap = std::max(out.operator_gap, lv[i] - lu[i]);
        out.interior_gap = std::max(out.interior_gap, u[i] - v[i]);
        break;
      case NodeClass::boundary:
        out.boundary_gap = std::max(out.boundary_gap, u[i] - v[i]);
        break;
      case NodeClass::exterior:
        break;
    }
  }
  out.conclusion_tol = tol * stencil_diameter(grid);
  out.premise_holds = out.operator_gap <= tol && out.boundary_gap <= tol;
  out.conclusion_holds = out.interior_gap <= out.conclusion_tol;
  return out;
}

}  // namespace pseudoplap
