#include "pseudoplap/operator.hpp"

#include <cmath>

#include "pseudoplap/error.hpp"

namespace pseudoplap {

std::string to_string(OperatorForm form) {
  return form == OperatorForm::divergence ? "divergence" : "nondivergence";
}

void require_exponent(double p) {
  if (!(p > 2.0) || !std::isfinite(p)) {
    throw PreconditionError("exponent p must be finite and > 2 (got " + std::to_string(p) + ")");
  }
}

double phi(double t, double p) {
  if (p == 3.0) return std::abs(t) * t;
  if (p == 4.0) return t * t * t;
  if (t == 0.0) return 0.0;
  return std::copysign(std::pow(std::abs(t), p - 1.0), t);
}

double abs_pow(double t, double p) {
  const double a = std::abs(t);
  if (p == 3.0) return a * a * a;
  if (p == 4.0) return (a * a) * (a * a);
  if (a == 0.0) return 0.0;
  return std::pow(a, p);
}

namespace {

double abs_pow_m2(double t, double p) {
  if (p == 3.0) return std::abs(t);
  if (p == 4.0) return t * t;
  if (t == 0.0) return 0.0;
  return std::pow(std::abs(t), p - 2.0);
}

// Fetches stencil values, rejecting the unset marker.
struct Stencil {
  const ScalarField& u;
  const Grid& grid;

  double at(std::size_t node, std::size_t center) const {
    const double v = u[node];
    if (v != v) {
      throw StencilError("stencil of " + grid.describe(center) + " touches unset " + grid.describe(node));
    }
    return v;
  }
};

template <class Kernel>
ScalarField apply_interior(const ScalarField& u, Kernel&& kernel) {
  const Grid& grid = u.grid();
  ScalarField out(u.grid_ptr());
  const Stencil s{u, grid};
  const int dim = grid.dimension();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid.node_class(i) != NodeClass::interior) continue;
    const double c = s.at(i, i);
    double acc = 0.0;
    for (int a = 0; a < dim; ++a) {
      const std::size_t st = grid.stride(a);
      acc += kernel(s.at(i - st, i), c, s.at(i + st, i));
    }
    out[i] = acc;
  }
  return out;
}

}  // namespace

ScalarField apply_divergence(const ScalarField& u, double p) {
  require_exponent(p);
  const double h = u.grid().h();
  return apply_interior(u, [p, h](double lo, double c, double hi) {
    return (phi((hi - c) / h, p) - phi((c - lo) / h, p)) / h;
  });
}

ScalarField apply_nondivergence(const ScalarField& u, double p) {
  require_exponent(p);
  const double h = u.grid().h();
  const double h2 = h * h;
  return apply_interior(u, [p, h, h2](double lo, double c, double hi) {
    const double first = (hi - lo) / (2.0 * h);
    if (first == 0.0) return 0.0;
    return (p - 1.0) * abs_pow_m2(first, p) * ((hi - 2.0 * c + lo) / h2);
  });
}

ScalarField apply(const ScalarField& u, double p, OperatorForm form) {
  return form == OperatorForm::divergence ? apply_divergence(u, p) : apply_nondivergence(u, p);
}

double consistency_residual(const ScalarField& u, const ScalarField& f, double p, OperatorForm form) {
  const ScalarField lu = apply(u, p, form);
  const Grid& grid = u.grid();
  double worst = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid.node_class(i) != NodeClass::interior) continue;
    if (!f.is_set(i)) throw StencilError("right-hand side unset at " + grid.describe(i));
    worst = std::max(worst, std::abs(lu[i] - (p - 1.0) * f[i]));
  }
  return worst;
}

namespace {

ScalarField scaled(const ScalarField& u, double lambda) {
  ScalarField out = u;
  for (double& v : out.values()) v *= lambda;  // NaN stays NaN
  return out;
}

}  // namespace

double homogeneity_check(const ScalarField& u, double p, double lambda, OperatorForm form) {
  if (!(lambda > 0.0)) throw PreconditionError("homogeneity scale must be > 0");
  const ScalarField a = apply(scaled(u, lambda), p, form);
  const ScalarField b = apply(u, p, form);
  const double factor = std::pow(lambda, p - 1.0);
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a.is_set(i)) worst = std::max(worst, std::abs(a[i] - factor * b[i]));
  }
  return worst;
}

double homogeneity_tolerance(const ScalarField& u, double p, double lambda, OperatorForm form) {
  const double norm = apply(u, p, form).sup_norm();
  return 1e-10 * std::max(1.0, std::pow(lambda, p - 1.0) * norm);
}

}  // namespace pseudoplap
