#include "pseudoplap/solver.hpp"

#include <chrono>
#include <cmath>
#include <numeric>

#include "pseudoplap/error.hpp"
#include "pseudoplap/operator.hpp"

namespace pseudoplap {

std::string to_string(DescentDirection d) {
  return d == DescentDirection::steepest ? "steepest" : "polak_ribiere";
}

EnergyProblem::EnergyProblem(GridPtr g, double exponent, ScalarField rhs, BoundaryFunction boundary)
    : grid(std::move(g)), p(exponent), f(std::move(rhs)), boundary_data(std::move(boundary)) {}

void EnergyProblem::validate() const {
  require_exponent(p);
  if (!grid) throw PreconditionError("problem has no grid");
  if (f.grid().spec() != grid->spec()) throw PreconditionError("right-hand side lives on a different grid");
  if (!boundary_data) throw PreconditionError("problem has no boundary data");
  for (std::size_t i = 0; i < grid->size(); ++i) {
    if (grid->node_class(i) != NodeClass::interior) continue;
    if (!std::isfinite(f[i])) throw PreconditionError("right-hand side not finite at " + grid->describe(i));
  }
}

void SolveConfig::validate() const {
  if (!(grad_tol > 0.0)) throw PreconditionError("grad_tol must be > 0");
  if (max_iters < 1) throw PreconditionError("max_iters must be >= 1");
  if (!(armijo_c > 0.0 && armijo_c < 1.0)) throw PreconditionError("armijo_c must lie in (0,1)");
  if (!(backtrack_factor > 0.0 && backtrack_factor < 1.0)) {
    throw PreconditionError("backtrack_factor must lie in (0,1)");
  }
  if (initial_guess == InitialGuess::user_field && !user_guess) {
    throw PreconditionError("initial_guess = user_field but no field supplied");
  }
}

namespace {

// |a + d|^p - |a|^p without cancellation when |d| << |a|.
double pow_difference(double a, double d, double p) {
  if (d == 0.0) return 0.0;
  if (a == 0.0) return abs_pow(d, p);
  const double z = d / a;
  if (std::abs(z) > 0.5) return abs_pow(a + d, p) - abs_pow(a, p);
  if (p == 4.0) return d * (4.0 * a * a * a + d * (6.0 * a * a + d * (4.0 * a + d)));
  if (p == 3.0) {
    const double s = a > 0.0 ? 1.0 : -1.0;  // a + d keeps the sign of a here
    return s * d * (3.0 * a * a + d * (3.0 * a + d));
  }
  return abs_pow(a, p) * std::expm1(p * std::log1p(z));
}

double abs_pow_m2(double t, double p) {
  if (p == 3.0) return std::abs(t);
  if (p == 4.0) return t * t;
  if (t == 0.0) return 0.0;
  return std::pow(std::abs(t), p - 2.0);
}

struct Link {
  std::size_t lo;
  std::size_t hi;
};

// Precomputed link structure of the discrete energy.
class EnergyModel {
 public:
  explicit EnergyModel(const EnergyProblem& prob)
      : grid_(*prob.grid), p_(prob.p), h_(grid_.h()), cell_(std::pow(h_, grid_.dimension())), f_(prob.f) {
    const int dim = grid_.dimension();
    for (std::size_t i = 0; i < grid_.size(); ++i) {
      const NodeClass c = grid_.node_class(i);
      if (c == NodeClass::exterior) continue;
      if (c == NodeClass::interior) interior_.push_back(i);
      const MultiIndex k = grid_.multi_index(i);
      for (int a = 0; a < dim; ++a) {
        if (k[a] + 1 >= grid_.n()) continue;
        const std::size_t j = i + grid_.stride(a);
        if (grid_.node_class(j) != NodeClass::exterior) links_.push_back({i, j});
      }
    }
  }

  const std::vector<std::size_t>& interior() const { return interior_; }
  double cell() const { return cell_; }

  void check_set(const std::vector<double>& u) const {
    for (const Link& l : links_) {
      for (std::size_t n : {l.lo, l.hi}) {
        if (u[n] != u[n]) throw StencilError("energy stencil touches unset " + grid_.describe(n));
      }
    }
  }

  double energy(const std::vector<double>& u) const {
    double links = 0.0;
    for (const Link& l : links_) links += abs_pow((u[l.hi] - u[l.lo]) / h_, p_);
    double source = 0.0;
    for (std::size_t i : interior_) source += f_[i] * u[i];
    return (links / p_ + (p_ - 1.0) * source) * cell_;
  }

  // r = -div(u) + (p-1) f on interior nodes (gradient per unit volume), 0 elsewhere.
  void residual(const std::vector<double>& u, std::vector<double>& r) const {
    std::fill(r.begin(), r.end(), 0.0);
    for (const Link& l : links_) {
      const double flux = phi((u[l.hi] - u[l.lo]) / h_, p_) / h_;
      r[l.lo] -= flux;
      r[l.hi] += flux;
    }
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (grid_.node_class(i) != NodeClass::interior) r[i] = 0.0;
    }
    for (std::size_t i : interior_) r[i] += (p_ - 1.0) * f_[i];
  }

  // J(u + t d) - J(u), evaluated link by link.
  double energy_change(const std::vector<double>& u, const std::vector<double>& d, double t) const {
    double links = 0.0;
    for (const Link& l : links_) {
      const double grad = (u[l.hi] - u[l.lo]) / h_;
      const double step = t * (d[l.hi] - d[l.lo]) / h_;
      links += pow_difference(grad, step, p_);
    }
    double source = 0.0;
    for (std::size_t i : interior_) source += f_[i] * d[i];
    return (links / p_ + (p_ - 1.0) * t * source) * cell_;
  }

  // d^T (Hessian of J) d.
  double curvature(const std::vector<double>& u, const std::vector<double>& d) const {
    double acc = 0.0;
    for (const Link& l : links_) {
      const double grad = (u[l.hi] - u[l.lo]) / h_;
      const double dd = (d[l.hi] - d[l.lo]) / h_;
      acc += abs_pow_m2(grad, p_) * dd * dd;
    }
    return (p_ - 1.0) * acc * cell_;
  }

  // max(1, max_links p |D u|^(p-2) / h^2).
  double lipschitz_estimate(const std::vector<double>& u) const {
    double m = 0.0;
    for (const Link& l : links_) m = std::max(m, abs_pow_m2((u[l.hi] - u[l.lo]) / h_, p_));
    return std::max(1.0, p_ * m / (h_ * h_));
  }

  double sup_interior(const std::vector<double>& r) const {
    double m = 0.0;
    for (std::size_t i : interior_) m = std::max(m, std::abs(r[i]));
    return m;
  }

  double dot_interior(const std::vector<double>& a, const std::vector<double>& b) const {
    double s = 0.0;
    for (std::size_t i : interior_) s += a[i] * b[i];
    return s;
  }

 private:
  const Grid& grid_;
  double p_;
  double h_;
  double cell_;
  const ScalarField& f_;
  std::vector<std::size_t> interior_;
  std::vector<Link> links_;
};

}  // namespace

double energy(const ScalarField& u, const EnergyProblem& prob) {
  prob.validate();
  const EnergyModel model(prob);
  std::vector<double> v(u.values().begin(), u.values().end());
  model.check_set(v);
  return model.energy(v);
}

ScalarField energy_gradient(const ScalarField& u, const EnergyProblem& prob) {
  prob.validate();
  const EnergyModel model(prob);
  std::vector<double> v(u.values().begin(), u.values().end());
  model.check_set(v);
  std::vector<double> r(v.size());
  model.residual(v, r);
  ScalarField out(prob.grid);
  for (std::size_t i : model.interior()) out[i] = r[i] * model.cell();
  return out;
}

ScalarField boundary_extension(const EnergyProblem& prob, double fill) {
  ScalarField u(prob.grid);
  for (std::size_t i = 0; i < prob.grid->size(); ++i) {
    switch (prob.grid->node_class(i)) {
      case NodeClass::boundary: {
        const double v = prob.boundary_data(prob.grid->position(i));
        if (!std::isfinite(v)) {
          throw PreconditionError("boundary data not finite at " + prob.grid->describe(i));
        }
        u[i] = v;
        break;
      }
      case NodeClass::interior:
        u[i] = fill;
        break;
      case NodeClass::exterior:
        break;
    }
  }
  return u;
}

SolveResult solve_dirichlet(const EnergyProblem& prob, const SolveConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  prob.validate();
  cfg.validate();
  const EnergyModel model(prob);
  const Grid& grid = *prob.grid;

  // Initial guess.
  ScalarField start = boundary_extension(prob, 0.0);
  double mean = 0.0;
  std::size_t nb = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid.node_class(i) == NodeClass::boundary) {
      mean += start[i];
      ++nb;
    }
  }
  mean = nb ? mean / static_cast<double>(nb) : 0.0;
  for (std::size_t i : model.interior()) {
    if (cfg.initial_guess == InitialGuess::user_field) {
      const ScalarField& g = *cfg.user_guess;
      if (g.grid().spec() != grid.spec()) throw PreconditionError("initial guess lives on a different grid");
      if (!std::isfinite(g[i])) throw PreconditionError("initial guess not finite at " + grid.describe(i));
      start[i] = g[i];
    } else {
      start[i] = mean;
    }
  }

  std::vector<double> u(start.values().begin(), start.values().end());
  model.check_set(u);
  const std::size_t size = u.size();
  std::vector<double> r(size), r_new(size), d(size, 0.0);

  SolveReport report;
  double current = model.energy(u);
  if (cfg.record_energy) report.energy_trace.push_back(current);

  model.residual(u, r);
  double sup = model.sup_interior(r);
  const double cell = model.cell();
  const bool conjugate = cfg.direction == DescentDirection::polak_ribiere;

  for (std::size_t i : model.interior()) d[i] = -r[i];

  long it = 0;
  while (sup > cfg.grad_tol && it < cfg.max_iters) {
    double slope = cell * model.dot_interior(r, d);
    if (!(slope < 0.0)) {
      for (std::size_t i : model.interior()) d[i] = -r[i];
      slope = cell * model.dot_interior(r, d);
    }

    bool restarted = false;
    bool accepted = false;
    double t = 0.0;
    double change = 0.0;
    for (;;) {
      if (conjugate) {
        const double curv = model.curvature(u, d);
        t = (curv > 0.0 && std::isfinite(curv)) ? -slope / curv : 1.0 / model.lipschitz_estimate(u);
      } else {
        t = 1.0 / model.lipschitz_estimate(u);
      }
      for (int k = 0; k < 100; ++k) {
        change = model.energy_change(u, d, t);
        if (std::isnan(change)) throw NumericalError("NaN energy during line search at iteration " + std::to_string(it));
        if (change <= cfg.armijo_c * t * slope) {
          accepted = true;
          break;
        }
        t *= cfg.backtrack_factor;
      }
      if (accepted || !conjugate || restarted) break;
      // Conjugate direction failed; retry once along steepest descent.
      for (std::size_t i : model.interior()) d[i] = -r[i];
      slope = cell * model.dot_interior(r, d);
      restarted = true;
    }
    if (!accepted) break;

    for (std::size_t i : model.interior()) u[i] += t * d[i];
    current += change;
    if (cfg.record_energy) report.energy_trace.push_back(current);
    ++it;

    model.residual(u, r_new);
    sup = model.sup_interior(r_new);

    double beta = 0.0;
    if (conjugate) {
      const double denom = model.dot_interior(r, r);
      double num = 0.0;
      for (std::size_t i : model.interior()) num += r_new[i] * (r_new[i] - r[i]);
      beta = denom > 0.0 ? std::max(0.0, num / denom) : 0.0;
    }
    for (std::size_t i : model.interior()) d[i] = -r_new[i] + beta * d[i];
    r.swap(r_new);
  }

  ScalarField out(prob.grid, std::move(u));
  report.converged = sup <= cfg.grad_tol;
  report.iterations = it;
  report.final_grad_sup = sup;
  report.final_energy = model.energy(std::vector<double>(out.values().begin(), out.values().end()));
  report.divergence_residual = consistency_residual(out, prob.f, prob.p, OperatorForm::divergence);
  report.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {std::move(out), std::move(report)};
}

ScalarField mollify_rhs(const ScalarField& f, double radius) {
  const Grid& grid = f.grid();
  const double h = grid.h();
  if (!(radius >= h * (1.0 - 1e-12))) {
    throw PreconditionError("mollifier radius must be at least the grid spacing");
  }
  const int reach = static_cast<int>(std::floor(radius / h + 1e-9));
  const double r2 = (radius / h) * (radius / h) + 1e-9;
  const int dim = grid.dimension();
  ScalarField out(f.grid_ptr());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid.node_class(i) != NodeClass::interior) continue;
    const MultiIndex k = grid.multi_index(i);
    double sum = 0.0;
    std::size_t count = 0;
    MultiIndex off{0, 0, 0};
    const int lo1 = dim > 1 ? -reach : 0, lo2 = dim > 2 ? -reach : 0;
    for (off[0] = -reach; off[0] <= reach; ++off[0]) {
      for (off[1] = lo1; off[1] <= -lo1; ++off[1]) {
        for (off[2] = lo2; off[2] <= -lo2; ++off[2]) {
          const double d2 = static_cast<double>(off[0] * off[0] + off[1] * off[1] + off[2] * off[2]);
          if (d2 > r2) continue;
          MultiIndex q = k;
          bool inside = true;
          for (int a = 0; a < dim; ++a) {
            q[a] += off[a];
            inside = inside && q[a] >= 0 && q[a] < grid.n();
          }
          if (!inside) continue;
          const std::size_t j = grid.index(q);
          if (grid.node_class(j) != NodeClass::interior) continue;
          sum += f[j];
          ++count;
        }
      }
    }
    out[i] = sum / static_cast<double>(count);
  }
  return out;
}

}  // namespace pseudoplap
