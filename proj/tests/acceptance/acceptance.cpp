// Acceptance suite: one PASS/FAIL line per criterion.
//   acceptance            run every criterion
//   acceptance <name>...  run the named criteria only
// Exit status is 0 only when every criterion that ran passed.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "pseudoplap/barrier.hpp"
#include "pseudoplap/config.hpp"
#include "pseudoplap/harness.hpp"
#include "pseudoplap/operator.hpp"
#include "pseudoplap/presets.hpp"
#include "pseudoplap/random.hpp"
#include "pseudoplap/solver.hpp"
#include "pseudoplap/sweeps.hpp"

using namespace pseudoplap;
namespace fs = std::filesystem;

namespace {

struct Verdict {
  bool passed = false;
  std::string detail;
};

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

// Closed form for N = 1, p = 3, f = 1 with zero boundary data.
double u_closed_form(double x) { return 2.0 * std::sqrt(2.0) / 3.0 * (std::pow(std::abs(x), 1.5) - 1.0); }

// Every ball solve in this process; the barrier criterion checks the L-inf bound on all of them.
struct SolveLedger {
  long solves = 0;
  long checked = 0;
  long violations = 0;
  std::string worst;

  void record(const SolveResult& res, const EnergyProblem& prob) {
    ++solves;
    if (!res.report.converged || prob.grid->spec().shape != DomainShape::ball) return;
    double bsup = 0.0;
    for (std::size_t i = 0; i < prob.grid->size(); ++i) {
      if (prob.grid->node_class(i) == NodeClass::boundary) bsup = std::max(bsup, std::abs(res.u[i]));
    }
    const LinfBound lb = linf_bound_check(res.u, prob.f, bsup, prob.p);
    ++checked;
    if (!lb.satisfied) {
      ++violations;
      worst = "|u| " + num(lb.u_sup) + " > bound " + num(lb.bound);
    }
  }
} ledger;

SolveResult solve(const EnergyProblem& prob, const SolveConfig& cfg = {}) {
  SolveResult res = solve_dirichlet(prob, cfg);
  ledger.record(res, prob);
  return res;
}

ScalarField constant(const GridPtr& g, double c) {
  return ScalarField::from_function(g, [c](const Point&) { return c; });
}

double max_error(const ScalarField& u, const std::function<double(const Point&)>& exact) {
  double err = 0.0;
  const Grid& g = u.grid();
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g.node_class(i) == NodeClass::exterior) continue;
    err = std::max(err, std::abs(u[i] - exact(g.position(i))));
  }
  return err;
}

// ------------------------------------------------------------------ criteria

Verdict oracle_1d() {
  const auto g = make_grid({1, 257, DomainShape::ball});
  const EnergyProblem prob(g, 3.0, constant(g, 1.0), [](const Point&) { return 0.0; });
  const SolveResult res = solve(prob);
  const double err = max_error(res.u, [](const Point& x) { return u_closed_form(x[0]); });
  const double h = g->h();
  return {res.report.converged && err <= 5.0 * h,
          "max error " + num(err) + " <= 5h = " + num(5.0 * h) + ", " + std::to_string(res.report.iterations) +
              " iterations"};
}

Verdict manufactured_2d() {
  // u = w(x) + w(y) with its own trace as Dirichlet data; f = 2
  auto exact = [](const Point& x) { return u_closed_form(x[0]) + u_closed_form(x[1]); };
  double err[2];
  bool converged = true;
  const int ns[2] = {33, 65};
  for (int k = 0; k < 2; ++k) {
    const auto g = make_grid({2, ns[k], DomainShape::cube});
    const SolveResult res = solve(EnergyProblem(g, 3.0, constant(g, 2.0), exact));
    converged = converged && res.report.converged;
    err[k] = max_error(res.u, exact);
  }
  const double ratio = err[0] / err[1];
  return {converged && ratio >= 1.4,
          "errors " + num(err[0]) + " (n=33), " + num(err[1]) + " (n=65), ratio " + num(ratio) + " >= 1.4"};
}

Verdict homogeneity() {
  Rng rng = make_rng(20240601, 0);
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    const int N = 1 + k % 3;
    const int n = N == 3 ? 13 : 33;
    const double p = uniform(rng, 2.05, 8.0);
    const double lambda = log_uniform(rng, 0.1, 10.0);
    const auto g = make_grid({N, n, k % 2 ? DomainShape::cube : DomainShape::ball});
    const ScalarField u = ScalarField::from_function(g, [&](const Point&) { return normal(rng); });
    ScalarField lu = u;
    for (double& v : lu.values()) v *= lambda;
    for (auto form : {OperatorForm::divergence, OperatorForm::nondivergence}) {
      const ScalarField a = apply(lu, p, form);
      const ScalarField b = apply(u, p, form);
      const double s = std::pow(lambda, p - 1.0);
      double diff = 0.0, ref = 0.0;
      for (std::size_t i = 0; i < g->size(); ++i) {
        if (g->node_class(i) != NodeClass::interior) continue;
        diff = std::max(diff, std::abs(a[i] - s * b[i]));
        ref = std::max(ref, std::abs(s * b[i]));
      }
      worst = std::max(worst, diff / ref);
    }
  }
  return {worst <= 1e-10, "40 checks (20 cases x 2 forms), worst relative defect " + num(worst) + " <= 1e-10"};
}

Verdict barrier() {
  const auto rows = barrier_sweep(129);
  long bad = 0;
  double worst = -INFINITY;
  for (const auto& r : rows) {
    bad += !r.holds;
    worst = std::max(worst, r.violation / r.tolerance);
  }
  if (ledger.checked == 0) {
    // standalone run: exercise the bound on a spread of ball problems
    for (double p : {2.5, 3.0, 4.0, 6.0}) {
      for (int N = 1; N <= 3; ++N) {
        const auto g = make_grid({N, N == 3 ? 17 : 33, DomainShape::ball});
        const RhsPreset rp{RhsKind::gaussian, 3.0, 0.3, 4, 11, static_cast<std::uint64_t>(N)};
        solve(EnergyProblem(g, p, make_rhs(g, rp), make_boundary({BoundaryKind::trig, 0.5}, N, p)));
      }
    }
  }
  const bool ok = bad == 0 && ledger.violations == 0 && ledger.checked > 0;
  return {ok, std::to_string(bad) + " of " + std::to_string(rows.size()) +
                  " (p,N) barrier cases above tolerance (worst violation/tolerance " + num(worst) + "); L-inf bound " +
                  std::to_string(ledger.checked - ledger.violations) + "/" + std::to_string(ledger.checked) +
                  " converged ball solves" + (ledger.violations ? " (" + ledger.worst + ")" : "")};
}

Verdict comparison() {
  long premise = 0, counterexamples = 0;
  double worst_gap = -INFINITY;
  SolveConfig sc;
  sc.grad_tol = 1e-10;
  sc.max_iters = 100000;
  for (int k = 0; k < 50; ++k) {
    Rng rng = make_rng(777, static_cast<std::uint64_t>(k));
    const double p = uniform(rng, 2.5, 5.0);
    const auto g = make_grid({2, 65, DomainShape::ball});
    const ScalarField f2 =
        make_rhs(g, {RhsKind::random_smooth, uniform(rng, -2.0, 2.0), 0.25, 4, 777, static_cast<std::uint64_t>(k)});
    const ScalarField bump = make_rhs(
        g, {RhsKind::gaussian, uniform(rng, 0.1, 3.0), uniform(rng, 0.1, 0.5), 4, 778, static_cast<std::uint64_t>(k)});
    ScalarField f1 = f2;
    for (std::size_t i = 0; i < f1.size(); ++i) {
      if (f1.is_set(i)) f1[i] += bump[i];
    }
    const BoundaryFunction bc = make_boundary({BoundaryKind::affine, uniform(rng, -1.0, 1.0), uniform(rng, 0.0, 2.0),
                                               779, static_cast<std::uint64_t>(k)},
                                              2, p);
    const SolveResult u = solve(EnergyProblem(g, p, f1, bc), sc);
    const SolveResult v = solve(EnergyProblem(g, p, f2, bc), sc);
    // f1 >= f2 gives apply(u) >= apply(v) up to the two solve residuals
    const double tol = u.report.divergence_residual + v.report.divergence_residual + 1e-12;
    const ComparisonOutcome out = comparison_check(u.u, v.u, p, tol);
    premise += out.premise_holds;
    counterexamples += out.premise_holds && !out.conclusion_holds;
    worst_gap = std::max(worst_gap, out.interior_gap);
  }
  return {premise == 50 && counterexamples == 0,
          std::to_string(premise) + "/50 premises hold, " + std::to_string(counterexamples) +
              " counterexamples, max interior u1-u2 " + num(worst_gap)};
}

Verdict prop4() {
  const auto rows = prop4_sweep(31, 1000);
  const auto s = summarize(rows);
  long large_without_eq = 0;
  for (const auto& r : rows) large_without_eq += r.branch == Prop4Branch::large_p && !r.eqNepsilon;
  return {s.passed() && s.worst_relative_slack >= -1e-9 && large_without_eq == 0,
          std::to_string(s.violations) + " violations in " + std::to_string(s.samples) +
              " samples, worst relative slack " + num(s.worst_relative_slack) + " >= -1e-9"};
}

Verdict prop5() {
  const auto rows = prop5_sweep(32, 500);
  const auto s = summarize(rows);
  long regimes[4] = {};
  for (const auto& r : rows) ++regimes[static_cast<int>(r.regime)];
  const bool all = std::all_of(std::begin(regimes), std::end(regimes), [](long c) { return c > 0; });
  return {s.passed() && all, std::to_string(s.violations) + " violations in " + std::to_string(s.samples) +
                                 " feasible pairs over 4 regimes"};
}

Verdict zt() {
  const auto rows = zt_sweep(33, 10000);
  const auto s = summarize(rows);
  return {s.passed() && s.worst_relative_slack >= -1e-12,
          std::to_string(s.violations) + " violations in " + std::to_string(s.samples) +
              " samples, worst relative slack " + num(s.worst_relative_slack) + " >= -1e-12"};
}

Verdict claims() {
  const auto rows = claims_sweep(34);
  std::string detail;
  bool ok = true;
  for (const auto& s : summarize_claims(rows)) {
    ok = ok && s.passed();
    detail += to_string(s.regime) + (s.passed() ? " ok" : " FAILED") + " (r1 shrink " + num(s.ratio1_shrink) +
              ", r2 " + num(s.ratio2_growth) + ", r3 " + num(s.ratio3_growth) + "); ";
  }
  const auto ord = ordering_sweep();
  const long bad = std::count_if(ord.begin(), ord.end(), [](const OrderingRow& r) { return !r.holds; });
  return {ok && bad == 0 && !ord.empty(),
          detail + std::to_string(bad) + "/" + std::to_string(ord.size()) + " exponent orderings violated"};
}

RunConfig regularity_config(std::uint64_t seed, const fs::path& out) {
  std::istringstream is(
      "[problem]\np = 3\ndimension = 2\nn = 65\nshape = ball\n"
      "[solver]\ngrad_tol = 1e-10\nmax_iters = 50000\n"
      "[regularity]\nr = 0.5\nfamily = true\nlambdas = 0.1, 10\nscaling_tol = 1e-6\n");
  RunConfig cfg = make_run_config(IniDocument::parse(is, "acceptance"), Subcommand::measure_regularity);
  cfg.set_seed(seed);
  cfg.out = out;
  cfg.plots = false;
  return cfg;
}

// Reads one named column from the single data row of a summary CSV.
double summary_value(const fs::path& path, const std::string& column) {
  std::ifstream is(path);
  std::string line, header, row;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (header.empty()) {
      header = line;
    } else {
      row = line;
      break;
    }
  }
  std::vector<std::string> h, r;
  std::string cell;
  for (std::istringstream hs(header); std::getline(hs, cell, ',');) h.push_back(cell);
  for (std::istringstream rs(row); std::getline(rs, cell, ',');) r.push_back(cell);
  for (std::size_t i = 0; i < h.size() && i < r.size(); ++i) {
    if (h[i] == column) return std::stod(r[i]);
  }
  throw std::runtime_error("column " + column + " missing from " + path.string());
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("pseudoplap_acceptance_" + name);
  fs::remove_all(dir);
  return dir;
}

Verdict regularity() {
  const fs::path dir = scratch("regularity");
  std::ostringstream log;
  double C[2];
  bool checks = true;
  double scaling = 0.0;
  const std::uint64_t seeds[2] = {7, 8};
  for (int k = 0; k < 2; ++k) {
    const RunConfig cfg = regularity_config(seeds[k], dir / std::to_string(k));
    const RunOutcome outcome = run(cfg, log);
    checks = checks && outcome.passed();
    C[k] = summary_value(cfg.out / "regularity_summary.csv", "empirical_C");
    scaling = std::max(scaling, summary_value(cfg.out / "regularity_summary.csv", "worst_scaling_difference"));
  }
  const double drift = std::abs(C[1] - C[0]) / C[0];
  return {checks && std::isfinite(C[0]) && C[0] > 0.0 && drift < 0.01 && scaling <= 1e-6,
          "C = " + num(C[0]) + " (seed 7), " + num(C[1]) + " (seed 8), drift " + num(100.0 * drift) +
              "% < 1%; scaling defect " + num(scaling) + " <= 1e-6" + (checks ? "" : "; run checks FAILED")};
}

std::string slurp(const fs::path& path) {
  std::ifstream is(path, std::ios::binary);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

Verdict determinism() {
  const fs::path dir = scratch("determinism");
  const fs::path configs = fs::path(PSEUDOPLAP_SOURCE_DIR) / "tools" / "configs";
  const std::pair<Subcommand, const char*> runs[] = {{Subcommand::solve, "solve.ini"},
                                                     {Subcommand::verify_lemmas, "verify_lemmas.ini"},
                                                     {Subcommand::measure_regularity, "measure_regularity.ini"},
                                                     {Subcommand::convergence_study, "convergence_study.ini"}};
  long files = 0, differ = 0;
  std::string which;
  for (const auto& [cmd, file] : runs) {
    RunConfig cfg = make_run_config(IniDocument::load(configs / file), cmd);
    std::vector<fs::path> outs;
    for (const char* threads : {"1", "3"}) {
      setenv("PSEUDOPLAP_THREADS", threads, 1);
      cfg.out = dir / (to_string(cmd) + "_" + threads);
      std::ostringstream log;
      run(cfg, log);
      outs.push_back(cfg.out);
    }
    unsetenv("PSEUDOPLAP_THREADS");
    for (const auto& e : fs::directory_iterator(outs[0])) {
      if (e.path().extension() != ".csv") continue;
      ++files;
      if (slurp(e.path()) != slurp(outs[1] / e.path().filename())) {
        ++differ;
        which += " " + to_string(cmd) + "/" + e.path().filename().string();
      }
    }
  }
  return {files > 0 && differ == 0, std::to_string(files) + " CSVs from 4 subcommands compared across reruns (1 and 3 "
                                    "workers), " + std::to_string(differ) + " differ" + which};
}

struct Criterion {
  const char* name;
  double budget_s;
  Verdict (*fn)();
};

// barrier runs after the solving criteria so its L-inf check covers their solves
const Criterion kCriteria[] = {
    {"oracle_1d", 60, oracle_1d},   {"manufactured_2d", 300, manufactured_2d}, {"homogeneity", 10, homogeneity},
    {"comparison", 600, comparison}, {"barrier", 120, barrier},                {"prop4", 30, prop4},
    {"prop5", 60, prop5},           {"zt", 5, zt},                             {"claims", 30, claims},
    {"regularity", 900, regularity}, {"determinism", 600, determinism},
};

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> wanted(argv + 1, argv + argc);
  for (const auto& w : wanted) {
    if (std::none_of(std::begin(kCriteria), std::end(kCriteria), [&](const Criterion& c) { return w == c.name; })) {
      std::cerr << "unknown criterion: " << w << '\n';
      return 2;
    }
  }
  int failed = 0;
  for (const auto& c : kCriteria) {
    if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), c.name) == wanted.end()) continue;
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.fn();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool ok = v.passed && secs < c.budget_s;
    failed += !ok;
    std::cout << (ok ? "PASS " : "FAIL ") << c.name << ": " << v.detail << " [" << num(secs) << " s, budget "
              << num(c.budget_s) << " s]" << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
