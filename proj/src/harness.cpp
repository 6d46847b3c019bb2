#include "pseudoplap/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "pseudoplap/barrier.hpp"
#include "pseudoplap/error.hpp"
#include "pseudoplap/field_io.hpp"
#include "pseudoplap/parallel.hpp"
#include "pseudoplap/regularity.hpp"
#include "pseudoplap/sweeps.hpp"

namespace pseudoplap {

bool RunOutcome::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

std::string provenance_line(const RunConfig& cfg) {
  return std::string("pseudoplap ") + PSEUDOPLAP_VERSION + " config=" + cfg.hash();
}

namespace {

std::string fr(double v) { return format_real(v); }

std::string fixed(double v, int digits = 2) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string sci(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

class Artifacts {
 public:
  Artifacts(const RunConfig& cfg, RunOutcome& outcome) : cfg_(cfg), outcome_(outcome) {
    std::filesystem::create_directories(cfg.out);
  }

  // Opens cfg.out/name for writing; the caller fills it.
  std::ofstream open(const std::string& name) {
    const auto path = cfg_.out / name;
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write " + path.string());
    outcome_.artifacts.push_back(path);
    return os;
  }

  template <class Rows>
  void csv(const std::string& name, const Rows& rows) {
    auto os = open(name);
    write_csv(os, rows, provenance_line(cfg_));
  }

  void svg(const std::string& name, const std::string& text) {
    if (!cfg_.plots) return;
    auto os = open(name);
    os << text;
  }

 private:
  const RunConfig& cfg_;
  RunOutcome& outcome_;
};

void check(RunOutcome& outcome, std::ostream& log, std::string name, bool passed, std::string detail) {
  log << (passed ? "PASS " : "FAIL ") << name << ": " << detail << '\n';
  outcome.checks.push_back({std::move(name), passed, std::move(detail)});
}

double boundary_sup(const Grid& grid, const BoundaryFunction& bc) {
  double s = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid.node_class(i) == NodeClass::boundary) s = std::max(s, std::abs(bc(grid.position(i))));
  }
  return s;
}

SolveConfig scaled_solver(const SolveConfig& base, double factor) {
  SolveConfig s = base;
  s.grad_tol *= factor;
  return s;
}

// ---------------------------------------------------------------- solve

void run_solve(const RunConfig& cfg, RunOutcome& outcome, Artifacts& art, std::ostream& log) {
  const GridPtr grid = make_grid(cfg.grid);
  const ScalarField f = make_rhs(grid, cfg.rhs);
  const BoundaryFunction bc = make_boundary(cfg.boundary, cfg.grid.dimension, cfg.p);
  const EnergyProblem prob(grid, cfg.p, f, bc);
  const SolveResult res = solve_dirichlet(prob, cfg.solver);
  const SolveReport& rep = res.report;
  log << "solve: " << rep.iterations << " iterations, " << fixed(rep.wall_time, 3) << " s\n";

  {
    auto os = art.open("u.csv");
    write_field(os, res.u, provenance_line(cfg));
  }
  const bool ball = cfg.grid.shape == DomainShape::ball;
  const double bsup = boundary_sup(*grid, bc);
  const LinfBound lb = linf_bound_check(res.u, f, bsup, cfg.p);
  {
    auto os = art.open("solve_report.csv");
    write_comment(os, provenance_line(cfg));
    os << "converged,iterations,final_energy,final_grad_sup,divergence_residual,u_sup,boundary_sup,linf_bound,"
          "linf_satisfied\n";
    os << rep.converged << ',' << rep.iterations << ',' << fr(rep.final_energy) << ',' << fr(rep.final_grad_sup)
       << ',' << fr(rep.divergence_residual) << ',' << fr(lb.u_sup) << ',' << fr(bsup) << ','
       << (ball ? fr(lb.bound) : "nan") << ',' << (ball ? std::to_string(lb.satisfied) : "-1") << '\n';
  }
  check(outcome, log, "solver_converged", rep.converged,
        "gradient " + sci(rep.final_grad_sup) + " after " + std::to_string(rep.iterations) + " iterations");
  if (ball) {
    check(outcome, log, "linf_bound", lb.satisfied, "|u|_inf = " + sci(lb.u_sup) + " <= " + sci(lb.bound));
  }
}

// ---------------------------------------------------------------- verify-lemmas

void summary_row(std::ostream& os, const std::string& name, const SweepSummary& s) {
  os << name << ',' << s.samples << ',' << s.violations << ',' << fr(s.worst_relative_slack) << ',' << s.passed()
     << '\n';
}

void run_lemmas(const RunConfig& cfg, RunOutcome& outcome, Artifacts& art, std::ostream& log) {
  const LemmaConfig& lm = cfg.lemmas;
  std::ostringstream summary;

  const auto p4 = prop4_sweep(derive_seed(cfg.seed, 1), lm.prop4_samples);
  const auto s4 = summarize(p4);
  art.csv("prop4.csv", p4);
  summary_row(summary, "prop4", s4);
  check(outcome, log, "prop4_bounds", s4.passed(),
        std::to_string(s4.violations) + " violations in " + std::to_string(s4.samples) +
            " samples, worst relative slack " + sci(s4.worst_relative_slack));

  const auto p5 = prop5_sweep(derive_seed(cfg.seed, 2), lm.prop5_samples);
  const auto s5 = summarize(p5);
  art.csv("prop5.csv", p5);
  summary_row(summary, "prop5", s5);
  check(outcome, log, "prop5_conclusions", s5.passed(),
        std::to_string(s5.violations) + " violations in " + std::to_string(s5.samples) + " pairs");

  const auto zt = zt_sweep(derive_seed(cfg.seed, 3), lm.zt_samples);
  const auto sz = summarize(zt);
  art.csv("zt.csv", zt);
  summary_row(summary, "zt", sz);
  check(outcome, log, "zt_inequality", sz.passed(),
        std::to_string(sz.violations) + " violations in " + std::to_string(sz.samples) +
            " samples, worst relative slack " + sci(sz.worst_relative_slack));

  if (lm.claims) {
    const auto cl = claims_sweep(derive_seed(cfg.seed, 4));
    art.csv("claims.csv", cl);
    for (const auto& s : summarize_claims(cl)) {
      check(outcome, log, "claims_" + to_string(s.regime), s.passed(),
            std::string("ratio1 ") + (s.ratio1_negative ? "negative" : "NOT negative") + ", shrink x" +
                sci(s.ratio1_shrink) + ", ratio2 growth x" + sci(s.ratio2_growth) + ", ratio3 growth x" +
                sci(s.ratio3_growth));
    }
  }
  if (lm.ordering) {
    const auto ord = ordering_sweep();
    art.csv("ordering.csv", ord);
    const long bad = std::count_if(ord.begin(), ord.end(), [](const OrderingRow& r) { return !r.holds; });
    check(outcome, log, "exponent_ordering", bad == 0,
          std::to_string(bad) + " of " + std::to_string(ord.size()) + " parameter sets violate tau1, tau2 < tau_hat");
  }
  if (lm.barrier) {
    const auto br = barrier_sweep(lm.barrier_n);
    art.csv("barrier.csv", br);
    const long bad = std::count_if(br.begin(), br.end(), [](const BarrierRow& r) { return !r.holds; });
    check(outcome, log, "barrier_supersolution", bad == 0,
          std::to_string(bad) + " of " + std::to_string(br.size()) + " (p,N) cases above tolerance at n = " +
              std::to_string(lm.barrier_n));
  }

  auto os = art.open("lemmas_summary.csv");
  write_comment(os, provenance_line(cfg));
  os << "check,samples,violations,worst_relative_slack,passed\n" << summary.str();
}

// ---------------------------------------------------------------- measure-regularity

struct RegularityCase {
  ExperimentRecord record;
  SolveReport report;
  LinfBound linf;
  std::vector<double> scaled_ratio;  // per lambda
  std::vector<bool> scaled_converged;
};

void run_regularity(const RunConfig& cfg, RunOutcome& outcome, Artifacts& art, std::ostream& log) {
  const RegularityConfig& rg = cfg.regularity;
  const GridPtr grid = make_grid(cfg.grid);
  const std::vector<RhsPreset> presets = rg.family ? regularity_rhs_family(cfg.seed) : std::vector{cfg.rhs};
  const BoundaryFunction bc = make_boundary(cfg.boundary, cfg.grid.dimension, cfg.p);
  const double p = cfg.p;

  std::vector<RegularityCase> cases(presets.size());
  parallel_for(presets.size(), [&](std::size_t k) {
    RegularityCase& c = cases[k];
    const ScalarField f = make_rhs(grid, presets[k]);
    const SolveResult base = solve_dirichlet(EnergyProblem(grid, p, f, bc), cfg.solver);
    c.report = base.report;
    c.record = make_record(base.u, f, p, rg.r, presets[k].describe(), rg.gammas);
    c.linf = linf_bound_check(base.u, f, boundary_sup(*grid, bc), p);
    for (double lambda : rg.lambdas) {
      // (lambda^(p-1) f, lambda g) has solution lambda u; the gradient scales by lambda^(p-1)
      const double fs = std::pow(lambda, p - 1.0);
      ScalarField fl = f;
      for (auto& v : fl.values()) v *= fs;
      const BoundaryFunction bl = [&bc, lambda](const Point& x) { return lambda * bc(x); };
      const SolveResult scaled = solve_dirichlet(EnergyProblem(grid, p, fl, bl), scaled_solver(cfg.solver, fs));
      c.scaled_converged.push_back(scaled.report.converged);
      c.scaled_ratio.push_back(make_record(scaled.u, fl, p, rg.r, presets[k].describe(), {}).ratio);
    }
  });

  std::vector<ExperimentRecord> records;
  for (const auto& c : cases) records.push_back(c.record);
  const double C = estimate_constant(records);
  std::size_t argmax = 0;
  for (std::size_t k = 0; k < records.size(); ++k) {
    if (records[k].ratio > records[argmax].ratio) argmax = k;
  }
  {
    auto os = art.open("regularity.csv");
    write_records(os, records, provenance_line(cfg));
  }

  bool converged = true, linf_ok = true;
  double worst_scaling = 0.0;
  {
    auto os = art.open("scaling.csv");
    write_comment(os, provenance_line(cfg));
    os << "f,lambda,ratio,base_ratio,relative_difference,converged\n";
    for (const auto& c : cases) {
      converged = converged && c.report.converged;
      linf_ok = linf_ok && c.linf.satisfied;
      for (std::size_t j = 0; j < rg.lambdas.size(); ++j) {
        const double base = c.record.ratio;
        const double rel = base > 0.0 ? std::abs(c.scaled_ratio[j] - base) / base : std::abs(c.scaled_ratio[j]);
        worst_scaling = std::max(worst_scaling, rel);
        converged = converged && c.scaled_converged[j];
        os << c.record.f_description << ',' << fr(rg.lambdas[j]) << ',' << fr(c.scaled_ratio[j]) << ',' << fr(base)
           << ',' << fr(rel) << ',' << c.scaled_converged[j] << '\n';
      }
    }
  }
  {
    auto os = art.open("regularity_summary.csv");
    write_comment(os, provenance_line(cfg));
    os << "p,N,r,n,records,empirical_C,argmax_f,worst_scaling_difference\n";
    os << fr(p) << ',' << cfg.grid.dimension << ',' << fr(rg.r) << ',' << cfg.grid.nodes_per_axis << ','
       << records.size() << ',' << fr(C) << ',' << records[argmax].f_description << ',' << fr(worst_scaling) << '\n';
  }
  if (!rg.lambdas.empty()) {
    std::vector<PlotSeries> series;
    for (const auto& c : cases) {
      PlotSeries s{c.record.f_description, {1.0}, {c.record.ratio}};
      for (std::size_t j = 0; j < rg.lambdas.size(); ++j) {
        s.x.push_back(rg.lambdas[j]);
        s.y.push_back(c.scaled_ratio[j]);
      }
      // sort by lambda for a clean polyline
      std::vector<std::size_t> idx(s.x.size());
      for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
      std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return s.x[a] < s.x[b]; });
      PlotSeries sorted{s.label, {}, {}};
      for (auto i : idx) {
        sorted.x.push_back(s.x[i]);
        sorted.y.push_back(s.y[i]);
      }
      series.push_back(std::move(sorted));
    }
    art.svg("ratio_vs_scale.svg",
            svg_line_plot("Lipschitz ratio under (lambda^(p-1) f, lambda g) scaling", "lambda", "ratio", series,
                          true, false));
  }

  log << "measure-regularity: empirical C = " << sci(C) << " (" << records[argmax].f_description << ")\n";
  check(outcome, log, "solves_converged", converged, std::to_string(cases.size() * (1 + rg.lambdas.size())) + " solves");
  check(outcome, log, "linf_bound", linf_ok, "barrier bound on every base solve");
  check(outcome, log, "records_finite", std::isfinite(C), "empirical C = " + sci(C));
  if (!rg.lambdas.empty()) {
    check(outcome, log, "scaling_invariance", worst_scaling <= rg.scaling_tol,
          "worst relative ratio change " + sci(worst_scaling) + " (tolerance " + sci(rg.scaling_tol) + ")");
  }
}

// ---------------------------------------------------------------- convergence-study

void run_convergence(const RunConfig& cfg, RunOutcome& outcome, Artifacts& art, std::ostream& log) {
  const ConvergenceConfig& cv = cfg.convergence;
  const int N = cfg.grid.dimension;
  const double p = cfg.p, c = cfg.rhs.c;
  struct Level {
    int n;
    double h, error, order;
    SolveReport report;
  };
  std::vector<Level> levels(cv.levels.size());
  parallel_for(levels.size(), [&](std::size_t k) {
    const GridPtr grid = make_grid({N, cv.levels[k], cfg.grid.shape});
    RhsPreset rp{RhsKind::separable, c};
    BoundaryPreset bp{BoundaryKind::separable, c};
    const SolveResult res = solve_dirichlet(EnergyProblem(grid, p, make_rhs(grid, rp), make_boundary(bp, N, p)),
                                            cfg.solver);
    double err = 0.0;
    for (std::size_t i = 0; i < grid->size(); ++i) {
      if (grid->node_class(i) == NodeClass::exterior) continue;
      err = std::max(err, std::abs(res.u[i] - separable_solution(grid->position(i), N, p, c)));
    }
    levels[k] = {cv.levels[k], grid->h(), err, std::numeric_limits<double>::quiet_NaN(), res.report};
  });
  bool decreasing = true, converged = true;
  double min_order = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < levels.size(); ++k) {
    converged = converged && levels[k].report.converged;
    if (k == 0) continue;
    decreasing = decreasing && levels[k].error < levels[k - 1].error;
    levels[k].order = std::log(levels[k - 1].error / levels[k].error) / std::log(levels[k - 1].h / levels[k].h);
    min_order = std::min(min_order, levels[k].order);
  }
  {
    auto os = art.open("convergence.csv");
    write_comment(os, provenance_line(cfg));
    os << "n,h,error,order,iterations,converged\n";
    for (const auto& l : levels) {
      os << l.n << ',' << fr(l.h) << ',' << fr(l.error) << ',' << fr(l.order) << ',' << l.report.iterations << ','
         << l.report.converged << '\n';
    }
  }
  PlotSeries s{"max-norm error", {}, {}};
  for (const auto& l : levels) {
    s.x.push_back(l.h);
    s.y.push_back(l.error);
  }
  art.svg("error_vs_h.svg", svg_line_plot("Error against the separable manufactured solution", "h", "max error",
                                          {s}, true, true));
  for (const auto& l : levels) log << "n = " << l.n << ": error " << sci(l.error) << ", order " << sci(l.order) << '\n';
  check(outcome, log, "solves_converged", converged, std::to_string(levels.size()) + " levels");
  check(outcome, log, "error_decreasing", decreasing, "errors shrink with h");
  check(outcome, log, "observed_order", min_order >= cv.min_order,
        "minimum observed order " + sci(min_order) + " (required " + sci(cv.min_order) + ")");
}

}  // namespace

RunOutcome run(const RunConfig& cfg, std::ostream& log) {
  RunOutcome outcome;
  Artifacts art(cfg, outcome);
  log << to_string(cfg.subcommand) << " " << provenance_line(cfg) << " seed=" << cfg.seed
      << " workers=" << worker_count() << '\n';
  switch (cfg.subcommand) {
    case Subcommand::solve: run_solve(cfg, outcome, art, log); break;
    case Subcommand::verify_lemmas: run_lemmas(cfg, outcome, art, log); break;
    case Subcommand::measure_regularity: run_regularity(cfg, outcome, art, log); break;
    case Subcommand::convergence_study: run_convergence(cfg, outcome, art, log); break;
  }
  return outcome;
}

// ---------------------------------------------------------------- SVG

namespace {

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Axis {
  bool log = false;
  double lo = 0.0, hi = 1.0;

  double map(double v) const { return log ? std::log10(v) : v; }

  void fit(const std::vector<double>& values) {
    double a = std::numeric_limits<double>::infinity(), b = -a;
    for (double v : values) {
      if (!std::isfinite(v) || (log && v <= 0.0)) continue;
      a = std::min(a, map(v));
      b = std::max(b, map(v));
    }
    if (!std::isfinite(a)) a = 0.0, b = 1.0;
    if (log) {
      a = std::floor(a);
      b = std::ceil(b);
    }
    if (b - a < 1e-12) {
      const double pad = std::max(std::abs(a) * 0.1, log ? 1.0 : 1e-3);
      a -= pad;
      b += pad;
    }
    lo = a;
    hi = b;
  }

  std::vector<double> ticks() const {
    std::vector<double> t;
    if (log) {
      for (double e = lo; e <= hi + 1e-9; e += 1.0) t.push_back(e);
    } else {
      for (int i = 0; i <= 4; ++i) t.push_back(lo + (hi - lo) * i / 4.0);
    }
    return t;
  }

  std::string label(double t) const { return log ? "1e" + std::to_string(static_cast<int>(std::lround(t))) : sci(t); }
};

}  // namespace

std::string svg_line_plot(const std::string& title, const std::string& xlabel, const std::string& ylabel,
                          const std::vector<PlotSeries>& series, bool log_x, bool log_y) {
  constexpr double W = 720, H = 460, L = 80, R = 220, T = 40, B = 60;
  Axis ax{log_x}, ay{log_y};
  std::vector<double> xs, ys;
  for (const auto& s : series) {
    xs.insert(xs.end(), s.x.begin(), s.x.end());
    ys.insert(ys.end(), s.y.begin(), s.y.end());
  }
  ax.fit(xs);
  ay.fit(ys);
  auto px = [&](double v) { return L + (ax.map(v) - ax.lo) / (ax.hi - ax.lo) * (W - L - R); };
  auto py = [&](double v) { return H - B - (ay.map(v) - ay.lo) / (ay.hi - ay.lo) * (H - T - B); };
  auto tx = [&](double t) { return L + (t - ax.lo) / (ax.hi - ax.lo) * (W - L - R); };
  auto ty = [&](double t) { return H - B - (t - ay.lo) / (ay.hi - ay.lo) * (H - T - B); };
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                 "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fixed(W, 0) << "\" height=\"" << fixed(H, 0)
     << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << fixed(W / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" << escape(title)
     << "</text>\n";
  os << "<line x1=\"" << fixed(L) << "\" y1=\"" << fixed(H - B) << "\" x2=\"" << fixed(W - R) << "\" y2=\""
     << fixed(H - B) << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << fixed(L) << "\" y1=\"" << fixed(T) << "\" x2=\"" << fixed(L) << "\" y2=\"" << fixed(H - B)
     << "\" stroke=\"black\"/>\n";
  for (double t : ax.ticks()) {
    os << "<line x1=\"" << fixed(tx(t)) << "\" y1=\"" << fixed(H - B) << "\" x2=\"" << fixed(tx(t)) << "\" y2=\""
       << fixed(H - B + 5) << "\" stroke=\"black\"/>";
    os << "<text x=\"" << fixed(tx(t)) << "\" y=\"" << fixed(H - B + 18) << "\" text-anchor=\"middle\">"
       << ax.label(t) << "</text>\n";
  }
  for (double t : ay.ticks()) {
    os << "<line x1=\"" << fixed(L - 5) << "\" y1=\"" << fixed(ty(t)) << "\" x2=\"" << fixed(L) << "\" y2=\""
       << fixed(ty(t)) << "\" stroke=\"black\"/>";
    os << "<text x=\"" << fixed(L - 8) << "\" y=\"" << fixed(ty(t) + 4) << "\" text-anchor=\"end\">" << ay.label(t)
       << "</text>\n";
  }
  os << "<text x=\"" << fixed((L + W - R) / 2) << "\" y=\"" << fixed(H - 15) << "\" text-anchor=\"middle\">"
     << escape(xlabel) << "</text>\n";
  os << "<text x=\"18\" y=\"" << fixed((T + H - B) / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
     << fixed((T + H - B) / 2) << ")\">" << escape(ylabel) << "</text>\n";
  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const char* color = colors[k % 10];
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    bool first = true;
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      if ((log_x && s.x[i] <= 0.0) || (log_y && s.y[i] <= 0.0)) continue;
      os << (first ? "" : " ") << fixed(px(s.x[i])) << ',' << fixed(py(s.y[i]));
      first = false;
    }
    os << "\"/>\n";
    const double ly = T + 14.0 * static_cast<double>(k) + 6.0;
    os << "<line x1=\"" << fixed(W - R + 12) << "\" y1=\"" << fixed(ly) << "\" x2=\"" << fixed(W - R + 32)
       << "\" y2=\"" << fixed(ly) << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>";
    os << "<text x=\"" << fixed(W - R + 36) << "\" y=\"" << fixed(ly + 4) << "\" font-size=\"10\">"
       << escape(s.label) << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

// ---------------------------------------------------------------- CLI

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Pseudo-p-Laplacian numerical lab"};
  app.require_subcommand(1);
  std::string config_path;
  std::uint64_t seed = 0;
  std::string out_dir;
  struct Entry {
    Subcommand cmd;
    CLI::App* app;
  };
  std::vector<Entry> entries;
  const std::pair<Subcommand, const char*> commands[] = {
      {Subcommand::solve, "Solve one Dirichlet problem and write the field"},
      {Subcommand::verify_lemmas, "Randomised sweeps over the jet inequalities, barrier and claims"},
      {Subcommand::measure_regularity, "Interior seminorms and the empirical Lipschitz constant"},
      {Subcommand::convergence_study, "Grid refinement against the separable manufactured solution"}};
  for (const auto& [cmd, help] : commands) {
    CLI::App* sub = app.add_subcommand(to_string(cmd), help);
    sub->add_option("--config", config_path, "Config file (INI)")->required();
    sub->add_option("--seed", seed, "Random seed (overrides [run] seed)");
    sub->add_option("--out", out_dir, "Output directory (overrides [run] out)");
    entries.push_back({cmd, sub});
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "pseudoplap: " << e.what() << '\n';
    return exit_config_error;
  }

  Subcommand cmd = Subcommand::solve;
  CLI::App* chosen = nullptr;
  for (const auto& e : entries) {
    if (e.app->parsed()) {
      cmd = e.cmd;
      chosen = e.app;
    }
  }
  RunConfig cfg;
  try {
    cfg = make_run_config(IniDocument::load(config_path), cmd);
    if (chosen->count("--seed")) cfg.set_seed(seed);
    if (chosen->count("--out")) cfg.out = out_dir;
  } catch (const ParseError& e) {
    err << "pseudoplap: config error: " << e.what() << '\n';
    return exit_config_error;
  }
  try {
    const auto start = std::chrono::steady_clock::now();
    const RunOutcome outcome = run(cfg, out);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out << outcome.artifacts.size() << " artifacts in " << cfg.out.string() << ", " << fixed(secs, 2) << " s\n";
    if (!outcome.passed()) {
      err << "pseudoplap: failed checks:";
      for (const auto& c : outcome.checks) {
        if (!c.passed) err << ' ' << c.name;
      }
      err << '\n';
    }
    return outcome.exit_code();
  } catch (const std::exception& e) {
    err << "pseudoplap: runtime error: " << e.what() << '\n';
    return exit_runtime_error;
  }
}

}  // namespace pseudoplap
