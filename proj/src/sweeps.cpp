#include "pseudoplap/sweeps.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

#include "pseudoplap/barrier.hpp"
#include "pseudoplap/error.hpp"
#include "pseudoplap/field_io.hpp"
#include "pseudoplap/parallel.hpp"

namespace pseudoplap {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Points closer to the origin than this make w'' and Theta overflow.
constexpr double kMinRadius = 1e-26;

Vector random_point(Rng& rng, std::size_t n, double rmin, double rmax) {
  Vector x = random_unit_vector(rng, n);
  const double r = log_uniform(rng, rmin, rmax);
  for (double& c : x) c *= r;
  return x;
}

std::string fr(double v) { return format_real(v); }

void relax(SweepSummary& s, double rel) { s.worst_relative_slack = std::min(s.worst_relative_slack, rel); }

double relative(double slack, double scale) { return scale > 0.0 ? slack / scale : slack; }

const Regime kRegimes[] = {Regime::holder_small_p, Regime::holder_large_p, Regime::lipschitz_small_p,
                           Regime::lipschitz_large_p};

// Parameters of `regime` at a random p (and gamma for the Hölder regimes),
// redrawn until delta stays clear of the overflow range.
RegimeParams draw_regime(Rng& rng, Regime regime, int N, bool exactly_four) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    double p = 0.0;
    RegimeChoice choice;
    switch (regime) {
      case Regime::holder_small_p:
        p = exactly_four ? 4.0 : uniform(rng, 2.05, 4.0);
        choice.gamma = uniform(rng, 0.1, 0.9);
        break;
      case Regime::holder_large_p:
        p = uniform(rng, 4.05, 8.0);
        choice.gamma = uniform(rng, 0.1, 0.9);
        break;
      case Regime::lipschitz_small_p:
        p = exactly_four ? 4.0 : uniform(rng, 2.05, 4.0);
        break;
      case Regime::lipschitz_large_p:
        p = exactly_four ? 4.0 : uniform(rng, 4.0, 8.0);
        break;
    }
    const RegimeParams rp = regime_params(regime, p, N, choice);
    if (rp.delta_N > 1e-20) return rp;
  }
  throw NumericalError("could not draw regime parameters with a usable delta for " + to_string(regime));
}

}  // namespace

void write_comment(std::ostream& os, const std::string& comment) {
  if (comment.empty()) return;
  std::istringstream lines(comment);
  for (std::string line; std::getline(lines, line);) os << "# " << line << '\n';
}

// ---------------------------------------------------------------- jet matrix bounds

std::vector<Prop4Row> prop4_sweep(std::uint64_t seed, long per_branch) {
  if (per_branch < 1) throw PreconditionError("prop4_sweep needs at least one sample per branch");
  std::vector<Prop4Row> rows(static_cast<std::size_t>(2 * per_branch));
  parallel_for(rows.size(), [&](std::size_t k) {
    Rng rng = make_rng(seed, k);
    Prop4Row& row = rows[k];
    row.index = static_cast<long>(k);
    const long j = static_cast<long>(k) % per_branch;
    row.branch = static_cast<long>(k) < per_branch ? Prop4Branch::small_p : Prop4Branch::large_p;
    row.N = 1 + static_cast<int>(j % 3);
    const bool four = j % 10 == 9;
    Vector x;
    Modulus mod = Modulus::holder(0.5);
    if (row.branch == Prop4Branch::small_p) {
      row.p = four ? 4.0 : uniform(rng, 2.0 + 1e-3, 4.0);
      mod = j % 2 ? Modulus::holder(uniform(rng, 0.1, 0.9)) : Modulus::lipschitz(uniform(rng, 0.05, 0.5));
      x = random_point(rng, row.N, 1e-4, 0.99);
      row.eps = 0.1;
    } else {
      const Regime regime = four || j % 2 ? Regime::lipschitz_large_p : Regime::holder_large_p;
      const RegimeParams rp = draw_regime(rng, regime, row.N, four);
      row.p = rp.p;
      mod = rp.modulus();
      row.eps = rp.epsilon;
      x = random_point(rng, row.N, std::max(kMinRadius, rp.delta_N * 1e-6), rp.delta_N);
    }
    row.modulus = mod.describe();
    row.M = log_uniform(rng, 1.01, 1e3);
    row.r = norm2(x);
    row.eqNepsilon = row.branch == Prop4Branch::small_p || check_eqNepsilon(x, row.eps, mod, row.M);
    if (!row.eqNepsilon) {
      row.rayleigh = row.lambda_min = row.bound = row.slack = kNaN;
      return;
    }
    const Prop4Result res = prop4_bound_check(x, row.p, row.eps, mod, row.M, row.branch);
    row.rayleigh = res.rayleigh;
    row.lambda_min = res.lambda_min;
    row.bound = res.bound;
    row.slack = res.slack;
    row.holds = res.holds();
  });
  return rows;
}

SweepSummary summarize(const std::vector<Prop4Row>& rows) {
  SweepSummary s;
  for (const auto& r : rows) {
    ++s.samples;
    if (!r.holds) ++s.violations;
    if (r.eqNepsilon) relax(s, relative(r.slack, std::abs(r.bound)));
  }
  return s;
}

void write_csv(std::ostream& os, const std::vector<Prop4Row>& rows, const std::string& comment) {
  write_comment(os, comment);
  os << "index,branch,modulus,N,p,r,M,eps,eqNepsilon,rayleigh,lambda_min,bound,slack,holds\n";
  for (const auto& r : rows) {
    os << r.index << ',' << to_string(r.branch) << ',' << r.modulus << ',' << r.N << ',' << fr(r.p) << ','
       << fr(r.r) << ',' << fr(r.M) << ',' << fr(r.eps) << ',' << r.eqNepsilon << ',' << fr(r.rayleigh) << ','
       << fr(r.lambda_min) << ',' << fr(r.bound) << ',' << fr(r.slack) << ',' << r.holds << '\n';
  }
}

// ---------------------------------------------------------------- feasible pairs

std::vector<Prop5Row> prop5_sweep(std::uint64_t seed, long samples) {
  if (samples < 1) throw PreconditionError("prop5_sweep needs at least one sample");
  std::vector<Prop5Row> rows(static_cast<std::size_t>(samples));
  parallel_for(rows.size(), [&](std::size_t k) {
    Rng rng = make_rng(seed, k);
    Prop5Row& row = rows[k];
    row.index = static_cast<long>(k);
    row.regime = kRegimes[k % 4];
    row.N = 1 + static_cast<int>((k / 4) % 3);
    const bool four = (row.regime == Regime::lipschitz_large_p || row.regime == Regime::lipschitz_small_p) &&
                      (k / 12) % 10 == 9;
    const RegimeParams rp = draw_regime(rng, row.regime, row.N, four);
    row.p = rp.p;
    row.eps = rp.large_p() ? rp.epsilon : 0.1;
    const Vector x = random_point(rng, row.N, std::max(kMinRadius, rp.delta * 1e-6), rp.delta);
    row.r = norm2(x);
    row.M = log_uniform(rng, 1.01, 1e3);
    const JetMatrices jm = build_jet_matrices(x, row.M, row.p, rp.modulus());
    const JetPair pair = feasible_pair_sample(jm, rng);
    row.attempts = pair.attempts;
    const Prop5Report rep = prop5_conclusions_check(pair.X, pair.Y, jm, row.eps);
    row.conclusions = rep.conclusions;
    row.holds = rep.holds();
  });
  return rows;
}

SweepSummary summarize(const std::vector<Prop5Row>& rows) {
  SweepSummary s;
  for (const auto& r : rows) {
    ++s.samples;
    if (!r.holds) ++s.violations;
    for (const auto& c : r.conclusions) {
      relax(s, relative(c.slack, std::max({std::abs(c.bound), std::abs(c.value), c.scale})));
    }
  }
  return s;
}

void write_csv(std::ostream& os, const std::vector<Prop5Row>& rows, const std::string& comment) {
  static const char* names[] = {"theta_negative", "autresvp1", "autresvp1_loose", "majnorm", "mu1pleq4", "mu1pgeq4"};
  write_comment(os, comment);
  os << "index,regime,N,p,r,M,eps,attempts";
  for (const char* n : names) os << ",slack_" << n;
  os << ",holds\n";
  for (const auto& r : rows) {
    os << r.index << ',' << to_string(r.regime) << ',' << r.N << ',' << fr(r.p) << ',' << fr(r.r) << ','
       << fr(r.M) << ',' << fr(r.eps) << ',' << r.attempts;
    for (const char* n : names) {
      double v = kNaN;
      for (const auto& c : r.conclusions) {
        if (c.name == n) v = c.slack;
      }
      os << ',' << fr(v);
    }
    os << ',' << r.holds << '\n';
  }
}

// ---------------------------------------------------------------- ZT

std::vector<ZtRow> zt_sweep(std::uint64_t seed, long samples) {
  if (samples < 1) throw PreconditionError("zt_sweep needs at least one sample");
  std::vector<ZtRow> rows(static_cast<std::size_t>(samples));
  parallel_for(rows.size(), [&](std::size_t k) {
    Rng rng = make_rng(seed, k);
    ZtRow& row = rows[k];
    row.index = static_cast<long>(k);
    row.N = 1 + static_cast<int>(k % 3);
    row.p = uniform(rng, 2.0 + 1e-6, 8.0);
    row.theta = uniform(rng, 1e-6, 1.0) * std::min(1.0, row.p - 2.0);
    Vector z = random_unit_vector(rng, row.N), t = random_unit_vector(rng, row.N);
    const double sz = log_uniform(rng, 1e-3, 1e3), st = log_uniform(rng, 1e-3, 1e3);
    for (double& c : z) c *= sz;
    for (double& c : t) c *= st;
    row.z_norm = norm2(z);
    row.t_norm = norm2(t);
    const ZtResult res = zt_check(z, t, row.theta, row.p);
    row.lhs = res.lhs;
    row.rhs = res.rhs;
    row.slack = res.slack;
    row.holds = res.slack >= -1e-12 * res.rhs;
  });
  return rows;
}

SweepSummary summarize(const std::vector<ZtRow>& rows) {
  SweepSummary s;
  for (const auto& r : rows) {
    ++s.samples;
    if (!r.holds) ++s.violations;
    relax(s, relative(r.slack, r.rhs));
  }
  return s;
}

void write_csv(std::ostream& os, const std::vector<ZtRow>& rows, const std::string& comment) {
  write_comment(os, comment);
  os << "index,N,p,theta,z_norm,t_norm,lhs,rhs,slack,holds\n";
  for (const auto& r : rows) {
    os << r.index << ',' << r.N << ',' << fr(r.p) << ',' << fr(r.theta) << ',' << fr(r.z_norm) << ','
       << fr(r.t_norm) << ',' << fr(r.lhs) << ',' << fr(r.rhs) << ',' << fr(r.slack) << ',' << r.holds << '\n';
  }
}

// ---------------------------------------------------------------- claims

std::vector<ClaimsRow> claims_sweep(std::uint64_t seed) {
  constexpr int kScales = 4;
  constexpr double kM = 100.0;
  constexpr double kCemp = 10.0;
  std::vector<ClaimsRow> rows(4 * kScales);
  parallel_for(rows.size(), [&](std::size_t k) {
    const Regime regime = kRegimes[k / kScales];
    const int level = static_cast<int>(k % kScales);
    const double p = regime == Regime::holder_small_p || regime == Regime::lipschitz_small_p ? 3.0 : 6.0;
    const RegimeParams rp = regime_params(regime, p, 2);
    ClaimsRow& row = rows[k];
    row.regime = regime;
    row.p = p;
    row.N = 2;
    row.M = kM;
    row.s = std::min(0.1, rp.delta / 2.0) * std::pow(10.0, -level);
    row.tau_hat = rp.tau_hat;
    row.tau1 = rp.tau1;
    row.tau2 = rp.tau2;
    // xbar - ybar along the diagonal so every Theta entry is nonzero; x0 sits
    // off the segment at half the admissible distance (c_emp s^gamma / M)^(1/2)
    const double c = std::sqrt(0.5);
    const double d = 0.5 * std::sqrt(kCemp * std::pow(row.s, rp.gamma) / kM);
    const Vector xbar{c * row.s / 2.0, c * row.s / 2.0}, ybar{-c * row.s / 2.0, -c * row.s / 2.0};
    const Vector x0{c * d, -c * d};
    Rng rng = make_rng(seed, k);
    const ClaimsReport rep = claims_check(xbar, ybar, x0, kM, rp, rng, kCemp);
    row.ineqx = rep.ineqx ? static_cast<int>(*rep.ineqx) : -1;
    row.eqNepsilon = rep.eqNepsilon ? static_cast<int>(*rep.eqNepsilon) : -1;
    row.ratio1 = rep.ratio1;
    row.ratio2 = rep.ratio2;
    row.ratio3 = rep.ratio3;
  });
  return rows;
}

namespace {

// |to| / |from|; 1 when both vanish, inf when only `from` does, NaN propagates.
double growth(double from, double to) {
  if (std::isnan(from) || std::isnan(to)) return std::numeric_limits<double>::quiet_NaN();
  if (from == 0.0) return to == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
  return std::abs(to) / std::abs(from);
}

// Upward drift of a quantity that only needs an upper bound: 0 while it
// stays <= 0, inf when it turns positive from a non-positive start.
double upward(double from, double to) {
  if (std::isnan(from) || std::isnan(to)) return std::numeric_limits<double>::quiet_NaN();
  if (to <= 0.0) return 0.0;
  if (from <= 0.0) return std::numeric_limits<double>::infinity();
  return to / from;
}

// NaN is sticky so that a broken ratio fails the drift test.
void keep_worst(double& acc, double g) {
  if (std::isnan(acc)) return;
  if (std::isnan(g) || g > acc) acc = g;
}

}  // namespace

std::vector<ClaimsRegimeSummary> summarize_claims(const std::vector<ClaimsRow>& rows) {
  std::vector<ClaimsRegimeSummary> out;
  for (Regime regime : kRegimes) {
    std::vector<const ClaimsRow*> rs;
    for (const auto& r : rows) {
      if (r.regime == regime) rs.push_back(&r);
    }
    if (rs.empty()) continue;
    ClaimsRegimeSummary s;
    s.regime = regime;
    s.ratio1_negative = true;
    const ClaimsRow& first = *rs.front();
    for (const ClaimsRow* r : rs) {
      s.ratio1_negative = s.ratio1_negative && r->ratio1 < 0.0;
      keep_worst(s.ratio1_shrink, growth(r->ratio1, first.ratio1));
      if (r->N >= 2) keep_worst(s.ratio2_growth, upward(first.ratio2, r->ratio2));
      keep_worst(s.ratio3_growth, upward(first.ratio3, r->ratio3));
    }
    out.push_back(s);
  }
  return out;
}

void write_csv(std::ostream& os, const std::vector<ClaimsRow>& rows, const std::string& comment) {
  write_comment(os, comment);
  os << "regime,p,N,M,s,tau_hat,tau1,tau2,ineqx,eqNepsilon,ratio1,ratio2,ratio3\n";
  for (const auto& r : rows) {
    os << to_string(r.regime) << ',' << fr(r.p) << ',' << r.N << ',' << fr(r.M) << ',' << fr(r.s) << ','
       << fr(r.tau_hat) << ',' << fr(r.tau1) << ',' << fr(r.tau2) << ',' << r.ineqx << ',' << r.eqNepsilon << ','
       << fr(r.ratio1) << ',' << fr(r.ratio2) << ',' << fr(r.ratio3) << '\n';
  }
}

// ---------------------------------------------------------------- exponent ordering

std::vector<OrderingRow> ordering_sweep() {
  std::vector<OrderingRow> rows;
  const double ps[] = {2.25, 2.5, 3.0, 3.5, 4.0, 4.5, 5.0, 6.0, 8.0, 12.0};
  for (Regime regime : kRegimes) {
    for (double p : ps) {
      for (int g = 1; g <= 9; ++g) {
        const double gamma = g / 10.0;
        RegimeChoice choice;
        choice.gamma = gamma;
        switch (regime) {
          case Regime::holder_small_p:
            if (p > 4.0) continue;
            break;
          case Regime::holder_large_p:
            if (p <= 4.0) continue;
            break;
          case Regime::lipschitz_small_p: {
            if (p > 4.0) continue;
            choice.tau = 0.5 * gamma * std::min(0.5, (p - 2.0) / 2.0);
            break;
          }
          case Regime::lipschitz_large_p: {
            if (p < 4.0) continue;
            choice.tau = 0.5 * gamma / (p - 2.0);
            break;
          }
        }
        OrderingRow row;
        row.regime = regime;
        row.p = p;
        row.gamma = gamma;
        try {
          const RegimeParams rp = regime_params(regime, p, 2, choice);
          row.tau = rp.tau;
          row.eps = rp.epsilon;
          row.tau_hat = rp.tau_hat;
          row.tau1 = rp.tau1;
          row.tau2 = rp.tau2;
          row.holds = rp.tau1 < rp.tau_hat && rp.tau2 < rp.tau_hat;
        } catch (const NumericalError&) {
          // regime_params refuses parameter sets whose ordering fails
          row.tau = choice.tau.value_or(0.0);
          row.tau_hat = row.tau1 = row.tau2 = kNaN;
          row.holds = false;
        }
        rows.push_back(row);
      }
    }
  }
  return rows;
}

void write_csv(std::ostream& os, const std::vector<OrderingRow>& rows, const std::string& comment) {
  write_comment(os, comment);
  os << "regime,p,gamma,tau,eps,tau_hat,tau1,tau2,holds\n";
  for (const auto& r : rows) {
    os << to_string(r.regime) << ',' << fr(r.p) << ',' << fr(r.gamma) << ',' << fr(r.tau) << ',' << fr(r.eps) << ','
       << fr(r.tau_hat) << ',' << fr(r.tau1) << ',' << fr(r.tau2) << ',' << r.holds << '\n';
  }
}

// ---------------------------------------------------------------- barrier

std::vector<BarrierRow> barrier_sweep(int n) {
  const double ps[] = {2.5, 3.0, 4.0, 5.0, 6.0};
  std::vector<BarrierRow> rows;
  for (int N = 1; N <= 3; ++N) {
    const GridPtr grid = make_grid({N, n, DomainShape::ball});
    for (double p : ps) {
      BarrierRow row;
      row.p = p;
      row.N = N;
      row.n = n;
      row.M = min_barrier_M(p, N, 1.0);
      const BarrierParams bp{row.M, 0.0, p, N};
      row.violation = verify_supersolution(grid, bp, 1.0, 3.0 * grid->h());
      row.tolerance = supersolution_tolerance(*grid, bp, 1.0);
      row.holds = row.violation <= row.tolerance;
      rows.push_back(row);
    }
  }
  return rows;
}

void write_csv(std::ostream& os, const std::vector<BarrierRow>& rows, const std::string& comment) {
  write_comment(os, comment);
  os << "p,N,n,M,violation,tolerance,holds\n";
  for (const auto& r : rows) {
    os << fr(r.p) << ',' << r.N << ',' << r.n << ',' << fr(r.M) << ',' << fr(r.violation) << ',' << fr(r.tolerance)
       << ',' << r.holds << '\n';
  }
}

}  // namespace pseudoplap
