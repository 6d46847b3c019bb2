#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "pseudoplap/jets.hpp"

namespace pseudoplap {

// Randomised property sweeps over the jet inequalities. Sample k draws from
// make_rng(seed, k), so results do not depend on the worker count.

struct SweepSummary {
  long samples = 0;
  long violations = 0;
  double worst_relative_slack = 0.0;  // min over samples of slack / scale
  bool passed() const { return samples > 0 && violations == 0; }
};

struct Prop4Row {
  long index = 0;
  Prop4Branch branch = Prop4Branch::small_p;
  std::string modulus;
  int N = 0;
  double p = 0.0;
  double r = 0.0;
  double M = 0.0;
  double eps = 0.0;
  bool eqNepsilon = true;  // always checked; required for the large-p branch
  double rayleigh = 0.0;
  double lambda_min = 0.0;
  double bound = 0.0;
  double slack = 0.0;
  bool holds = false;
};

/// `per_branch` samples of each branch. Small-p samples draw p in (2, 4],
/// large-p samples p in [4, 8] with every tenth at p = 4 exactly, and points
/// inside the regime's delta_N so the eqNepsilon condition holds.
std::vector<Prop4Row> prop4_sweep(std::uint64_t seed, long per_branch);
SweepSummary summarize(const std::vector<Prop4Row>& rows);
void write_csv(std::ostream& os, const std::vector<Prop4Row>& rows, const std::string& comment = {});

struct Prop5Row {
  long index = 0;
  Regime regime = Regime::holder_small_p;
  int N = 0;
  double p = 0.0;
  double r = 0.0;
  double M = 0.0;
  double eps = 0.0;
  int attempts = 0;
  std::vector<Conclusion> conclusions;
  bool holds = false;
};

/// Feasible (X, Y) pairs cycling through the four regimes and N = 1, 2, 3.
std::vector<Prop5Row> prop5_sweep(std::uint64_t seed, long samples);
SweepSummary summarize(const std::vector<Prop5Row>& rows);
/// Columns: inputs, then slack_<name> for every conclusion ("nan" when absent).
void write_csv(std::ostream& os, const std::vector<Prop5Row>& rows, const std::string& comment = {});

struct ZtRow {
  long index = 0;
  int N = 0;
  double p = 0.0;
  double theta = 0.0;
  double z_norm = 0.0;
  double t_norm = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  bool holds = false;  // slack >= -1e-12 rhs
};

std::vector<ZtRow> zt_sweep(std::uint64_t seed, long samples);
SweepSummary summarize(const std::vector<ZtRow>& rows);
void write_csv(std::ostream& os, const std::vector<ZtRow>& rows, const std::string& comment = {});

struct ClaimsRow {
  Regime regime = Regime::holder_small_p;
  double p = 0.0;
  int N = 0;
  double M = 0.0;
  double s = 0.0;
  double tau_hat = 0.0;
  double tau1 = 0.0;
  double tau2 = 0.0;
  int ineqx = -1;      // 1/0, -1 when not applicable
  int eqNepsilon = -1;
  double ratio1 = 0.0;
  double ratio2 = 0.0;
  double ratio3 = 0.0;
};

struct ClaimsRegimeSummary {
  Regime regime = Regime::holder_small_p;
  bool ratio1_negative = false;
  double ratio1_shrink = 0.0;  // max_k |r1(s_0)| / |r1(s_k)|
  // ratios 2-3 only need an upper bound: max_k r(s_k) / r(s_0), counting
  // only positive values (0 when they never turn positive)
  double ratio2_growth = 0.0;
  double ratio3_growth = 0.0;
  bool passed() const { return ratio1_negative && ratio1_shrink < 4.0 && ratio2_growth < 4.0 && ratio3_growth < 4.0; }
};

/// Default parameters of each regime at N = 2 (p = 3 for the small-p
/// regimes, p = 6 for the large-p ones), M = 100, xbar = -ybar = (s/2) e
/// along the diagonal e, x0 offset perpendicular to the segment by half the
/// admissible distance, s = min(0.1, delta/2) 10^-k for k = 0..3.
std::vector<ClaimsRow> claims_sweep(std::uint64_t seed);
std::vector<ClaimsRegimeSummary> summarize_claims(const std::vector<ClaimsRow>& rows);
void write_csv(std::ostream& os, const std::vector<ClaimsRow>& rows, const std::string& comment = {});

struct OrderingRow {
  Regime regime = Regime::holder_small_p;
  double p = 0.0;
  double gamma = 0.0;
  double tau = 0.0;
  double eps = 0.0;
  double tau_hat = 0.0;
  double tau1 = 0.0;
  double tau2 = 0.0;
  bool holds = false;  // tau1, tau2 < tau_hat
};

/// Deterministic (p, gamma) grid over all four regimes.
std::vector<OrderingRow> ordering_sweep();
void write_csv(std::ostream& os, const std::vector<OrderingRow>& rows, const std::string& comment = {});

struct BarrierRow {
  double p = 0.0;
  int N = 0;
  int n = 0;
  double M = 0.0;
  double violation = 0.0;  // max of Delta~_p b + (p-1) f_sup away from the origin
  double tolerance = 0.0;
  bool holds = false;
};

/// Barrier at M = min_barrier_M(p, N, 1) on the ball grid with n nodes per
/// axis, for p in {2.5, 3, 4, 5, 6} and N in {1, 2, 3}; the origin's 3h
/// neighbourhood is excluded.
std::vector<BarrierRow> barrier_sweep(int n);
void write_csv(std::ostream& os, const std::vector<BarrierRow>& rows, const std::string& comment = {});

/// "# line" for every line of `comment`.
void write_comment(std::ostream& os, const std::string& comment);

}  // namespace pseudoplap
