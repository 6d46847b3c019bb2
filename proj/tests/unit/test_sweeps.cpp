#include <gtest/gtest.h>

#include <cstdlib>
#include <sstream>

#include "pseudoplap/sweeps.hpp"

using namespace pseudoplap;

namespace {

template <class Rows>
std::string csv(const Rows& rows) {
  std::ostringstream os;
  write_csv(os, rows, "first\nsecond");
  return os.str();
}

// Every data line has as many fields as the header.
void expect_rectangular(const std::string& text, std::size_t rows) {
  std::istringstream is(text);
  std::string line;
  std::getline(is, line);
  EXPECT_EQ(line, "# first");
  std::getline(is, line);
  EXPECT_EQ(line, "# second");
  std::getline(is, line);
  const auto width = std::count(line.begin(), line.end(), ',');
  std::size_t n = 0;
  while (std::getline(is, line)) {
    EXPECT_EQ(std::count(line.begin(), line.end(), ','), width) << line;
    ++n;
  }
  EXPECT_EQ(n, rows);
}

struct ThreadsEnv {
  explicit ThreadsEnv(const char* n) { setenv("PSEUDOPLAP_THREADS", n, 1); }
  ~ThreadsEnv() { unsetenv("PSEUDOPLAP_THREADS"); }
};

}  // namespace

TEST(Sweeps, Prop4SmallRunHolds) {
  const auto rows = prop4_sweep(11, 60);
  ASSERT_EQ(rows.size(), 120u);
  long small = 0, at_four = 0;
  for (const auto& r : rows) {
    if (r.branch == Prop4Branch::small_p) {
      ++small;
      EXPECT_GT(r.p, 2.0);
      EXPECT_LE(r.p, 4.0);
      at_four += r.p == 4.0;
    } else {
      EXPECT_GE(r.p, 4.0);
      EXPECT_TRUE(r.eqNepsilon);
    }
    if (r.holds) {
      // the Rayleigh quotient never undercuts the smallest eigenvalue
      EXPECT_GE(r.rayleigh, r.lambda_min - 1e-9 * std::max(1.0, std::abs(r.lambda_min)));
      EXPECT_GE(r.slack, -1e-9 * std::max(1.0, std::abs(r.bound)));
    }
  }
  EXPECT_EQ(small, 60);
  EXPECT_EQ(at_four, 6);
  const auto s = summarize(rows);
  EXPECT_EQ(s.samples, 120);
  EXPECT_TRUE(s.passed());
  expect_rectangular(csv(rows), rows.size());
}

TEST(Sweeps, Prop5AndZtSmallRunsHold) {
  const auto p5 = prop5_sweep(5, 24);
  ASSERT_EQ(p5.size(), 24u);
  for (std::size_t k = 0; k < p5.size(); ++k) {
    EXPECT_EQ(static_cast<std::size_t>(p5[k].regime), k % 4);
    EXPECT_FALSE(p5[k].conclusions.empty());
  }
  EXPECT_TRUE(summarize(p5).passed());
  expect_rectangular(csv(p5), p5.size());

  const auto zt = zt_sweep(5, 500);
  EXPECT_TRUE(summarize(zt).passed());
  for (const auto& r : zt) EXPECT_NEAR(r.slack, r.rhs - r.lhs, 1e-12 * std::max(1.0, r.rhs));
  expect_rectangular(csv(zt), zt.size());
}

TEST(Sweeps, SeedSensitiveButReproducible) {
  EXPECT_EQ(csv(zt_sweep(3, 50)), csv(zt_sweep(3, 50)));
  EXPECT_NE(csv(zt_sweep(3, 50)), csv(zt_sweep(4, 50)));
  EXPECT_EQ(csv(prop5_sweep(3, 12)), csv(prop5_sweep(3, 12)));
}

TEST(Sweeps, WorkerCountDoesNotChangeResults) {
  std::string one, four;
  {
    ThreadsEnv env("1");
    one = csv(prop4_sweep(21, 40)) + csv(prop5_sweep(21, 16)) + csv(zt_sweep(21, 200));
  }
  {
    ThreadsEnv env("4");
    four = csv(prop4_sweep(21, 40)) + csv(prop5_sweep(21, 16)) + csv(zt_sweep(21, 200));
  }
  EXPECT_EQ(one, four);
}

TEST(Sweeps, ClaimsShapeAndVerdicts) {
  const auto rows = claims_sweep(1);
  EXPECT_EQ(rows.size(), 16u);  // four regimes, four scales
  for (const auto& r : rows) {
    EXPECT_EQ(r.N, 2);
    EXPECT_EQ(r.M, 100.0);
    EXPECT_LT(r.ratio1, 0.0);
  }
  const auto summary = summarize_claims(rows);
  ASSERT_EQ(summary.size(), 4u);
  for (const auto& s : summary) EXPECT_TRUE(s.passed()) << to_string(s.regime);
  expect_rectangular(csv(rows), rows.size());
}

TEST(Sweeps, ClaimsSummaryThresholds) {
  ClaimsRegimeSummary s{Regime::holder_small_p, true, 1.0, 0.0, 0.0};
  EXPECT_TRUE(s.passed());
  s.ratio2_growth = 4.0;
  EXPECT_FALSE(s.passed());
  s.ratio2_growth = 0.0;
  s.ratio1_negative = false;
  EXPECT_FALSE(s.passed());
}

TEST(Sweeps, OrderingGridHolds) {
  const auto rows = ordering_sweep();
  EXPECT_FALSE(rows.empty());
  for (const auto& r : rows) {
    EXPECT_TRUE(r.holds) << to_string(r.regime) << " p=" << r.p << " gamma=" << r.gamma;
    EXPECT_EQ(r.holds, r.tau1 < r.tau_hat && r.tau2 < r.tau_hat);
  }
  expect_rectangular(csv(rows), rows.size());
}

TEST(Sweeps, BarrierRowsCoverGrid) {
  const auto rows = barrier_sweep(33);
  ASSERT_EQ(rows.size(), 15u);
  for (const auto& r : rows) {
    EXPECT_EQ(r.n, 33);
    EXPECT_GT(r.M, 0.0);
    EXPECT_GT(r.tolerance, 0.0);
    EXPECT_EQ(r.holds, r.violation <= r.tolerance);
  }
  expect_rectangular(csv(rows), rows.size());
}
