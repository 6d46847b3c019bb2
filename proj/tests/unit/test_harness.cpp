#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "pseudoplap/field_io.hpp"
#include "pseudoplap/harness.hpp"

using namespace pseudoplap;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("pseudoplap_harness_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

fs::path write_config(const fs::path& dir, const std::string& text) {
  const fs::path path = dir / "run.ini";
  std::ofstream(path) << text;
  return path;
}

std::string slurp(const fs::path& path) {
  std::ifstream is(path, std::ios::binary);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

int cli(std::vector<std::string> args, std::string* out_text = nullptr, std::string* err_text = nullptr) {
  args.insert(args.begin(), "pseudoplap");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
  if (out_text) *out_text = out.str();
  if (err_text) *err_text = err.str();
  return code;
}

}  // namespace

TEST(Harness, ZeroDataSolvesToZero) {
  const auto dir = scratch("zero");
  const auto cfg = write_config(dir, "[problem]\nn = 17\n[rhs]\nkind = constant\nc = 0\n[boundary]\nkind = zero\n");
  ASSERT_EQ(cli({"solve", "--config", cfg.string(), "--out", dir.string()}), exit_ok);
  const ScalarField u = read_field(dir / "u.csv");
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u.grid().node_class(i) == NodeClass::exterior) continue;
    EXPECT_EQ(u[i], 0.0);
  }
  const std::string report = slurp(dir / "solve_report.csv");
  EXPECT_EQ(report.rfind("# pseudoplap ", 0), 0u);
}

TEST(Harness, ArtifactsCarryTheConfigHash) {
  const auto dir = scratch("hash");
  const auto cfg = write_config(dir, "[problem]\nn = 17\n");
  RunConfig rc = make_run_config(IniDocument::load(cfg), Subcommand::solve);
  rc.out = dir;
  std::ostringstream log;
  const RunOutcome outcome = run(rc, log);
  EXPECT_TRUE(outcome.passed());
  ASSERT_EQ(outcome.artifacts.size(), 2u);
  for (const auto& a : outcome.artifacts) {
    EXPECT_EQ(slurp(a).rfind("# " + provenance_line(rc) + "\n", 0), 0u) << a;
  }
  EXPECT_NE(log.str().find("PASS solver_converged"), std::string::npos);
}

TEST(Harness, ExitCodes) {
  const auto dir = scratch("codes");
  std::string err;
  EXPECT_EQ(cli({}, nullptr, &err), exit_config_error);
  EXPECT_EQ(cli({"solve"}, nullptr, &err), exit_config_error);
  EXPECT_EQ(cli({"bogus", "--config", "x"}, nullptr, &err), exit_config_error);
  EXPECT_EQ(cli({"solve", "--config", (dir / "missing.ini").string()}, nullptr, &err), exit_config_error);
  const auto bad = write_config(dir, "[problem]\np = 1.5\n");
  EXPECT_EQ(cli({"solve", "--config", bad.string()}, nullptr, &err), exit_config_error);
  EXPECT_NE(err.find("run.ini:2:"), std::string::npos) << err;
  EXPECT_EQ(cli({"solve", "--config", bad.string(), "--seed", "abc"}, nullptr, &err), exit_config_error);
  std::string help;
  EXPECT_EQ(cli({"--help"}, &help), exit_ok);
  EXPECT_NE(help.find("verify-lemmas"), std::string::npos);
  // a solve that cannot converge in two iterations fails its check
  const auto tight = write_config(dir, "[problem]\nn = 17\n[rhs]\nkind = gaussian\n[solver]\nmax_iters = 2\n");
  EXPECT_EQ(cli({"solve", "--config", tight.string(), "--out", (dir / "o").string()}, nullptr, &err),
            exit_check_failed);
  EXPECT_NE(err.find("solver_converged"), std::string::npos);
}

TEST(Harness, VerifyLemmasIsDeterministic) {
  const auto dir = scratch("lemmas");
  const auto cfg = write_config(dir,
                                "[lemmas]\nprop4_samples = 40\nprop5_samples = 20\nzt_samples = 200\n"
                                "barrier_n = 33\n");
  ASSERT_EQ(cli({"verify-lemmas", "--config", cfg.string(), "--out", (dir / "a").string(), "--seed", "5"}), exit_ok);
  setenv("PSEUDOPLAP_THREADS", "3", 1);
  ASSERT_EQ(cli({"verify-lemmas", "--config", cfg.string(), "--out", (dir / "b").string(), "--seed", "5"}), exit_ok);
  unsetenv("PSEUDOPLAP_THREADS");
  std::size_t files = 0;
  for (const auto& e : fs::directory_iterator(dir / "a")) {
    EXPECT_EQ(slurp(e.path()), slurp(dir / "b" / e.path().filename())) << e.path().filename();
    ++files;
  }
  EXPECT_EQ(files, 7u);
  ASSERT_EQ(cli({"verify-lemmas", "--config", cfg.string(), "--out", (dir / "c").string(), "--seed", "6"}), exit_ok);
  EXPECT_NE(slurp(dir / "a" / "zt.csv"), slurp(dir / "c" / "zt.csv"));
}

TEST(Harness, ConvergenceStudyOneDimension) {
  const auto dir = scratch("conv");
  const auto cfg = write_config(dir,
                                "[problem]\np = 3\ndimension = 1\n[rhs]\nc = 1\n[solver]\ngrad_tol = 1e-11\n"
                                "max_iters = 50000\n[convergence]\nlevels = 33, 65, 129\nmin_order = 0.8\n");
  std::string out;
  ASSERT_EQ(cli({"convergence-study", "--config", cfg.string(), "--out", dir.string()}, &out), exit_ok) << out;
  const std::string table = slurp(dir / "convergence.csv");
  EXPECT_NE(table.find("n,h,error,order,iterations,converged"), std::string::npos);
  EXPECT_TRUE(fs::exists(dir / "error_vs_h.svg"));
}

TEST(Harness, RegularitySingleRhs) {
  const auto dir = scratch("reg");
  const auto cfg = write_config(dir,
                                "[problem]\nn = 33\n[rhs]\nkind = constant\nc = 1\n[solver]\ngrad_tol = 1e-11\n"
                                "[regularity]\nfamily = false\nlambdas = 0.5, 3\n");
  std::string out;
  ASSERT_EQ(cli({"measure-regularity", "--config", cfg.string(), "--out", dir.string()}, &out), exit_ok) << out;
  for (const char* f : {"regularity.csv", "scaling.csv", "regularity_summary.csv", "ratio_vs_scale.svg"}) {
    EXPECT_TRUE(fs::exists(dir / f)) << f;
  }
}

TEST(Svg, WellFormedAndLogSafe) {
  const std::string svg = svg_line_plot("a < b & c", "x", "y", {{"s1", {0.0, 0.1, 1.0, 10.0}, {1.0, 2.0, -1.0, 4.0}}},
                                        true, true);
  EXPECT_EQ(svg.rfind("<svg ", 0), 0u);
  EXPECT_NE(svg.find("</svg>\n"), std::string::npos);
  EXPECT_NE(svg.find("a &lt; b &amp; c"), std::string::npos);
  // points with x <= 0 or y <= 0 are dropped on log axes: two remain
  const auto pts = svg.find("points=\"");
  ASSERT_NE(pts, std::string::npos);
  const auto end = svg.find('"', pts + 8);
  const std::string list = svg.substr(pts + 8, end - pts - 8);
  EXPECT_EQ(std::count(list.begin(), list.end(), ','), 2);
  EXPECT_NE(svg.find(">1e-1<"), std::string::npos);
  EXPECT_EQ(svg, svg_line_plot("a < b & c", "x", "y", {{"s1", {0.0, 0.1, 1.0, 10.0}, {1.0, 2.0, -1.0, 4.0}}}, true,
                               true));
}
