#include <gtest/gtest.h>

#include <sstream>

#include "pseudoplap/config.hpp"
#include "pseudoplap/error.hpp"

using namespace pseudoplap;

namespace {

IniDocument doc(const std::string& text) {
  std::istringstream is(text);
  return IniDocument::parse(is, "test.ini");
}

RunConfig config(const std::string& text, Subcommand cmd = Subcommand::solve) {
  return make_run_config(doc(text), cmd);
}

// Line reported by the ParseError thrown for `text`, or 0 when none is thrown.
std::size_t error_line(const std::string& text, Subcommand cmd = Subcommand::solve) {
  try {
    config(text, cmd);
  } catch (const ParseError& e) {
    EXPECT_EQ(e.source(), "test.ini");
    return e.line();
  }
  ADD_FAILURE() << "no ParseError for:\n" << text;
  return 0;
}

}  // namespace

TEST(Ini, SectionsKeysAndComments) {
  const auto d = doc("# header\n[Problem]\nP = 3   # inline\nn=33 ; also inline\n\n[rhs]\nkind = gaussian#nospace\n");
  ASSERT_TRUE(d.has("problem", "p"));
  EXPECT_EQ(d.find("problem", "p")->text, "3");
  EXPECT_EQ(d.find("problem", "p")->line, 3u);
  EXPECT_EQ(d.find("problem", "n")->text, "33");
  EXPECT_EQ(d.find("rhs", "kind")->text, "gaussian#nospace");
  EXPECT_FALSE(d.has("problem", "dimension"));
}

TEST(Ini, MalformedLinesNameTheirLine) {
  auto line = [](const std::string& text) {
    try {
      doc(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return std::size_t{0};
  };
  EXPECT_EQ(line("[problem]\np = 3\np = 4\n"), 3u);   // duplicate
  EXPECT_EQ(line("p = 3\n"), 1u);                     // outside a section
  EXPECT_EQ(line("[problem]\n\njust words\n"), 3u);  // no '='
  EXPECT_EQ(line("[problem\n"), 1u);                  // unterminated header
  EXPECT_EQ(line("[problem]\n = 3\n"), 2u);           // empty key
}

TEST(Config, DefaultsWhenEmpty) {
  const RunConfig c = config("");
  EXPECT_EQ(c.p, 3.0);
  EXPECT_EQ(c.grid.dimension, 2);
  EXPECT_EQ(c.grid.nodes_per_axis, 65);
  EXPECT_EQ(c.subcommand, Subcommand::solve);
}

TEST(Config, ReadsEverySection) {
  const RunConfig c = config(
      "[run]\nseed = 9\nout = results\nplots = false\n"
      "[problem]\np = 4.5\ndimension = 3\nn = 17\nshape = cube\n"
      "[rhs]\nkind = checkerboard\nc = -2\ncells = 3\n"
      "[boundary]\nkind = affine\nc = 1\nslope = 0.5\n"
      "[solver]\ngrad_tol = 1e-7\nmax_iters = 100\ndirection = steepest\n");
  EXPECT_EQ(c.seed, 9u);
  EXPECT_EQ(c.out, "results");
  EXPECT_FALSE(c.plots);
  EXPECT_EQ(c.p, 4.5);
  EXPECT_EQ(c.grid.dimension, 3);
  EXPECT_EQ(c.grid.nodes_per_axis, 17);
  EXPECT_EQ(c.grid.shape, DomainShape::cube);
  EXPECT_EQ(c.rhs.kind, RhsKind::checkerboard);
  EXPECT_EQ(c.rhs.c, -2.0);
  EXPECT_EQ(c.rhs.cells, 3);
  EXPECT_EQ(c.rhs.seed, 9u);
  EXPECT_EQ(c.boundary.kind, BoundaryKind::affine);
  EXPECT_EQ(c.boundary.slope, 0.5);
  EXPECT_EQ(c.solver.grad_tol, 1e-7);
  EXPECT_EQ(c.solver.max_iters, 100);
  EXPECT_EQ(c.solver.direction, DescentDirection::steepest);
}

TEST(Config, SubcommandSections) {
  const RunConfig l = config("[lemmas]\nprop4_samples = 10\nclaims = no\nbarrier_n = 33\n", Subcommand::verify_lemmas);
  EXPECT_EQ(l.lemmas.prop4_samples, 10);
  EXPECT_FALSE(l.lemmas.claims);
  EXPECT_EQ(l.lemmas.barrier_n, 33);
  const RunConfig r = config("[regularity]\ngammas = 0.3, 0.6\nlambdas = 2\nfamily = false\n",
                             Subcommand::measure_regularity);
  EXPECT_EQ(r.regularity.gammas, (std::vector<double>{0.3, 0.6}));
  EXPECT_EQ(r.regularity.lambdas, (std::vector<double>{2.0}));
  EXPECT_FALSE(r.regularity.family);
  const RunConfig v = config("[convergence]\nlevels = 17, 33\n", Subcommand::convergence_study);
  EXPECT_EQ(v.convergence.levels, (std::vector<int>{17, 33}));
  EXPECT_EQ(v.rhs.kind, RhsKind::separable);
  EXPECT_EQ(v.boundary.kind, BoundaryKind::separable);
}

TEST(Config, SemanticErrorsPointAtTheLine) {
  EXPECT_EQ(error_line("[problem]\np = 2\n"), 2u);
  EXPECT_EQ(error_line("[problem]\n\np = abc\n"), 3u);
  EXPECT_EQ(error_line("[problem]\np = 3x\n"), 2u);
  EXPECT_EQ(error_line("[problem]\nn = 64\n"), 2u);
  EXPECT_EQ(error_line("[problem]\ndimension = 4\n"), 2u);
  EXPECT_EQ(error_line("[problem]\nshape = torus\n"), 2u);
  EXPECT_EQ(error_line("[problem]\np = 3\nwidth = 2\n"), 3u);  // unknown key
  EXPECT_EQ(error_line("[extra]\nx = 1\n"), 2u);               // unknown section
  EXPECT_EQ(error_line("[rhs]\nkind = sine\n"), 2u);
  EXPECT_EQ(error_line("[run]\nplots = maybe\n"), 2u);
  EXPECT_EQ(error_line("[solver]\narmijo_c = 1.5\n"), 2u);
  EXPECT_EQ(error_line("[lemmas]\nzt_samples = -1\n", Subcommand::verify_lemmas), 2u);
  EXPECT_EQ(error_line("[regularity]\ngammas = 0.5, 1.0\n", Subcommand::measure_regularity), 2u);
  EXPECT_EQ(error_line("[convergence]\nlevels = 65, 33\n", Subcommand::convergence_study), 2u);
  EXPECT_EQ(error_line("[convergence]\nlevels = 33\n", Subcommand::convergence_study), 2u);
  EXPECT_EQ(error_line("[rhs]\nkind = gaussian\n", Subcommand::convergence_study), 2u);
}

TEST(Config, CrossFieldChecks) {
  // r must stay two cells inside the unit ball
  EXPECT_EQ(error_line("[problem]\nn = 9\n[regularity]\nr = 0.6\n", Subcommand::measure_regularity), 4u);
  EXPECT_NO_THROW(config("[problem]\nn = 9\n[regularity]\nr = 0.4\n", Subcommand::measure_regularity));
  EXPECT_EQ(error_line("[problem]\nshape = cube\n", Subcommand::measure_regularity), 2u);
}

TEST(Config, HashIgnoresOutputAndFormatting) {
  const RunConfig a = config("[problem]\np = 3\n[run]\nout = a\n");
  const RunConfig b = config("# comment\n[run]\nout = elsewhere\n\n[problem]\np=3.0\n");
  EXPECT_EQ(a.hash(), b.hash());
  EXPECT_EQ(a.hash().size(), 16u);
  EXPECT_NE(a.hash(), config("[problem]\np = 3.5\n").hash());
  EXPECT_NE(a.hash(), config("[run]\nseed = 1\n").hash());
  EXPECT_EQ(a.canonical_text().find("out"), std::string::npos);
}

TEST(Config, SeedOverrideReachesPresets) {
  RunConfig c = config("[rhs]\nkind = gaussian\nstream = 3\n");
  const std::string before = c.hash();
  c.set_seed(42);
  EXPECT_EQ(c.seed, 42u);
  EXPECT_EQ(c.rhs.seed, 42u);
  EXPECT_EQ(c.rhs.stream, 3u);
  EXPECT_EQ(c.boundary.seed, 42u);
  EXPECT_NE(c.hash(), before);
}

TEST(Config, SubcommandNames) {
  for (auto s : {Subcommand::solve, Subcommand::verify_lemmas, Subcommand::measure_regularity,
                 Subcommand::convergence_study}) {
    EXPECT_EQ(parse_subcommand(to_string(s)), s);
  }
  EXPECT_EQ(to_string(Subcommand::verify_lemmas), "verify-lemmas");
  EXPECT_FALSE(parse_subcommand("verify_lemmas").has_value());
}

TEST(Config, Fnv1a64KnownValues) {
  // published FNV-1a 64-bit test vectors
  EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ull);
  EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cull);
  EXPECT_EQ(fnv1a64("foobar"), 0x85944171f73967e8ull);
}
