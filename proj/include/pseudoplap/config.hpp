#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pseudoplap/grid.hpp"
#include "pseudoplap/presets.hpp"
#include "pseudoplap/solver.hpp"

namespace pseudoplap {

// Plain-text config: "[section]" headers, "key = value" lines, '#' or ';'
// comments. Every value remembers its line so semantic errors can point at it.

struct IniValue {
  std::string text;
  std::size_t line = 0;
};

class IniDocument {
 public:
  static IniDocument parse(std::istream& is, const std::string& source);
  static IniDocument load(const std::filesystem::path& path);

  const std::string& source() const { return source_; }
  bool has(const std::string& section, const std::string& key) const;
  const IniValue* find(const std::string& section, const std::string& key) const;
  const std::map<std::string, std::map<std::string, IniValue>>& sections() const { return sections_; }

 private:
  std::string source_;
  std::map<std::string, std::map<std::string, IniValue>> sections_;
};

enum class Subcommand { solve, verify_lemmas, measure_regularity, convergence_study };
std::string to_string(Subcommand s);
std::optional<Subcommand> parse_subcommand(const std::string& s);

struct LemmaConfig {
  long prop4_samples = 1000;  // per branch
  long prop5_samples = 500;
  long zt_samples = 10000;
  bool claims = true;
  bool ordering = true;
  bool barrier = true;
  int barrier_n = 65;
};

struct RegularityConfig {
  double r = 0.5;
  std::vector<double> gammas{0.25, 0.5, 0.75};
  bool family = true;  // ten-member rhs family instead of the [rhs] preset
  std::vector<double> lambdas{0.1, 10.0};
  double scaling_tol = 1e-6;
};

struct ConvergenceConfig {
  std::vector<int> levels{33, 65, 129};
  double min_order = 0.8;
};

struct RunConfig {
  Subcommand subcommand = Subcommand::solve;
  double p = 3.0;
  GridSpec grid{2, 65, DomainShape::ball};
  RhsPreset rhs;
  BoundaryPreset boundary;
  SolveConfig solver;
  std::filesystem::path out = "out";
  std::uint64_t seed = 0;
  bool plots = true;
  LemmaConfig lemmas;
  RegularityConfig regularity;
  ConvergenceConfig convergence;

  /// Sets the run seed and the preset seeds derived from it.
  void set_seed(std::uint64_t s);

  /// Every setting except the output directory, one "section.key = value"
  /// per line in a fixed order.
  std::string canonical_text() const;
  /// FNV-1a 64 of canonical_text(), as 16 hex digits.
  std::string hash() const;
};

/// Builds and validates a RunConfig. Unknown sections or keys, malformed
/// numbers and out-of-range values throw ParseError naming the line.
RunConfig make_run_config(const IniDocument& doc, Subcommand subcommand);

std::uint64_t fnv1a64(const std::string& data);

}  // namespace pseudoplap
