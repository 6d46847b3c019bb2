#include "pseudoplap/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "pseudoplap/error.hpp"
#include "pseudoplap/field_io.hpp"

namespace pseudoplap {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

}  // namespace

// ---------------------------------------------------------------- INI

IniDocument IniDocument::parse(std::istream& is, const std::string& source) {
  IniDocument doc;
  doc.source_ = source;
  std::string section;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(is, raw)) {
    ++line;
    std::string s = trim(raw);
    if (s.empty() || s[0] == '#' || s[0] == ';') continue;
    if (s.front() == '[') {
      if (s.back() != ']') throw ParseError(source, line, "unterminated section header '" + s + "'");
      section = lower(trim(s.substr(1, s.size() - 2)));
      if (section.empty()) throw ParseError(source, line, "empty section name");
      doc.sections_[section];
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ParseError(source, line, "expected 'key = value', got '" + s + "'");
    if (section.empty()) throw ParseError(source, line, "key outside of any [section]");
    const std::string key = lower(trim(s.substr(0, eq)));
    std::string value = trim(s.substr(eq + 1));
    // trailing comments need a space before the marker so values may contain '#'
    for (const char* marker : {" #", " ;", "\t#", "\t;"}) {
      const auto c = value.find(marker);
      if (c != std::string::npos) value = trim(value.substr(0, c));
    }
    if (key.empty()) throw ParseError(source, line, "empty key");
    auto& entries = doc.sections_[section];
    if (entries.count(key)) {
      throw ParseError(source, line,
                       "duplicate key '" + key + "' (first set on line " + std::to_string(entries[key].line) + ")");
    }
    entries[key] = {value, line};
  }
  return doc;
}

IniDocument IniDocument::load(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw ParseError(path.string(), 0, "cannot open config file");
  return parse(is, path.string());
}

bool IniDocument::has(const std::string& section, const std::string& key) const { return find(section, key) != nullptr; }

const IniValue* IniDocument::find(const std::string& section, const std::string& key) const {
  const auto s = sections_.find(section);
  if (s == sections_.end()) return nullptr;
  const auto k = s->second.find(key);
  return k == s->second.end() ? nullptr : &k->second;
}

// ---------------------------------------------------------------- RunConfig

std::string to_string(Subcommand s) {
  switch (s) {
    case Subcommand::solve: return "solve";
    case Subcommand::verify_lemmas: return "verify-lemmas";
    case Subcommand::measure_regularity: return "measure-regularity";
    case Subcommand::convergence_study: return "convergence-study";
  }
  return "?";
}

std::optional<Subcommand> parse_subcommand(const std::string& s) {
  for (auto c : {Subcommand::solve, Subcommand::verify_lemmas, Subcommand::measure_regularity,
                 Subcommand::convergence_study}) {
    if (to_string(c) == s) return c;
  }
  return std::nullopt;
}

std::uint64_t fnv1a64(const std::string& data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

namespace {

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ";" : "") + format_real(v[i]);
  return s;
}

std::string join(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ";" : "") + std::to_string(v[i]);
  return s;
}

}  // namespace

void RunConfig::set_seed(std::uint64_t s) {
  seed = s;
  rhs.seed = s;
  boundary.seed = s;
}

std::string RunConfig::canonical_text() const {
  std::ostringstream os;
  auto put = [&](const char* key, const std::string& v) { os << key << " = " << v << '\n'; };
  auto real = [](double v) { return format_real(v); };
  put("run.subcommand", to_string(subcommand));
  put("run.seed", std::to_string(seed));
  put("run.plots", plots ? "true" : "false");
  put("problem.p", real(p));
  put("problem.dimension", std::to_string(grid.dimension));
  put("problem.n", std::to_string(grid.nodes_per_axis));
  put("problem.shape", to_string(grid.shape));
  put("rhs", rhs.describe());
  put("boundary", boundary.describe());
  put("solver.grad_tol", real(solver.grad_tol));
  put("solver.max_iters", std::to_string(solver.max_iters));
  put("solver.armijo_c", real(solver.armijo_c));
  put("solver.backtrack_factor", real(solver.backtrack_factor));
  put("solver.direction", to_string(solver.direction));
  switch (subcommand) {
    case Subcommand::solve:
      break;
    case Subcommand::verify_lemmas:
      put("lemmas.prop4_samples", std::to_string(lemmas.prop4_samples));
      put("lemmas.prop5_samples", std::to_string(lemmas.prop5_samples));
      put("lemmas.zt_samples", std::to_string(lemmas.zt_samples));
      put("lemmas.claims", lemmas.claims ? "true" : "false");
      put("lemmas.ordering", lemmas.ordering ? "true" : "false");
      put("lemmas.barrier", lemmas.barrier ? "true" : "false");
      put("lemmas.barrier_n", std::to_string(lemmas.barrier_n));
      break;
    case Subcommand::measure_regularity:
      put("regularity.r", real(regularity.r));
      put("regularity.gammas", join(regularity.gammas));
      put("regularity.family", regularity.family ? "true" : "false");
      put("regularity.lambdas", join(regularity.lambdas));
      put("regularity.scaling_tol", real(regularity.scaling_tol));
      break;
    case Subcommand::convergence_study:
      put("convergence.levels", join(convergence.levels));
      put("convergence.min_order", real(convergence.min_order));
      break;
  }
  return os.str();
}

std::string RunConfig::hash() const {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(canonical_text())));
  return buf;
}

namespace {

// Typed access to one document with line-accurate diagnostics.
class Reader {
 public:
  explicit Reader(const IniDocument& doc) : doc_(doc) {}

  [[noreturn]] void fail(const IniValue& v, const std::string& what) const {
    throw ParseError(doc_.source(), v.line, what);
  }

  const IniValue* get(const std::string& section, const std::string& key) {
    used_.insert(section + "." + key);
    return doc_.find(section, key);
  }

  template <class T, class Check>
  void number(const std::string& section, const std::string& key, T& out, Check&& check, const char* rule) {
    const IniValue* v = get(section, key);
    if (!v) return;
    T parsed{};
    const char* b = v->text.data();
    const char* e = b + v->text.size();
    const auto [ptr, ec] = std::from_chars(b, e, parsed);
    if (ec != std::errc() || ptr != e || v->text.empty()) {
      fail(*v, section + "." + key + ": cannot parse '" + v->text + "' as a number");
    }
    if constexpr (std::is_floating_point_v<T>) {
      if (!std::isfinite(parsed)) fail(*v, section + "." + key + ": value must be finite");
    }
    if (!check(parsed)) fail(*v, section + "." + key + " = " + v->text + ": " + rule);
    out = parsed;
  }

  void boolean(const std::string& section, const std::string& key, bool& out) {
    const IniValue* v = get(section, key);
    if (!v) return;
    const std::string t = lower(v->text);
    if (t == "true" || t == "yes" || t == "1" || t == "on") {
      out = true;
    } else if (t == "false" || t == "no" || t == "0" || t == "off") {
      out = false;
    } else {
      fail(*v, section + "." + key + ": expected true or false, got '" + v->text + "'");
    }
  }

  template <class T, class Check>
  void list(const std::string& section, const std::string& key, std::vector<T>& out, Check&& check,
            const char* rule) {
    const IniValue* v = get(section, key);
    if (!v) return;
    std::vector<T> items;
    std::string item;
    std::istringstream is(v->text);
    while (std::getline(is, item, ',')) {
      item = trim(item);
      T parsed{};
      const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), parsed);
      if (item.empty() || ec != std::errc() || ptr != item.data() + item.size()) {
        fail(*v, section + "." + key + ": cannot parse list entry '" + item + "'");
      }
      if (!check(parsed)) fail(*v, section + "." + key + ": entry " + item + " invalid: " + rule);
      items.push_back(parsed);
    }
    if (items.empty()) fail(*v, section + "." + key + ": list is empty");
    out = std::move(items);
  }

  void text(const std::string& section, const std::string& key, std::string& out) {
    if (const IniValue* v = get(section, key)) out = v->text;
  }

  // Unknown sections and keys are errors: a typo must not silently fall back to a default.
  void reject_unused() const {
    for (const auto& [section, entries] : doc_.sections()) {
      for (const auto& [key, value] : entries) {
        if (!used_.count(section + "." + key)) {
          throw ParseError(doc_.source(), value.line, "unknown setting '" + key + "' in [" + section + "]");
        }
      }
    }
  }

  const IniDocument& doc() const { return doc_; }

 private:
  const IniDocument& doc_;
  std::set<std::string> used_;
};

auto positive = [](auto v) { return v > 0; };

}  // namespace

RunConfig make_run_config(const IniDocument& doc, Subcommand subcommand) {
  RunConfig cfg;
  cfg.subcommand = subcommand;
  Reader rd(doc);

  // [run]
  rd.number("run", "seed", cfg.seed, [](std::uint64_t) { return true; }, "");
  std::string out;
  rd.text("run", "out", out);
  if (!out.empty()) cfg.out = out;
  rd.boolean("run", "plots", cfg.plots);

  // [problem]
  rd.number("problem", "p", cfg.p, [](double p) { return p > 2.0; }, "p must exceed 2");
  rd.number("problem", "dimension", cfg.grid.dimension, [](int d) { return d >= 1 && d <= 3; }, "dimension must be 1, 2 or 3");
  rd.number("problem", "n", cfg.grid.nodes_per_axis, [](int n) { return n >= 9 && n % 2 == 1; },
            "nodes per axis must be odd and >= 9");
  if (const IniValue* v = rd.get("problem", "shape")) {
    if (v->text == "ball") {
      cfg.grid.shape = DomainShape::ball;
    } else if (v->text == "cube") {
      cfg.grid.shape = DomainShape::cube;
    } else {
      rd.fail(*v, "problem.shape: expected ball or cube, got '" + v->text + "'");
    }
  }

  // [rhs]
  if (const IniValue* v = rd.get("rhs", "kind")) {
    const auto k = parse_rhs_kind(v->text);
    if (!k) rd.fail(*v, "rhs.kind: unknown preset '" + v->text + "'");
    cfg.rhs.kind = *k;
  }
  rd.number("rhs", "c", cfg.rhs.c, [](double) { return true; }, "");
  rd.number("rhs", "sigma", cfg.rhs.sigma, positive, "sigma must be positive");
  rd.number("rhs", "cells", cfg.rhs.cells, positive, "cells must be positive");
  std::uint64_t rhs_stream = 0;
  rd.number("rhs", "stream", rhs_stream, [](std::uint64_t) { return true; }, "");
  cfg.rhs.stream = rhs_stream;

  // [boundary]
  if (const IniValue* v = rd.get("boundary", "kind")) {
    const auto k = parse_boundary_kind(v->text);
    if (!k) rd.fail(*v, "boundary.kind: unknown preset '" + v->text + "'");
    cfg.boundary.kind = *k;
  }
  rd.number("boundary", "c", cfg.boundary.c, [](double) { return true; }, "");
  rd.number("boundary", "slope", cfg.boundary.slope, [](double) { return true; }, "");
  cfg.boundary.stream = 1;
  cfg.set_seed(cfg.seed);

  // [solver]
  rd.number("solver", "grad_tol", cfg.solver.grad_tol, positive, "grad_tol must be positive");
  rd.number("solver", "max_iters", cfg.solver.max_iters, positive, "max_iters must be positive");
  rd.number("solver", "armijo_c", cfg.solver.armijo_c, [](double c) { return c > 0.0 && c < 1.0; },
            "armijo_c must lie in (0,1)");
  rd.number("solver", "backtrack_factor", cfg.solver.backtrack_factor, [](double c) { return c > 0.0 && c < 1.0; },
            "backtrack_factor must lie in (0,1)");
  if (const IniValue* v = rd.get("solver", "direction")) {
    if (v->text == "steepest") {
      cfg.solver.direction = DescentDirection::steepest;
    } else if (v->text == "polak_ribiere") {
      cfg.solver.direction = DescentDirection::polak_ribiere;
    } else {
      rd.fail(*v, "solver.direction: expected steepest or polak_ribiere, got '" + v->text + "'");
    }
  }

  // [lemmas]
  auto& lm = cfg.lemmas;
  rd.number("lemmas", "prop4_samples", lm.prop4_samples, positive, "sample counts must be positive");
  rd.number("lemmas", "prop5_samples", lm.prop5_samples, positive, "sample counts must be positive");
  rd.number("lemmas", "zt_samples", lm.zt_samples, positive, "sample counts must be positive");
  rd.boolean("lemmas", "claims", lm.claims);
  rd.boolean("lemmas", "ordering", lm.ordering);
  rd.boolean("lemmas", "barrier", lm.barrier);
  rd.number("lemmas", "barrier_n", lm.barrier_n, [](int n) { return n >= 9 && n % 2 == 1; },
            "nodes per axis must be odd and >= 9");

  // [regularity]
  auto& rg = cfg.regularity;
  const IniValue* rv = doc.find("regularity", "r");
  rd.number("regularity", "r", rg.r, [](double r) { return r > 0.0 && r < 1.0; }, "r must lie in (0,1)");
  rd.list("regularity", "gammas", rg.gammas, [](double g) { return g > 0.0 && g < 1.0; }, "gamma must lie in (0,1)");
  rd.boolean("regularity", "family", rg.family);
  rd.list("regularity", "lambdas", rg.lambdas, positive, "lambda must be positive");
  rd.number("regularity", "scaling_tol", rg.scaling_tol, positive, "scaling_tol must be positive");

  // [convergence]
  auto& cv = cfg.convergence;
  const IniValue* lv = doc.find("convergence", "levels");
  rd.list("convergence", "levels", cv.levels, [](int n) { return n >= 9 && n % 2 == 1; },
          "nodes per axis must be odd and >= 9");
  rd.number("convergence", "min_order", cv.min_order, [](double) { return true; }, "");

  rd.reject_unused();

  // Cross-field checks, reported at the line of the setting that has to change.
  auto line_of = [&](const char* section, const char* key) {
    const IniValue* v = doc.find(section, key);
    return v ? v->line : std::size_t{0};
  };
  try {
    cfg.grid.validate();
    cfg.rhs.validate();
    cfg.boundary.validate();
    cfg.solver.validate();
  } catch (const PreconditionError& e) {
    throw ParseError(doc.source(), 0, e.what());
  }
  if (subcommand == Subcommand::measure_regularity) {
    const double h = cfg.grid.spacing();
    if (!(rg.r < 1.0 - 2.0 * h)) {
      throw ParseError(doc.source(), rv ? rv->line : line_of("problem", "n"),
                       "regularity.r = " + format_real(rg.r) + " must be below 1 - 2h = " + format_real(1.0 - 2.0 * h));
    }
    if (cfg.grid.shape != DomainShape::ball) {
      throw ParseError(doc.source(), line_of("problem", "shape"), "measure-regularity needs shape = ball");
    }
  }
  if (subcommand == Subcommand::convergence_study) {
    if (cv.levels.size() < 2) {
      throw ParseError(doc.source(), lv ? lv->line : 0, "convergence.levels needs at least two grids");
    }
    if (!std::is_sorted(cv.levels.begin(), cv.levels.end()) ||
        std::adjacent_find(cv.levels.begin(), cv.levels.end()) != cv.levels.end()) {
      throw ParseError(doc.source(), lv ? lv->line : 0, "convergence.levels must be strictly increasing");
    }
    // the study always runs the separable manufactured pair with amplitude rhs.c
    if (doc.has("rhs", "kind") && cfg.rhs.kind != RhsKind::separable) {
      throw ParseError(doc.source(), line_of("rhs", "kind"), "convergence-study needs rhs.kind = separable");
    }
    if (doc.has("boundary", "kind") && cfg.boundary.kind != BoundaryKind::separable) {
      throw ParseError(doc.source(), line_of("boundary", "kind"), "convergence-study needs boundary.kind = separable");
    }
    cfg.rhs.kind = RhsKind::separable;
    cfg.boundary.kind = BoundaryKind::separable;
    cfg.boundary.c = cfg.rhs.c;
  }
  return cfg;
}

}  // namespace pseudoplap
