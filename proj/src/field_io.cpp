#include "pseudoplap/field_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <vector>

#include "pseudoplap/error.hpp"

namespace pseudoplap {

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_field(std::ostream& os, const ScalarField& field, const std::string& comment) {
  const Grid& grid = field.grid();
  if (!comment.empty()) os << "# " << comment << '\n';
  for (int a = 0; a < grid.dimension(); ++a) os << 'x' << (a + 1) << ',';
  os << "value\n";
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid.node_class(i) == NodeClass::exterior) continue;
    if (!field.is_set(i) || !std::isfinite(field[i])) {
      throw PreconditionError("cannot write field: " + grid.describe(i) + " has no finite value");
    }
    const auto x = grid.position(i);
    for (int a = 0; a < grid.dimension(); ++a) os << format_real(x[a]) << ',';
    os << format_real(field[i]) << '\n';
  }
}

void write_field(const std::filesystem::path& path, const ScalarField& field, const std::string& comment) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_field(os, field, comment);
  if (!os) throw std::runtime_error("write failed: " + path.string());
}

namespace {

struct Row {
  std::size_t line;
  std::vector<double> cells;
};

struct RawTable {
  int dimension = 0;
  std::vector<Row> rows;
};

double parse_cell(const std::string& text, const std::string& source, std::size_t line) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  while (first < last && (*first == ' ' || *first == '\t')) ++first;
  while (last > first && (last[-1] == ' ' || last[-1] == '\t' || last[-1] == '\r')) --last;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) {
    throw ParseError(source, line, "not a number: '" + text + "'");
  }
  if (!std::isfinite(v)) throw ParseError(source, line, "non-finite value '" + text + "'");
  return v;
}

RawTable read_table(std::istream& is, const std::string& source) {
  RawTable table;
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (!have_header) {
      if (line[0] == '#') continue;
      std::vector<std::string> names;
      std::stringstream ss(line);
      for (std::string cell; std::getline(ss, cell, ',');) names.push_back(cell);
      const int dim = static_cast<int>(names.size()) - 1;
      if (dim < 1 || dim > 3 || names.back() != "value") {
        throw ParseError(source, lineno, "expected header 'x1,...,xN,value' with N in 1..3");
      }
      for (int a = 0; a < dim; ++a) {
        if (names[a] != "x" + std::to_string(a + 1)) {
          throw ParseError(source, lineno, "header column " + std::to_string(a + 1) + " should be x" +
                                               std::to_string(a + 1));
        }
      }
      table.dimension = dim;
      have_header = true;
      continue;
    }
    Row row{lineno, {}};
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) row.cells.push_back(parse_cell(cell, source, lineno));
    if (static_cast<int>(row.cells.size()) != table.dimension + 1) {
      throw ParseError(source, lineno, "expected " + std::to_string(table.dimension + 1) + " columns, got " +
                                           std::to_string(row.cells.size()));
    }
    table.rows.push_back(std::move(row));
  }
  if (!have_header) throw ParseError(source, 0, "missing header line");
  if (table.rows.empty()) throw ParseError(source, lineno, "empty field: header without data rows");
  return table;
}

ScalarField assemble(const RawTable& table, const GridPtr& grid, const std::string& source) {
  if (table.dimension != grid->dimension()) {
    throw ParseError(source, 1, "dimension mismatch: file has " + std::to_string(table.dimension) +
                                    " coordinates, grid has " + std::to_string(grid->dimension()));
  }
  ScalarField field(grid);
  const double tol = 1e-12;
  std::size_t r = 0;
  for (std::size_t i = 0; i < grid->size(); ++i) {
    if (grid->node_class(i) == NodeClass::exterior) continue;
    if (r >= table.rows.size()) {
      throw ParseError(source, table.rows.back().line, "too few rows: grid has more non-exterior nodes");
    }
    const Row& row = table.rows[r++];
    const auto x = grid->position(i);
    for (int a = 0; a < grid->dimension(); ++a) {
      if (std::abs(row.cells[a] - x[a]) > tol) {
        throw ParseError(source, row.line, "coordinates do not match " + grid->describe(i));
      }
    }
    field[i] = row.cells.back();
  }
  if (r != table.rows.size()) throw ParseError(source, table.rows[r].line, "extra row beyond the grid's nodes");
  return field;
}

}  // namespace

ScalarField read_field(std::istream& is, const GridPtr& grid, const std::string& source) {
  return assemble(read_table(is, source), grid, source);
}

ScalarField read_field(const std::filesystem::path& path, const GridPtr& grid) {
  std::ifstream is(path);
  if (!is) throw ParseError(path.string(), 0, "cannot open file");
  return read_field(is, grid, path.string());
}

ScalarField read_field(std::istream& is, const std::string& source) {
  const RawTable table = read_table(is, source);
  std::set<double> first_axis;
  for (const Row& row : table.rows) first_axis.insert(row.cells[0]);
  GridSpec spec;
  spec.dimension = table.dimension;
  spec.nodes_per_axis = static_cast<int>(first_axis.size());
  std::size_t full = 1;
  for (int a = 0; a < spec.dimension; ++a) full *= first_axis.size();
  spec.shape = table.rows.size() == full ? DomainShape::cube : DomainShape::ball;
  try {
    spec.validate();
  } catch (const PreconditionError& e) {
    throw ParseError(source, 0, std::string("cannot infer grid: ") + e.what());
  }
  return assemble(table, make_grid(spec), source);
}

ScalarField read_field(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw ParseError(path.string(), 0, "cannot open file");
  return read_field(is, path.string());
}

}  // namespace pseudoplap
