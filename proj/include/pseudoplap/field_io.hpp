#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "pseudoplap/grid.hpp"

namespace pseudoplap {

// Field CSV layout:
//
//   [# comment lines]
//   x1,...,xN,value
//   one row per non-exterior node, lexicographic node order,
//   every number printed with 17 significant digits.
//
// Lines starting with '#' before the header are provenance comments and are
// skipped by the reader.

void write_field(std::ostream& os, const ScalarField& field, const std::string& comment = {});
void write_field(const std::filesystem::path& path, const ScalarField& field, const std::string& comment = {});

/// Read a field laid out on a known grid. Rows must match the grid's
/// non-exterior nodes in order.
ScalarField read_field(std::istream& is, const GridPtr& grid, const std::string& source = "<stream>");
ScalarField read_field(const std::filesystem::path& path, const GridPtr& grid);

/// Read a field and reconstruct its grid: N from the header, n from the
/// number of distinct first coordinates, shape from the row count.
ScalarField read_field(std::istream& is, const std::string& source = "<stream>");
ScalarField read_field(const std::filesystem::path& path);

/// Decimal text with 17 significant digits; round-trips every finite double.
std::string format_real(double v);

}  // namespace pseudoplap
