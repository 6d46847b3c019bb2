#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace pseudoplap {

enum class DomainShape { ball, cube };
enum class NodeClass : std::uint8_t { interior, boundary, exterior };

std::string to_string(DomainShape shape);
std::string to_string(NodeClass cls);

/// Node-centred grid on [-1,1]^N. `nodes_per_axis` is odd so the origin is a node.
struct GridSpec {
  int dimension = 2;
  int nodes_per_axis = 65;
  DomainShape shape = DomainShape::ball;

  /// h = 2/(n-1).
  double spacing() const { return 2.0 / static_cast<double>(nodes_per_axis - 1); }

  /// Throws PreconditionError unless N in {1,2,3}, n >= 9 and n odd.
  void validate() const;

  bool operator==(const GridSpec&) const = default;
};

using MultiIndex = std::array<int, 3>;

/// Immutable grid with cached node classification. Share it via GridPtr.
class Grid {
 public:
  explicit Grid(GridSpec spec);

  const GridSpec& spec() const { return spec_; }
  int dimension() const { return spec_.dimension; }
  int n() const { return spec_.nodes_per_axis; }
  double h() const { return spec_.spacing(); }
  std::size_t size() const { return classes_.size(); }

  NodeClass node_class(std::size_t node) const { return classes_[node]; }
  std::span<const NodeClass> classes() const { return classes_; }

  /// Lexicographic index: axis 0 varies slowest.
  std::size_t index(const MultiIndex& k) const;
  MultiIndex multi_index(std::size_t node) const;

  /// Coordinate along one axis, exact at -1, 0 and 1.
  double coordinate(int k) const;
  std::array<double, 3> position(std::size_t node) const;
  double norm(std::size_t node) const;

  /// Neighbour of `node` along `axis` in direction `step` (+1 or -1);
  /// returns npos when it would leave the grid.
  std::size_t neighbor(std::size_t node, int axis, int step) const;

  /// Index distance between axis neighbours.
  std::size_t stride(int axis) const { return strides_[axis]; }

  std::vector<std::size_t> nodes_of(NodeClass cls) const;
  std::size_t count(NodeClass cls) const;

  /// Human-readable "node 17 (0.25, -0.5)" for diagnostics.
  std::string describe(std::size_t node) const;

  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

 private:
  GridSpec spec_;
  std::array<std::size_t, 3> strides_{};
  std::vector<NodeClass> classes_;
};

using GridPtr = std::shared_ptr<const Grid>;

GridPtr make_grid(const GridSpec& spec);

/// Full classification, one entry per node.
std::vector<NodeClass> classify_nodes(const GridSpec& spec);

/// Interior nodes with |x| <= r. Requires 0 < r < 1.
std::vector<std::size_t> interior_ball_nodes(const Grid& grid, double r);

/// Node-valued function. Exterior nodes hold the unset marker (quiet NaN).
class ScalarField {
 public:
  explicit ScalarField(GridPtr grid);
  ScalarField(GridPtr grid, std::vector<double> values);

  static double unset() { return std::numeric_limits<double>::quiet_NaN(); }

  const Grid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  std::size_t size() const { return values_.size(); }

  double operator[](std::size_t i) const { return values_[i]; }
  double& operator[](std::size_t i) { return values_[i]; }
  bool is_set(std::size_t i) const { return values_[i] == values_[i]; }

  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }

  /// Max |value| over nodes of the given class (interior and boundary by default).
  double sup_norm(bool include_boundary = true) const;

  /// Evaluate `fn(position)` on interior (and optionally boundary) nodes.
  template <class Fn>
  static ScalarField from_function(GridPtr grid, Fn&& fn, bool include_boundary = true) {
    ScalarField out(grid);
    for (std::size_t i = 0; i < grid->size(); ++i) {
      const NodeClass c = grid->node_class(i);
      if (c == NodeClass::interior || (include_boundary && c == NodeClass::boundary)) {
        out.values_[i] = fn(grid->position(i));
      }
    }
    return out;
  }

 private:
  GridPtr grid_;
  std::vector<double> values_;
};

}  // namespace pseudoplap
