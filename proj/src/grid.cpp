#include "pseudoplap/grid.hpp"

#include <cmath>
#include <sstream>

#include "pseudoplap/error.hpp"

namespace pseudoplap {

std::string to_string(DomainShape shape) { return shape == DomainShape::ball ? "ball" : "cube"; }

std::string to_string(NodeClass cls) {
  switch (cls) {
    case NodeClass::interior:
      return "interior";
    case NodeClass::boundary:
      return "boundary";
    case NodeClass::exterior:
      return "exterior";
  }
  return "?";
}

void GridSpec::validate() const {
  if (dimension < 1 || dimension > 3) {
    throw PreconditionError("grid dimension must be 1, 2 or 3 (got " + std::to_string(dimension) + ")");
  }
  if (nodes_per_axis < 9 || nodes_per_axis % 2 == 0) {
    throw PreconditionError("nodes per axis must be odd and >= 9 (got " + std::to_string(nodes_per_axis) + ")");
  }
}

namespace {

// Squared norm in units of (h/2)^2: sum of (2k - (n-1))^2. Exact in integers.
std::int64_t scaled_norm2(const MultiIndex& k, int dim, int n) {
  std::int64_t s = 0;
  for (int a = 0; a < dim; ++a) {
    const std::int64_t c = 2 * static_cast<std::int64_t>(k[a]) - (n - 1);
    s += c * c;
  }
  return s;
}

std::vector<NodeClass> classify(const GridSpec& spec) {
  const int dim = spec.dimension;
  const int n = spec.nodes_per_axis;
  std::size_t total = 1;
  for (int a = 0; a < dim; ++a) total *= static_cast<std::size_t>(n);

  std::vector<NodeClass> out(total, NodeClass::exterior);
  const std::int64_t radius2 = static_cast<std::int64_t>(n - 1) * (n - 1);

  MultiIndex k{0, 0, 0};
  for (std::size_t node = 0; node < total; ++node) {
    // Decode lexicographic index, axis 0 slowest.
    std::size_t rest = node;
    for (int a = dim - 1; a >= 0; --a) {
      k[a] = static_cast<int>(rest % static_cast<std::size_t>(n));
      rest /= static_cast<std::size_t>(n);
    }

    if (spec.shape == DomainShape::cube) {
      bool inside = true;
      for (int a = 0; a < dim; ++a) inside = inside && k[a] > 0 && k[a] < n - 1;
      out[node] = inside ? NodeClass::interior : NodeClass::boundary;
      continue;
    }

    const std::int64_t r2 = scaled_norm2(k, dim, n);
    if (r2 > radius2) continue;
    bool interior = r2 < radius2;
    for (int a = 0; a < dim && interior; ++a) {
      for (int step : {-1, 1}) {
        MultiIndex nb = k;
        nb[a] += step;
        if (nb[a] < 0 || nb[a] >= n || scaled_norm2(nb, dim, n) > radius2) {
          interior = false;
          break;
        }
      }
    }
    out[node] = interior ? NodeClass::interior : NodeClass::boundary;
  }
  return out;
}

}  // namespace

std::vector<NodeClass> classify_nodes(const GridSpec& spec) {
  spec.validate();
  return classify(spec);
}

Grid::Grid(GridSpec spec) : spec_(spec) {
  spec_.validate();
  strides_ = {1, 1, 1};
  for (int a = spec_.dimension - 2; a >= 0; --a) {
    strides_[a] = strides_[a + 1] * static_cast<std::size_t>(spec_.nodes_per_axis);
  }
  classes_ = classify(spec_);
}

GridPtr make_grid(const GridSpec& spec) { return std::make_shared<const Grid>(spec); }

std::size_t Grid::index(const MultiIndex& k) const {
  std::size_t idx = 0;
  for (int a = 0; a < dimension(); ++a) idx += static_cast<std::size_t>(k[a]) * strides_[a];
  return idx;
}

MultiIndex Grid::multi_index(std::size_t node) const {
  MultiIndex k{0, 0, 0};
  for (int a = 0; a < dimension(); ++a) {
    k[a] = static_cast<int>(node / strides_[a]);
    node %= strides_[a];
  }
  return k;
}

double Grid::coordinate(int k) const {
  const int n1 = n() - 1;
  return static_cast<double>(2 * k - n1) / static_cast<double>(n1);
}

std::array<double, 3> Grid::position(std::size_t node) const {
  const MultiIndex k = multi_index(node);
  std::array<double, 3> x{0.0, 0.0, 0.0};
  for (int a = 0; a < dimension(); ++a) x[a] = coordinate(k[a]);
  return x;
}

double Grid::norm(std::size_t node) const {
  const auto x = position(node);
  return std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
}

std::size_t Grid::neighbor(std::size_t node, int axis, int step) const {
  const MultiIndex k = multi_index(node);
  const int target = k[axis] + step;
  if (target < 0 || target >= n()) return npos;
  return step > 0 ? node + strides_[axis] : node - strides_[axis];
}

std::vector<std::size_t> Grid::nodes_of(NodeClass cls) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < classes_.size(); ++i) {
    if (classes_[i] == cls) out.push_back(i);
  }
  return out;
}

std::size_t Grid::count(NodeClass cls) const {
  std::size_t c = 0;
  for (NodeClass x : classes_) c += (x == cls);
  return c;
}

std::string Grid::describe(std::size_t node) const {
  std::ostringstream os;
  os << "node " << node << " (";
  const auto x = position(node);
  for (int a = 0; a < dimension(); ++a) os << (a ? ", " : "") << x[a];
  os << ")";
  return os.str();
}

std::vector<std::size_t> interior_ball_nodes(const Grid& grid, double r) {
  if (!(r > 0.0 && r < 1.0)) {
    throw PreconditionError("interior ball radius must lie in (0,1), got " + std::to_string(r));
  }
  // Compare in the exact integer scale: |x|^2 (n-1)^2 = sum (2k-(n-1))^2.
  const double n1 = static_cast<double>(grid.n() - 1);
  const double limit = r * r * n1 * n1;
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid.node_class(i) != NodeClass::interior) continue;
    const auto k = grid.multi_index(i);
    const auto s = static_cast<double>(scaled_norm2(k, grid.dimension(), grid.n()));
    if (s <= limit * (1.0 + 1e-14)) out.push_back(i);
  }
  return out;
}

ScalarField::ScalarField(GridPtr grid) : grid_(std::move(grid)), values_(grid_->size(), unset()) {}

ScalarField::ScalarField(GridPtr grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_->size()) {
    throw PreconditionError("field length " + std::to_string(values_.size()) + " does not match node count " +
                            std::to_string(grid_->size()));
  }
}

double ScalarField::sup_norm(bool include_boundary) const {
  double m = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    const NodeClass c = grid_->node_class(i);
    if (c == NodeClass::exterior || (!include_boundary && c == NodeClass::boundary)) continue;
    if (is_set(i)) m = std::max(m, std::abs(values_[i]));
  }
  return m;
}

}  // namespace pseudoplap
