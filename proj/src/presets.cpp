#include "pseudoplap/presets.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "pseudoplap/error.hpp"
#include "pseudoplap/operator.hpp"
#include "pseudoplap/random.hpp"

namespace pseudoplap {

namespace {

std::string short_real(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw PreconditionError(std::string(what) + " must be finite");
}

struct Mode {
  double amplitude;
  std::array<double, 3> wave;
  double phase;
};

constexpr int kSmoothModes = 6;

std::array<Mode, kSmoothModes> smooth_modes(std::uint64_t seed, std::uint64_t stream) {
  Rng rng = make_rng(seed, stream);
  std::array<Mode, kSmoothModes> modes{};
  for (auto& m : modes) {
    m.amplitude = uniform(rng, -1.0, 1.0);
    for (auto& k : m.wave) k = std::floor(uniform(rng, 0.0, 4.0));
    m.phase = uniform(rng, 0.0, 2.0 * std::numbers::pi);
  }
  return modes;
}

}  // namespace

std::string to_string(RhsKind k) {
  switch (k) {
    case RhsKind::constant: return "constant";
    case RhsKind::separable: return "separable";
    case RhsKind::gaussian: return "gaussian";
    case RhsKind::checkerboard: return "checkerboard";
    case RhsKind::random_smooth: return "random_smooth";
  }
  return "?";
}

std::string to_string(BoundaryKind k) {
  switch (k) {
    case BoundaryKind::zero: return "zero";
    case BoundaryKind::constant: return "constant";
    case BoundaryKind::affine: return "affine";
    case BoundaryKind::separable: return "separable";
    case BoundaryKind::trig: return "trig";
  }
  return "?";
}

std::optional<RhsKind> parse_rhs_kind(const std::string& s) {
  for (auto k : {RhsKind::constant, RhsKind::separable, RhsKind::gaussian, RhsKind::checkerboard,
                 RhsKind::random_smooth}) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

std::optional<BoundaryKind> parse_boundary_kind(const std::string& s) {
  for (auto k : {BoundaryKind::zero, BoundaryKind::constant, BoundaryKind::affine, BoundaryKind::separable,
                 BoundaryKind::trig}) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

void RhsPreset::validate() const {
  require_finite(c, "rhs constant");
  if (kind == RhsKind::gaussian && !(sigma > 0.0 && std::isfinite(sigma))) {
    throw PreconditionError("gaussian width must be positive, got " + short_real(sigma));
  }
  if (kind == RhsKind::checkerboard && cells < 1) {
    throw PreconditionError("checkerboard needs at least one cell per axis, got " + std::to_string(cells));
  }
}

std::string RhsPreset::describe() const {
  std::string s = to_string(kind) + "(c=" + short_real(c);
  if (kind == RhsKind::gaussian) s += ";sigma=" + short_real(sigma);
  if (kind == RhsKind::checkerboard) s += ";cells=" + std::to_string(cells);
  if (kind == RhsKind::gaussian || kind == RhsKind::random_smooth) {
    s += ";seed=" + std::to_string(seed) + "/" + std::to_string(stream);
  }
  return s + ")";
}

void BoundaryPreset::validate() const {
  require_finite(c, "boundary constant");
  require_finite(slope, "boundary slope");
}

std::string BoundaryPreset::describe() const {
  std::string s = to_string(kind);
  if (kind == BoundaryKind::zero) return s;
  s += "(c=" + short_real(c);
  if (kind == BoundaryKind::affine) {
    s += ";slope=" + short_real(slope) + ";seed=" + std::to_string(seed) + "/" + std::to_string(stream);
  }
  return s + ")";
}

double separable_profile(double t, double p, double c) {
  const double q = p / (p - 1.0);
  const double a = (p - 1.0) * c;
  const double amp = std::copysign(std::pow(std::abs(a), 1.0 / (p - 1.0)), a);
  return (p - 1.0) / p * amp * (std::pow(std::abs(t), q) - 1.0);
}

double separable_solution(const Point& x, int dimension, double p, double c) {
  double s = 0.0;
  for (int i = 0; i < dimension; ++i) s += separable_profile(x[i], p, c);
  return s;
}

ScalarField make_rhs(const GridPtr& grid, const RhsPreset& preset) {
  preset.validate();
  const int N = grid->dimension();
  const double c = preset.c;
  switch (preset.kind) {
    case RhsKind::constant:
      return ScalarField::from_function(grid, [c](const Point&) { return c; });
    case RhsKind::separable:
      return ScalarField::from_function(grid, [c, N](const Point&) { return N * c; });
    case RhsKind::gaussian: {
      Rng rng = make_rng(preset.seed, preset.stream);
      Point x0{};
      const Vector dir = random_unit_vector(rng, N);
      const double rad = 0.5 * std::pow(uniform(rng, 0.0, 1.0), 1.0 / N);
      for (int i = 0; i < N; ++i) x0[i] = rad * dir[i];
      const double two_s2 = 2.0 * preset.sigma * preset.sigma;
      return ScalarField::from_function(grid, [=](const Point& x) {
        double d2 = 0.0;
        for (int i = 0; i < N; ++i) d2 += (x[i] - x0[i]) * (x[i] - x0[i]);
        return c * std::exp(-d2 / two_s2);
      });
    }
    case RhsKind::checkerboard: {
      const double w = 2.0 / preset.cells;
      return ScalarField::from_function(grid, [=](const Point& x) {
        long parity = 0;
        for (int i = 0; i < N; ++i) {
          // half-open cells [-1 + j w, -1 + (j+1) w), the last one closed
          long j = static_cast<long>(std::floor((x[i] + 1.0) / w));
          if (j >= preset.cells) j = preset.cells - 1;
          parity += j;
        }
        return parity % 2 == 0 ? c : -c;
      });
    }
    case RhsKind::random_smooth: {
      const auto modes = smooth_modes(preset.seed, preset.stream);
      double total = 0.0;
      for (const auto& m : modes) total += std::abs(m.amplitude);
      if (total == 0.0) total = 1.0;
      return ScalarField::from_function(grid, [=](const Point& x) {
        double s = 0.0;
        for (const auto& m : modes) {
          double arg = m.phase;
          for (int i = 0; i < N; ++i) arg += std::numbers::pi * m.wave[i] * x[i];
          s += m.amplitude * std::cos(arg);
        }
        return c * s / total;
      });
    }
  }
  throw PreconditionError("unknown rhs preset");
}

BoundaryFunction make_boundary(const BoundaryPreset& preset, int dimension, double p) {
  preset.validate();
  const double c = preset.c;
  switch (preset.kind) {
    case BoundaryKind::zero:
      return [](const Point&) { return 0.0; };
    case BoundaryKind::constant:
      return [c](const Point&) { return c; };
    case BoundaryKind::affine: {
      Rng rng = make_rng(preset.seed, preset.stream);
      const Vector a = random_unit_vector(rng, dimension);
      Point g{};
      for (int i = 0; i < dimension; ++i) g[i] = preset.slope * a[i];
      return [c, g](const Point& x) { return c + g[0] * x[0] + g[1] * x[1] + g[2] * x[2]; };
    }
    case BoundaryKind::separable:
      require_exponent(p);
      return [=](const Point& x) { return separable_solution(x, dimension, p, c); };
    case BoundaryKind::trig:
      return [c, dimension](const Point& x) {
        double v = std::cos(std::numbers::pi * x[0]);
        if (dimension >= 2) v += std::sin(std::numbers::pi * x[1]);
        return c * v;
      };
  }
  throw PreconditionError("unknown boundary preset");
}

std::vector<RhsPreset> regularity_rhs_family(std::uint64_t seed) {
  std::vector<RhsPreset> out;
  out.push_back({RhsKind::constant, 1.0});
  out.push_back({RhsKind::constant, -2.0});
  out.push_back({RhsKind::separable, 0.5});
  RhsPreset g{RhsKind::gaussian, 4.0};
  g.sigma = 0.2;
  g.seed = seed;
  for (std::uint64_t k = 0; k < 2; ++k) {
    g.stream = k;
    out.push_back(g);
  }
  RhsPreset cb{RhsKind::checkerboard, 1.0};
  cb.cells = 2;
  out.push_back(cb);
  cb.cells = 4;
  out.push_back(cb);
  RhsPreset rs{RhsKind::random_smooth, 2.0};
  rs.seed = seed;
  for (std::uint64_t k = 0; k < 3; ++k) {
    rs.stream = 100 + k;
    out.push_back(rs);
  }
  return out;
}

}  // namespace pseudoplap
