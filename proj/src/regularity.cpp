#include "pseudoplap/regularity.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include "pseudoplap/error.hpp"
#include "pseudoplap/field_io.hpp"
#include "pseudoplap/parallel.hpp"
#include "pseudoplap/solver.hpp"

namespace pseudoplap {

namespace {

struct BallSample {
  std::vector<std::size_t> nodes;
  std::vector<Point> x;
  std::vector<double> u;
};

BallSample ball_sample(const ScalarField& u, double r) {
  const Grid& grid = u.grid();
  if (!(r < 1.0 - 2.0 * grid.h())) {
    throw PreconditionError("seminorm radius must be below 1 - 2h = " + format_real(1.0 - 2.0 * grid.h()) +
                            ", got " + format_real(r));
  }
  BallSample s;
  s.nodes = interior_ball_nodes(grid, r);
  if (s.nodes.size() < 2) {
    throw PreconditionError("ball of radius " + format_real(r) + " holds fewer than two interior nodes");
  }
  for (auto i : s.nodes) {
    if (!u.is_set(i)) throw PreconditionError("field is unset at " + grid.describe(i));
    s.x.push_back(grid.position(i));
    s.u.push_back(u[i]);
  }
  return s;
}

double distance(const Point& a, const Point& b) {
  return std::sqrt((a[0] - b[0]) * (a[0] - b[0]) + (a[1] - b[1]) * (a[1] - b[1]) + (a[2] - b[2]) * (a[2] - b[2]));
}

void take(PairMax& best, double q, std::size_t a, std::size_t b) {
  if (q > best.value) best = {q, a, b};
}

std::string short_gamma(double g) {
  std::ostringstream os;
  os.precision(6);
  os << g;
  return os.str();
}

}  // namespace

double node_distance(const Grid& grid, std::size_t a, std::size_t b) {
  return distance(grid.position(a), grid.position(b));
}

Seminorms seminorm_scan(const ScalarField& u, double r, const std::vector<double>& gammas) {
  for (double g : gammas) {
    if (!(g > 0.0 && g < 1.0)) throw PreconditionError("Hölder exponent must lie in (0,1), got " + format_real(g));
  }
  const BallSample s = ball_sample(u, r);
  const std::size_t m = s.nodes.size();
  // one slot per row i (pairs i < j); reducing rows in order keeps the
  // reported pair independent of scheduling
  std::vector<Seminorms> rows(m);
  parallel_for(m, [&](std::size_t i) {
    Seminorms& row = rows[i];
    row.holder.assign(gammas.size(), {});
    for (std::size_t j = i + 1; j < m; ++j) {
      const double d = distance(s.x[i], s.x[j]);
      const double du = std::abs(s.u[i] - s.u[j]);
      take(row.lipschitz, du / d, s.nodes[i], s.nodes[j]);
      for (std::size_t k = 0; k < gammas.size(); ++k) {
        take(row.holder[k], du / std::pow(d, gammas[k]), s.nodes[i], s.nodes[j]);
      }
    }
  });
  Seminorms out;
  out.holder.assign(gammas.size(), {});
  for (const auto& row : rows) {
    take(out.lipschitz, row.lipschitz.value, row.lipschitz.a, row.lipschitz.b);
    for (std::size_t k = 0; k < gammas.size(); ++k) {
      take(out.holder[k], row.holder[k].value, row.holder[k].a, row.holder[k].b);
    }
  }
  // constant fields: report the first pair so callers always get valid nodes
  if (out.lipschitz.value == 0.0) out.lipschitz = {0.0, s.nodes[0], s.nodes[1]};
  for (auto& h : out.holder) {
    if (h.value == 0.0) h = {0.0, s.nodes[0], s.nodes[1]};
  }
  return out;
}

PairMax lipschitz_pair(const ScalarField& u, double r) { return seminorm_scan(u, r, {}).lipschitz; }

double lipschitz_seminorm(const ScalarField& u, double r) { return lipschitz_pair(u, r).value; }

PairMax holder_pair(const ScalarField& u, double r, double gamma) { return seminorm_scan(u, r, {gamma}).holder[0]; }

double holder_seminorm(const ScalarField& u, double r, double gamma) { return holder_pair(u, r, gamma).value; }

Normalized normalize_solution(const ScalarField& u, const ScalarField& f, double p) {
  if (!(p > 1.0)) throw PreconditionError("exponent must exceed 1, got " + format_real(p));
  if (u.grid_ptr() != f.grid_ptr() && !(u.grid().spec() == f.grid().spec())) {
    throw PreconditionError("solution and right-hand side live on different grids");
  }
  const double s = u.sup_norm() + std::pow(f.sup_norm(false), 1.0 / (p - 1.0));
  if (!(s > 0.0) || !std::isfinite(s)) {
    throw PreconditionError("cannot normalise: |u|_inf + |f|_inf^(1/(p-1)) = " + format_real(s));
  }
  const double sf = std::pow(s, p - 1.0);
  Normalized out{u, f, s};
  for (std::size_t i = 0; i < out.v.size(); ++i) {
    if (out.v.is_set(i)) out.v[i] /= s;
    if (out.f.is_set(i)) out.f[i] /= sf;
  }
  return out;
}

void ExperimentRecord::validate() const {
  auto finite = [](double v) { return std::isfinite(v); };
  bool ok = finite(p) && finite(r) && finite(u_sup) && finite(f_sup) && finite(lip_seminorm) && finite(ratio);
  for (const auto& [g, v] : holder_seminorms) ok = ok && finite(g) && finite(v);
  if (!ok) throw PreconditionError("experiment record for " + f_description + " has non-finite entries");
  if (ratio < 0.0) throw PreconditionError("experiment record for " + f_description + " has negative ratio");
  if (f_description.find_first_of(",\n\"") != std::string::npos) {
    throw PreconditionError("rhs description must not contain commas, quotes or newlines: " + f_description);
  }
}

ExperimentRecord make_record(const ScalarField& u, const ScalarField& f, double p, double r,
                             const std::string& f_description, const std::vector<double>& gammas) {
  std::vector<double> sorted = gammas;
  std::sort(sorted.begin(), sorted.end());
  const Seminorms sn = seminorm_scan(u, r, sorted);
  ExperimentRecord rec;
  rec.p = p;
  rec.N = u.grid().dimension();
  rec.r = r;
  rec.f_description = f_description;
  rec.u_sup = u.sup_norm();
  rec.f_sup = f.sup_norm(false);
  rec.lip_seminorm = sn.lipschitz.value;
  for (std::size_t k = 0; k < sorted.size(); ++k) rec.holder_seminorms.emplace_back(sorted[k], sn.holder[k].value);
  const double denom = rec.u_sup + std::pow(rec.f_sup, 1.0 / (p - 1.0));
  rec.ratio = denom > 0.0 ? rec.lip_seminorm / denom : 0.0;
  rec.validate();
  return rec;
}

double estimate_constant(const std::vector<ExperimentRecord>& records) {
  if (records.empty()) throw PreconditionError("estimate_constant needs at least one record");
  const auto& first = records.front();
  double c = 0.0;
  for (const auto& rec : records) {
    if (rec.p != first.p || rec.N != first.N || rec.r != first.r) {
      throw PreconditionError("records mix (p,N,r): (" + format_real(first.p) + "," + std::to_string(first.N) + "," +
                              format_real(first.r) + ") vs (" + format_real(rec.p) + "," + std::to_string(rec.N) +
                              "," + format_real(rec.r) + ")");
    }
    c = std::max(c, rec.ratio);
  }
  return c;
}

void write_records(std::ostream& os, const std::vector<ExperimentRecord>& records, const std::string& comment) {
  if (!comment.empty()) {
    std::istringstream lines(comment);
    for (std::string line; std::getline(lines, line);) os << "# " << line << '\n';
  }
  std::vector<double> gammas;
  if (!records.empty()) {
    for (const auto& [g, v] : records.front().holder_seminorms) gammas.push_back(g);
  }
  os << "p,N,r,f,u_sup,f_sup,lip";
  for (double g : gammas) os << ",holder_" << short_gamma(g);
  os << ",ratio\n";
  for (const auto& rec : records) {
    rec.validate();
    if (rec.holder_seminorms.size() != gammas.size()) {
      throw PreconditionError("records carry different Hölder exponent lists");
    }
    os << format_real(rec.p) << ',' << rec.N << ',' << format_real(rec.r) << ',' << rec.f_description << ','
       << format_real(rec.u_sup) << ',' << format_real(rec.f_sup) << ',' << format_real(rec.lip_seminorm);
    for (std::size_t k = 0; k < gammas.size(); ++k) {
      if (rec.holder_seminorms[k].first != gammas[k]) {
        throw PreconditionError("records carry different Hölder exponent lists");
      }
      os << ',' << format_real(rec.holder_seminorms[k].second);
    }
    os << ',' << format_real(rec.ratio) << '\n';
  }
}

}  // namespace pseudoplap
