#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "pseudoplap/grid.hpp"

namespace pseudoplap {

// Two-point seminorms over the interior nodes of B_r, by exhaustive pair scan.

struct PairMax {
  double value = 0.0;
  std::size_t a = 0;  // node indices of the maximising pair
  std::size_t b = 0;
};

/// max |u(x) - u(y)| / |x - y| over distinct pairs. Requires r < 1 - 2h and
/// at least two nodes in the ball.
PairMax lipschitz_pair(const ScalarField& u, double r);
double lipschitz_seminorm(const ScalarField& u, double r);

/// max |u(x) - u(y)| / |x - y|^gamma, 0 < gamma < 1.
PairMax holder_pair(const ScalarField& u, double r, double gamma);
double holder_seminorm(const ScalarField& u, double r, double gamma);

/// Lipschitz and Hölder seminorms from a single scan; holder[k] matches gammas[k].
struct Seminorms {
  PairMax lipschitz;
  std::vector<PairMax> holder;
};
Seminorms seminorm_scan(const ScalarField& u, double r, const std::vector<double>& gammas);

/// |x_a - x_b| between two nodes.
double node_distance(const Grid& grid, std::size_t a, std::size_t b);

struct Normalized {
  ScalarField v;
  ScalarField f;
  double scale = 0.0;  // s = |u|_inf + |f|_inf^(1/(p-1))
};

/// v = u/s, f~ = f/s^(p-1). Throws PreconditionError when s = 0.
Normalized normalize_solution(const ScalarField& u, const ScalarField& f, double p);

struct ExperimentRecord {
  double p = 3.0;
  int N = 2;
  double r = 0.5;
  std::string f_description;
  double u_sup = 0.0;
  double f_sup = 0.0;
  double lip_seminorm = 0.0;
  std::vector<std::pair<double, double>> holder_seminorms;  // (gamma, value), gamma ascending
  double ratio = 0.0;  // lip / (u_sup + f_sup^(1/(p-1)))

  /// Throws PreconditionError unless every entry is finite and ratio >= 0.
  void validate() const;
};

/// Record for a solved field: u_sup over all grid nodes, f_sup over interior nodes.
ExperimentRecord make_record(const ScalarField& u, const ScalarField& f, double p, double r,
                             const std::string& f_description, const std::vector<double>& gammas);

/// Max ratio over records sharing (p, N, r).
double estimate_constant(const std::vector<ExperimentRecord>& records);

/// Columns: p,N,r,f,u_sup,f_sup,lip,holder_<gamma>...,ratio. All records
/// must carry the same gamma list. Comment lines are prefixed with '#'.
void write_records(std::ostream& os, const std::vector<ExperimentRecord>& records, const std::string& comment = {});

}  // namespace pseudoplap
