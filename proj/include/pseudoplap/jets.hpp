#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pseudoplap/dense.hpp"
#include "pseudoplap/random.hpp"

namespace pseudoplap {

// Moduli of continuity used in the doubling-variable argument:
//   Hölder     w(s) = s^gamma
//   Lipschitz  w(s) = s - w0 s^(1+tau),  valid for s < s0 = (1/((1+tau) w0))^(1/tau)
class Modulus {
 public:
  enum class Kind { holder, lipschitz };

  static Modulus holder(double gamma);
  static Modulus lipschitz(double tau, double omega0);
  /// omega0 = 1/(2(1+tau)), so s0 = 2^(1/tau) > 1.
  static Modulus lipschitz(double tau);

  Kind kind() const { return kind_; }
  double gamma() const { return gamma_; }
  double tau() const { return tau_; }
  double omega0() const { return omega0_; }
  /// Upper end of the range where w' > 0: +inf (Hölder) or s0 (Lipschitz).
  double validity_limit() const;

  double value(double s) const;
  double d1(double s) const;
  double d2(double s) const;

  std::string describe() const;

 private:
  Kind kind_ = Kind::holder;
  double gamma_ = 0.5;
  double tau_ = 0.0;
  double omega0_ = 0.0;
};

struct JetMatrices {
  Vector x;
  double M = 0.0;
  double p = 0.0;
  double r = 0.0;       // |x|
  double omega1 = 0.0;  // w'(|x|)
  double omega2 = 0.0;  // w''(|x|)
  Matrix H1;            // D^2 w(|x|)
  double H1_norm = 0.0;
  double iota = 0.0;    // 1 / (4 M |H1|)
  Matrix Htilde;        // H1 + 2 iota H1^2
  double Htilde_norm = 0.0;
  double alphaH = 0.0;  // 1 + 2 iota w'/|x|
  double betaH = 0.0;   // 1 + 2 iota w''
  Vector theta;         // diagonal of Theta
  Matrix H;             // Theta Htilde Theta

  std::size_t dimension() const { return x.size(); }
  Matrix Theta() const { return Matrix::diagonal(theta); }
  double theta_norm() const;
  /// (betaH w'' - alphaH w'/|x|) x x^T/|x|^2 + alphaH (w'/|x|) Id.
  Matrix Htilde_closed_form() const;
  /// M [[H1, -H1], [-H1, H1]].
  Matrix doubled_block() const;
};

JetMatrices build_jet_matrices(std::span<const double> x, double M, double p, const Modulus& modulus);

/// Axes i (0-based) with |x_i| >= |x|^(1+eps).
std::vector<int> index_set(std::span<const double> x, double eps);

/// sum_i |x_i|^((2-p)/2) x_i e_i, over all axes when p <= 4 and over
/// index_set(x, eps) when p > 4. Zero components contribute 0.
Vector test_vector(std::span<const double> x, double p, double eps);

/// rhs - lhs of the condition
///   betaH w''(1 - N|x|^(2eps)) + alphaH N |x|^(2eps) w'/|x| <= w''/4.
double eqNepsilon_margin(std::span<const double> x, double eps, const Modulus& modulus, double M);
bool check_eqNepsilon(std::span<const double> x, double eps, const Modulus& modulus, double M);

enum class Prop4Branch { small_p, large_p };
std::string to_string(Prop4Branch b);
/// small_p when p < 4, large_p when p > 4, both at p = 4.
std::vector<Prop4Branch> applicable_branches(double p);

struct Prop4Result {
  Prop4Branch branch = Prop4Branch::small_p;
  double rayleigh = 0.0;    // w^T H w / |w|^2
  double lambda_min = 0.0;  // of H
  double bound = 0.0;
  double slack = 0.0;       // bound - lambda_min
  bool holds(double rel_tol = 1e-9) const { return slack >= -rel_tol * std::abs(bound); }
};

/// Smallest eigenvalue of H against
///   small_p: N^(1-p/2) betaH w'' w'^(p-2)
///   large_p: (1 - N|x|^(2eps))/#I w'^(p-2) |x|^((p-4)eps) w''/4   (needs the eqNepsilon condition)
Prop4Result prop4_bound_check(std::span<const double> x, double p, double eps, const Modulus& modulus,
                              double M, Prop4Branch branch);

// Block inequalities on (X, Y):
//   -6M|H1| <= X - (2M+1)Id, Y - (2M+1)Id   and   diag(X', Y') <= M [[Ht, -Ht], [-Ht, Ht]].
struct Feasibility {
  double lower_x = 0.0;  // lambda_min(X') + 6M|H1|
  double lower_y = 0.0;
  double upper = 0.0;    // lambda_min(M B - diag(X', Y'))
  double scale = 0.0;    // M |Ht|, for relative tolerances
  bool feasible(double rel_tol = 1e-10) const;
};

Feasibility eqxl_margins(const Matrix& X, const Matrix& Y, const JetMatrices& jm);

struct JetPair {
  Matrix X;
  Matrix Y;
  int attempts = 0;
};

/// X = Y = (2M+1)Id - 2M|Ht| Id + S with |S| <= perturbation (M/4)|Ht|,
/// resampled until eqxl_margins is feasible (at most 100 draws).
JetPair feasible_pair_sample(const JetMatrices& jm, Rng& rng, double perturbation = 1.0);

struct Conclusion {
  std::string name;
  double value = 0.0;
  double bound = 0.0;
  double slack = 0.0;  // bound - value
  double scale = 0.0;  // extra tolerance scale when bound is 0
  bool holds(double rel_tol = 1e-9) const;
};

struct Prop5Report {
  std::vector<Conclusion> conclusions;
  bool holds(double rel_tol = 1e-9) const;
  const Conclusion* find(const std::string& name) const;
};

/// Conclusions for a feasible pair: theta_negative, autresvp1, autresvp1_loose,
/// majnorm, and mu1pleq4 / mu1pgeq4 for the applicable branches. At p = 4 the
/// large-p conclusion is included only when the eqNepsilon condition holds.
Prop5Report prop5_conclusions_check(const Matrix& X, const Matrix& Y, const JetMatrices& jm, double eps);

enum class Regime { holder_small_p, holder_large_p, lipschitz_small_p, lipschitz_large_p };
std::string to_string(Regime r);
std::optional<Regime> parse_regime(const std::string& s);

/// Optional overrides of the default parameter choices.
struct RegimeChoice {
  std::optional<double> gamma;
  std::optional<double> tau;
  std::optional<double> epsilon;
  std::optional<double> omega0;
};

struct RegimeParams {
  Regime regime = Regime::holder_small_p;
  double p = 3.0;
  int N = 2;
  double gamma = 0.5;
  double tau = 0.0;
  double omega0 = 0.0;
  double epsilon = 0.0;  // only used by the large-p regimes
  double delta_N = 0.0;
  double delta = 0.0;    // delta_N / 2
  double tau_hat = 0.0;
  double tau1 = 0.0;
  double tau2 = 0.0;

  bool large_p() const { return regime == Regime::holder_large_p || regime == Regime::lipschitz_large_p; }
  bool lipschitz() const { return regime == Regime::lipschitz_small_p || regime == Regime::lipschitz_large_p; }
  Modulus modulus() const;
};

/// ((1-gamma)/(2N(4-gamma)))^(1/(2eps)).
double holder_delta_N(double gamma, double eps, int N);
/// min( (w0 tau(1+tau) / (2N(w0 tau(1+tau)+3)))^(1/(2eps-tau)), (1/(2 w0(1+tau)))^(1/tau) ).
double lipschitz_delta_N(double tau, double omega0, double eps, int N);

RegimeParams regime_params(Regime regime, double p, int N, const RegimeChoice& choice = {});

struct ClaimsReport {
  double s = 0.0;  // |xbar - ybar|
  double q_norm = 0.0;
  double qx_norm = 0.0;
  double qy_norm = 0.0;
  std::optional<bool> ineqx;       // Lipschitz regimes: M/4 <= |qx|, |qy| <= 5M/4
  std::optional<bool> eqNepsilon;  // large-p regimes
  Vector lambda;                   // eigenvalues of M^(p-2) Theta (X+Y) Theta
  double ratio1 = 0.0;             // lambda_1 / (M^(p-1) s^-tau_hat)
  double ratio2 = 0.0;             // max_{i>=2} lambda_i / (M^(p-1) s^-tau1); NaN when N = 1
  double ratio3 = 0.0;             // lhs(eqqx) / (M^(p-1) s^-tau2)
  int attempts = 0;
};

/// Claims on constructed witnesses at x = xbar - ybar. c_emp is the stand-in
/// for the unquantified constant bounding |xbar - x0|, |ybar - x0| in the
/// Lipschitz regimes.
ClaimsReport claims_check(std::span<const double> xbar, std::span<const double> ybar, std::span<const double> x0,
                          double M, const RegimeParams& params, Rng& rng, double c_emp = 10.0);

struct ZtResult {
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
};

/// ||Z|^(p-2) - |T|^(p-2)| against sup(1, p-2) |Z-T|^theta (|Z|+|T|)^(p-2-theta),
/// 0 < theta <= min(1, p-2).
ZtResult zt_check(std::span<const double> Z, std::span<const double> T, double theta, double p);

}  // namespace pseudoplap
