#include "pseudoplap/jets.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "pseudoplap/error.hpp"
#include "pseudoplap/operator.hpp"

namespace pseudoplap {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require(bool ok, const std::string& what) {
  if (!ok) throw PreconditionError(what);
}

Vector difference(std::span<const double> a, std::span<const double> b) {
  Vector d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
  return d;
}

std::string format_vector(std::span<const double> x) {
  std::ostringstream os;
  os.precision(6);
  os << '(';
  for (std::size_t i = 0; i < x.size(); ++i) os << (i ? ", " : "") << x[i];
  os << ')';
  return os.str();
}

// |a^k - b^k| for a, b >= 0 without cancelling the leading digits.
double abs_pow_difference(double a, double b, double k) {
  if (a < b) std::swap(a, b);
  if (a == 0.0) return 0.0;
  if (b == 0.0) return std::pow(a, k);
  return std::pow(a, k) * -std::expm1(k * std::log(b / a));
}

}  // namespace

// ---------------------------------------------------------------- Modulus

Modulus Modulus::holder(double gamma) {
  require(gamma > 0.0 && gamma < 1.0, "Hölder exponent gamma must lie in (0, 1)");
  Modulus m;
  m.kind_ = Kind::holder;
  m.gamma_ = gamma;
  return m;
}

Modulus Modulus::lipschitz(double tau, double omega0) {
  require(tau > 0.0 && std::isfinite(tau), "Lipschitz modulus needs tau > 0");
  require(omega0 > 0.0 && std::isfinite(omega0), "Lipschitz modulus needs omega0 > 0");
  Modulus m;
  m.kind_ = Kind::lipschitz;
  m.tau_ = tau;
  m.omega0_ = omega0;
  require(m.validity_limit() > 1.0, "omega0 too large: s0 = (1/((1+tau) omega0))^(1/tau) must exceed 1");
  return m;
}

Modulus Modulus::lipschitz(double tau) { return lipschitz(tau, 1.0 / (2.0 * (1.0 + tau))); }

double Modulus::validity_limit() const {
  if (kind_ == Kind::holder) return std::numeric_limits<double>::infinity();
  return std::pow(1.0 / ((1.0 + tau_) * omega0_), 1.0 / tau_);
}

double Modulus::value(double s) const {
  if (kind_ == Kind::holder) return std::pow(s, gamma_);
  return s - omega0_ * std::pow(s, 1.0 + tau_);
}

double Modulus::d1(double s) const {
  if (kind_ == Kind::holder) return gamma_ * std::pow(s, gamma_ - 1.0);
  return 1.0 - omega0_ * (1.0 + tau_) * std::pow(s, tau_);
}

double Modulus::d2(double s) const {
  if (kind_ == Kind::holder) return gamma_ * (gamma_ - 1.0) * std::pow(s, gamma_ - 2.0);
  return -omega0_ * (1.0 + tau_) * tau_ * std::pow(s, tau_ - 1.0);
}

std::string Modulus::describe() const {
  std::ostringstream os;
  if (kind_ == Kind::holder) {
    os << "holder(gamma=" << gamma_ << ")";
  } else {
    os << "lipschitz(tau=" << tau_ << ";omega0=" << omega0_ << ")";
  }
  return os.str();
}

// ---------------------------------------------------------------- jets

double JetMatrices::theta_norm() const { return *std::max_element(theta.begin(), theta.end()); }

Matrix JetMatrices::Htilde_closed_form() const {
  const std::size_t n = dimension();
  Vector xhat(x);
  for (double& c : xhat) c /= r;
  Matrix out = (betaH * omega2 - alphaH * omega1 / r) * Matrix::outer(xhat, xhat);
  out += (alphaH * omega1 / r) * Matrix::identity(n);
  return out;
}

Matrix JetMatrices::doubled_block() const {
  const Matrix neg = -1.0 * H1;
  return M * Matrix::blocks(H1, neg, neg, H1);
}

JetMatrices build_jet_matrices(std::span<const double> x, double M, double p, const Modulus& modulus) {
  require_exponent(p);
  require(!x.empty(), "jet point must have at least one component");
  require(M > 1.0 && std::isfinite(M), "M must be finite and > 1");
  for (double c : x) require(std::isfinite(c), "jet point has a non-finite component");
  const double r = norm2(x);
  require(r > 0.0, "jet matrices are undefined at x = 0");
  require(r < 1.0, "jet point " + format_vector(x) + " must satisfy |x| < 1");
  require(r < modulus.validity_limit(), "jet point lies outside the validity range s < s0 of the modulus");

  const std::size_t n = x.size();
  JetMatrices jm;
  jm.x.assign(x.begin(), x.end());
  jm.M = M;
  jm.p = p;
  jm.r = r;
  jm.omega1 = modulus.d1(r);
  jm.omega2 = modulus.d2(r);
  const double radial = jm.omega1 / r;

  Vector xhat(jm.x);
  for (double& c : xhat) c /= r;
  jm.H1 = (jm.omega2 - radial) * Matrix::outer(xhat, xhat) + radial * Matrix::identity(n);
  // Eigenvalues: w'' along x, w'/|x| (multiplicity N-1) across.
  jm.H1_norm = n == 1 ? std::abs(jm.omega2) : std::max(std::abs(jm.omega2), radial);
  jm.iota = 1.0 / (4.0 * M * jm.H1_norm);
  jm.Htilde = jm.H1 + (2.0 * jm.iota) * (jm.H1 * jm.H1);
  // For N = 1 the Id - x x^T/|x|^2 part vanishes and alphaH is free; take 1.
  jm.alphaH = n == 1 ? 1.0 : 1.0 + 2.0 * jm.iota * radial;
  jm.betaH = 1.0 + 2.0 * jm.iota * jm.omega2;
  jm.Htilde_norm = n == 1 ? std::abs(jm.betaH * jm.omega2)
                          : std::max(std::abs(jm.betaH * jm.omega2), jm.alphaH * radial);


  jm.theta.resize(n);
  for (std::size_t i = 0; i < n; ++i) jm.theta[i] = std::pow(std::abs(jm.omega1 * x[i] / r), (p - 2.0) / 2.0);
  jm.H = Matrix(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) jm.H(i, j) = jm.theta[i] * jm.Htilde(i, j) * jm.theta[j];
  }
  return jm;
}

std::vector<int> index_set(std::span<const double> x, double eps) {
  require(eps > 0.0, "index set needs eps > 0");
  const double r = norm2(x);
  require(r > 0.0, "index set is undefined at x = 0");
  const double threshold = std::pow(r, 1.0 + eps);
  std::vector<int> out;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (std::abs(x[i]) >= threshold) out.push_back(static_cast<int>(i));
  }
  return out;
}

Vector test_vector(std::span<const double> x, double p, double eps) {
  require_exponent(p);
  Vector w(x.size(), 0.0);
  auto entry = [&](std::size_t i) {
    if (x[i] == 0.0) return 0.0;  // continuous extension for p < 4; convention at p = 4
    return std::pow(std::abs(x[i]), (2.0 - p) / 2.0) * x[i];
  };
  if (p <= 4.0) {
    for (std::size_t i = 0; i < x.size(); ++i) w[i] = entry(i);
    return w;
  }
  const auto I = index_set(x, eps);
  require(!I.empty(), "index set I(x, eps) is empty; the p > 4 test vector is undefined");
  for (int i : I) w[static_cast<std::size_t>(i)] = entry(static_cast<std::size_t>(i));
  return w;
}

double eqNepsilon_margin(std::span<const double> x, double eps, const Modulus& modulus, double M) {
  require(eps > 0.0, "eqNepsilon needs eps > 0");
  const JetMatrices jm = build_jet_matrices(x, M, 3.0, modulus);
  const double n = static_cast<double>(x.size());
  const double t = n * std::pow(jm.r, 2.0 * eps);
  const double lhs = jm.betaH * jm.omega2 * (1.0 - t) + jm.alphaH * t * jm.omega1 / jm.r;
  return jm.omega2 / 4.0 - lhs;
}

bool check_eqNepsilon(std::span<const double> x, double eps, const Modulus& modulus, double M) {
  return eqNepsilon_margin(x, eps, modulus, M) >= 0.0;
}

std::string to_string(Prop4Branch b) { return b == Prop4Branch::small_p ? "p<=4" : "p>=4"; }

std::vector<Prop4Branch> applicable_branches(double p) {
  if (p < 4.0) return {Prop4Branch::small_p};
  if (p > 4.0) return {Prop4Branch::large_p};
  return {Prop4Branch::small_p, Prop4Branch::large_p};
}

Prop4Result prop4_bound_check(std::span<const double> x, double p, double eps, const Modulus& modulus, double M,
                              Prop4Branch branch) {
  if (branch == Prop4Branch::small_p) require(p <= 4.0, "the p<=4 branch needs p <= 4");
  if (branch == Prop4Branch::large_p) {
    require(p >= 4.0, "the p>=4 branch needs p >= 4");
    require(eps > 0.0, "the p>=4 branch needs eps > 0");
    if (!check_eqNepsilon(x, eps, modulus, M)) {
      throw PreconditionError("condition eqNepsilon fails at x = " + format_vector(x));
    }
  }
  const JetMatrices jm = build_jet_matrices(x, M, p, modulus);
  const double n = static_cast<double>(x.size());

  Prop4Result out;
  out.branch = branch;
  out.lambda_min = min_eigenvalue(jm.H);
  // At p = 4 the two branches use different test vectors (all axes vs. I).
  Vector w;
  if (branch == Prop4Branch::small_p) {
    w = test_vector(x, std::min(p, 4.0), eps);
  } else {
    const auto I = index_set(x, eps);
    require(!I.empty(), "index set I(x, eps) is empty");
    w.assign(x.size(), 0.0);
    for (int i : I) {
      const auto k = static_cast<std::size_t>(i);
      w[k] = std::pow(std::abs(x[k]), (2.0 - p) / 2.0) * x[k];
    }
  }
  out.rayleigh = jm.H.quadratic_form(w) / dot(w, w);

  const double wp = std::pow(jm.omega1, p - 2.0);
  if (branch == Prop4Branch::small_p) {
    out.bound = std::pow(n, 1.0 - p / 2.0) * jm.betaH * jm.omega2 * wp;
  } else {
    const double count = static_cast<double>(index_set(x, eps).size());
    out.bound = (1.0 - n * std::pow(jm.r, 2.0 * eps)) / count * wp * std::pow(jm.r, (p - 4.0) * eps) * jm.omega2 / 4.0;
  }
  out.slack = out.bound - out.lambda_min;
  return out;
}

// ---------------------------------------------------------------- feasible pairs

bool Feasibility::feasible(double rel_tol) const {
  const double tol = rel_tol * scale;
  return lower_x >= -tol && lower_y >= -tol && upper >= -tol;
}

Feasibility eqxl_margins(const Matrix& X, const Matrix& Y, const JetMatrices& jm) {
  const std::size_t n = jm.dimension();
  require(X.size() == n && Y.size() == n, "X and Y must match the jet dimension");
  const Matrix shift = (2.0 * jm.M + 1.0) * Matrix::identity(n);
  const Matrix Xp = X - shift;
  const Matrix Yp = Y - shift;
  const Matrix zero(n);
  const Matrix negHt = -1.0 * jm.Htilde;

  Feasibility f;
  f.lower_x = min_eigenvalue(Xp) + 6.0 * jm.M * jm.H1_norm;
  f.lower_y = min_eigenvalue(Yp) + 6.0 * jm.M * jm.H1_norm;
  const Matrix upper = jm.M * Matrix::blocks(jm.Htilde, negHt, negHt, jm.Htilde) - Matrix::blocks(Xp, zero, zero, Yp);
  f.upper = min_eigenvalue(upper);
  f.scale = jm.M * jm.Htilde_norm;
  return f;
}

JetPair feasible_pair_sample(const JetMatrices& jm, Rng& rng, double perturbation) {
  require(perturbation >= 0.0 && perturbation <= 1.0, "perturbation factor must lie in [0, 1]");
  const std::size_t n = jm.dimension();
  const double base = 2.0 * jm.M + 1.0 - 2.0 * jm.M * jm.Htilde_norm;
  const double radius = perturbation * jm.M / 4.0 * jm.Htilde_norm;
  for (int attempt = 1; attempt <= 100; ++attempt) {
    Matrix X = base * Matrix::identity(n);
    if (radius > 0.0) {
      Matrix S = random_symmetric(rng, n);
      const double norm = spectral_norm(S);
      if (norm > 0.0) X += (uniform(rng, 0.0, 1.0) * radius / norm) * S;
    }
    if (eqxl_margins(X, X, jm).feasible()) return {X, X, attempt};
  }
  throw NumericalError("no feasible (X, Y) pair after 100 draws at x = " + format_vector(jm.x));
}

bool Conclusion::holds(double rel_tol) const {
  return slack >= -rel_tol * std::max({std::abs(bound), std::abs(value), scale});
}

bool Prop5Report::holds(double rel_tol) const {
  return std::all_of(conclusions.begin(), conclusions.end(), [&](const Conclusion& c) { return c.holds(rel_tol); });
}

const Conclusion* Prop5Report::find(const std::string& name) const {
  for (const auto& c : conclusions) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

Prop5Report prop5_conclusions_check(const Matrix& X, const Matrix& Y, const JetMatrices& jm, double eps) {
  if (!eqxl_margins(X, Y, jm).feasible()) {
    throw PreconditionError("(X, Y) does not satisfy the block inequalities at x = " + format_vector(jm.x));
  }
  const std::size_t n = jm.dimension();
  const double M = jm.M, p = jm.p;
  const double c = 2.0 * (2.0 * M + 1.0);
  const double mp2 = std::pow(M, p - 2.0);
  const double mp1 = std::pow(M, p - 1.0);
  const double th2 = jm.theta_norm() * jm.theta_norm();
  const Matrix Theta = jm.Theta();
  const Matrix sum = X + Y;
  const Matrix shifted = Theta * (sum - c * Matrix::identity(n)) * Theta;

  Prop5Report rep;
  auto add = [&](std::string name, double value, double bound, double scale = 0.0) {
    rep.conclusions.push_back({std::move(name), value, bound, bound - value, scale});
  };

  // Zero bound: tolerance comes from the size of Theta (X+Y) Theta instead.
  add("theta_negative", max_eigenvalue(shifted), 0.0, th2 * (spectral_norm(sum) + c));
  const double top = max_eigenvalue(mp2 * (Theta * sum * Theta));
  add("autresvp1", top, c * mp2 * th2);
  add("autresvp1_loose", top, 6.0 * mp1 * th2);

  const Matrix shift = (2.0 * M + 1.0) * Matrix::identity(n);
  const double dev = std::max(spectral_norm(X - shift), spectral_norm(Y - shift));
  add("majnorm", dev, 6.0 * M * jm.H1_norm);

  const double mu1 = min_eigenvalue(mp2 * shifted);
  const double wp = std::pow(jm.omega1, p - 2.0);
  const double nd = static_cast<double>(n);
  if (p <= 4.0) add("mu1pleq4", mu1, 2.0 * mp1 * std::pow(nd, (2.0 - p) / 2.0) * wp * jm.omega2);
  if (p >= 4.0) {
    require(eps > 0.0, "the p>=4 conclusion needs eps > 0");
    const double t = nd * std::pow(jm.r, 2.0 * eps);
    const double lhs = jm.betaH * jm.omega2 * (1.0 - t) + jm.alphaH * t * jm.omega1 / jm.r;
    const bool eqn = lhs <= jm.omega2 / 4.0;
    if (p > 4.0 && !eqn) throw PreconditionError("condition eqNepsilon fails at x = " + format_vector(jm.x));
    if (eqn) {
      const double count = static_cast<double>(index_set(jm.x, eps).size());
      add("mu1pgeq4", mu1, mp1 * (1.0 - t) / count * wp * std::pow(jm.r, (p - 4.0) * eps) * jm.omega2);
    }
  }
  return rep;
}

// ---------------------------------------------------------------- regimes

std::string to_string(Regime r) {
  switch (r) {
    case Regime::holder_small_p: return "holder_small_p";
    case Regime::holder_large_p: return "holder_large_p";
    case Regime::lipschitz_small_p: return "lipschitz_small_p";
    case Regime::lipschitz_large_p: return "lipschitz_large_p";
  }
  return "?";
}

std::optional<Regime> parse_regime(const std::string& s) {
  for (Regime r : {Regime::holder_small_p, Regime::holder_large_p, Regime::lipschitz_small_p,
                   Regime::lipschitz_large_p}) {
    if (to_string(r) == s) return r;
  }
  return std::nullopt;
}

Modulus RegimeParams::modulus() const {
  return lipschitz() ? Modulus::lipschitz(tau, omega0) : Modulus::holder(gamma);
}

double holder_delta_N(double gamma, double eps, int N) {
  require(gamma > 0.0 && gamma < 1.0 && eps > 0.0 && N >= 1, "holder_delta_N: bad arguments");
  return std::pow((1.0 - gamma) / (2.0 * N * (4.0 - gamma)), 1.0 / (2.0 * eps));
}

double lipschitz_delta_N(double tau, double omega0, double eps, int N) {
  require(tau > 0.0 && omega0 > 0.0 && N >= 1, "lipschitz_delta_N: bad arguments");
  require(2.0 * eps > tau, "lipschitz_delta_N needs eps > tau/2");
  const double k = omega0 * tau * (1.0 + tau);
  const double first = std::pow(k / (2.0 * N * (k + 3.0)), 1.0 / (2.0 * eps - tau));
  const double second = std::pow(1.0 / (2.0 * omega0 * (1.0 + tau)), 1.0 / tau);
  return std::min(first, second);
}

RegimeParams regime_params(Regime regime, double p, int N, const RegimeChoice& choice) {
  require_exponent(p);
  require(N >= 1 && N <= 3, "dimension must be 1, 2 or 3");
  RegimeParams rp;
  rp.regime = regime;
  rp.p = p;
  rp.N = N;
  const std::string name = to_string(regime);

  switch (regime) {
    case Regime::holder_small_p: {
      require(p <= 4.0, name + " needs 2 < p <= 4");
      rp.gamma = choice.gamma.value_or(0.5);
      require(rp.gamma > 0.0 && rp.gamma < 1.0, name + ": gamma must lie in (0, 1)");
      // delta^(1-gamma) < gamma/8
      rp.delta_N = std::pow(rp.gamma / 8.0, 1.0 / (1.0 - rp.gamma));
      rp.tau1 = (1.0 - rp.gamma) * (p - 2.0);
      rp.tau_hat = rp.tau1 + 2.0 - rp.gamma;
      rp.tau2 = (1.0 - rp.gamma) * std::max(0.0, p - 3.0) + 2.0 - rp.gamma;
      break;
    }
    case Regime::holder_large_p: {
      require(p > 4.0, name + " needs p > 4 (eps = (1-gamma)/(2(p-4)) is undefined at p = 4)");
      rp.gamma = choice.gamma.value_or(0.5);
      require(rp.gamma > 0.0 && rp.gamma < 1.0, name + ": gamma must lie in (0, 1)");
      rp.epsilon = (1.0 - rp.gamma) / (2.0 * (p - 4.0));
      if (choice.epsilon) require(std::abs(*choice.epsilon - rp.epsilon) <= 1e-12 * rp.epsilon,
                                  name + ": eps is fixed to (1-gamma)/(2(p-4))");
      rp.delta_N = holder_delta_N(rp.gamma, rp.epsilon, N);
      rp.tau1 = (1.0 - rp.gamma) * (p - 2.0);
      rp.tau_hat = rp.tau1 + 2.0 - rp.gamma - (p - 4.0) * rp.epsilon;
      rp.tau2 = (1.0 - rp.gamma) * (p - 3.0) + 2.0 - rp.gamma;
      break;
    }
    case Regime::lipschitz_small_p: {
      require(p <= 4.0, name + " needs 2 < p <= 4");
      const double m = std::min(0.5, (p - 2.0) / 2.0);
      rp.tau = choice.tau.value_or(m / 2.0);
      require(rp.tau > 0.0 && rp.tau < m, name + ": tau must lie in (0, min(1/2, (p-2)/2))");
      rp.gamma = choice.gamma.value_or((1.0 + rp.tau / m) / 2.0);
      require(rp.gamma > rp.tau / m && rp.gamma < 1.0, name + ": gamma must lie in (tau/min(1/2,(p-2)/2), 1)");
      rp.omega0 = choice.omega0.value_or(1.0 / (2.0 * (1.0 + rp.tau)));
      (void)Modulus::lipschitz(rp.tau, rp.omega0);
      // delta^tau omega0 (1+tau) <= 1/2, capped at the unit ball
      rp.delta_N = std::min(1.0, std::pow(1.0 / (2.0 * rp.omega0 * (1.0 + rp.tau)), 1.0 / rp.tau));
      rp.tau_hat = 1.0 - rp.tau;
      rp.tau1 = 0.0;
      rp.tau2 = 1.0 - std::min(1.0, p - 2.0) * rp.gamma / 2.0;
      break;
    }
    case Regime::lipschitz_large_p: {
      require(p >= 4.0, name + " needs p >= 4");
      rp.tau = choice.tau.value_or(1.0 / (2.0 * (p - 2.0)));
      require(rp.tau > 0.0 && rp.tau < 1.0 / (p - 2.0), name + ": tau must lie in (0, 1/(p-2))");
      rp.gamma = choice.gamma.value_or(std::max(0.75, (1.0 + rp.tau * (p - 2.0)) / 2.0));
      require(rp.gamma > rp.tau * (p - 2.0) && rp.gamma < 1.0, name + ": gamma must lie in (tau(p-2), 1)");
      const double lo = rp.tau / 2.0;
      const double hi = p > 4.0 ? (rp.gamma / 2.0 - rp.tau) / (p - 4.0) : std::numeric_limits<double>::infinity();
      rp.epsilon = choice.epsilon.value_or(p > 4.0 ? (lo + hi) / 2.0 : rp.tau);
      require(rp.epsilon > lo && rp.epsilon < hi, name + ": eps must lie in (tau/2, (gamma/2 - tau)/(p-4))");
      rp.omega0 = choice.omega0.value_or(1.0 / (2.0 * (1.0 + rp.tau)));
      (void)Modulus::lipschitz(rp.tau, rp.omega0);
      rp.delta_N = std::min(1.0, lipschitz_delta_N(rp.tau, rp.omega0, rp.epsilon, N));
      rp.tau_hat = 1.0 - rp.tau - (p - 4.0) * rp.epsilon;
      rp.tau1 = 0.0;
      rp.tau2 = 1.0 - rp.gamma / 2.0;
      break;
    }
  }
  rp.delta = rp.delta_N / 2.0;
  if (!(rp.tau_hat > 0.0 && rp.tau1 < rp.tau_hat && rp.tau2 < rp.tau_hat)) {
    throw NumericalError(name + ": exponent ordering tau1, tau2 < tau_hat violated");
  }
  return rp;
}

// ---------------------------------------------------------------- claims

ClaimsReport claims_check(std::span<const double> xbar, std::span<const double> ybar, std::span<const double> x0,
                          double M, const RegimeParams& params, Rng& rng, double c_emp) {
  const std::size_t n = xbar.size();
  require(n >= 1 && ybar.size() == n && x0.size() == n, "xbar, ybar and x0 must have the same dimension");
  require(static_cast<int>(n) == params.N, "point dimension does not match the regime parameters");
  require(M > 1.0, "M must be > 1");
  require(c_emp > 0.0, "c_emp must be > 0");

  const Vector d = difference(xbar, ybar);
  const double s = norm2(d);
  require(s > 0.0, "xbar and ybar must differ");
  require(s < params.delta, "|xbar - ybar| must be below delta = delta_N/2 for " + to_string(params.regime));
  const Vector dx = difference(xbar, x0);
  const Vector dy = difference(ybar, x0);
  if (params.lipschitz()) {
    const double limit = std::sqrt(c_emp * std::pow(s, params.gamma) / M);
    require(norm2(dx) <= limit && norm2(dy) <= limit,
            "|xbar - x0| and |ybar - x0| must not exceed (c_emp |xbar - ybar|^gamma / M)^(1/2)");
  }

  const Modulus modulus = params.modulus();
  const JetMatrices jm = build_jet_matrices(d, M, params.p, modulus);

  ClaimsReport rep;
  rep.s = s;
  if (params.large_p()) rep.eqNepsilon = check_eqNepsilon(d, params.epsilon, modulus, M);

  Vector q(n), qx(n), qy(n);
  for (std::size_t i = 0; i < n; ++i) {
    q[i] = M * jm.omega1 * d[i] / s;
    qx[i] = q[i] + 2.0 * M * dx[i];
    qy[i] = q[i] - 2.0 * M * dy[i];
  }
  rep.q_norm = norm2(q);
  rep.qx_norm = norm2(qx);
  rep.qy_norm = norm2(qy);
  if (params.lipschitz()) {
    auto inside = [&](double v) { return v >= M / 4.0 && v <= 5.0 * M / 4.0; };
    rep.ineqx = inside(rep.qx_norm) && inside(rep.qy_norm);
  }

  const JetPair pair = feasible_pair_sample(jm, rng);
  rep.attempts = pair.attempts;
  const Matrix Theta = jm.Theta();
  const double p = params.p;
  rep.lambda = eigenvalues(std::pow(M, p - 2.0) * (Theta * (pair.X + pair.Y) * Theta));

  const double mp1 = std::pow(M, p - 1.0);
  rep.ratio1 = rep.lambda.front() * std::pow(s, params.tau_hat) / mp1;
  rep.ratio2 = n >= 2 ? rep.lambda.back() * std::pow(s, params.tau1) / mp1 : kNaN;
  const double lhs = abs_pow_difference(rep.qx_norm, rep.q_norm, p - 2.0) * spectral_norm(pair.X) +
                     abs_pow_difference(rep.qy_norm, rep.q_norm, p - 2.0) * spectral_norm(pair.Y);
  rep.ratio3 = lhs * std::pow(s, params.tau2) / mp1;
  return rep;
}

ZtResult zt_check(std::span<const double> Z, std::span<const double> T, double theta, double p) {
  require_exponent(p);
  require(Z.size() == T.size() && !Z.empty(), "Z and T must have the same nonzero length");
  require(theta > 0.0 && theta <= std::min(1.0, p - 2.0), "theta must lie in (0, min(1, p-2)]");
  const double a = p - 2.0;
  const double nz = norm2(Z), nt = norm2(T);
  const double dist = norm2(difference(Z, T));
  ZtResult out;
  out.lhs = abs_pow_difference(nz, nt, a);
  out.rhs = nz + nt == 0.0 ? 0.0 : std::max(1.0, a) * std::pow(dist, theta) * std::pow(nz + nt, a - theta);
  out.slack = out.rhs - out.lhs;
  return out;
}

}  // namespace pseudoplap
