#include "kruskal/asymptotics.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "kruskal/bisection.hpp"
#include "kruskal/errors.hpp"
#include "kruskal/exact.hpp"

namespace kruskal {

namespace {

void require_b(int B) {
  if (B < 2) throw InvalidParameter("B must be >= 2");
}

double half_rate(int B, int shift) {
  require_b(B);
  const double root =
      bisect_increasing([&](double a) { return decay_equation(B, shift, a); }, 0.0, std::log(static_cast<double>(B)));
  if (std::abs(decay_equation(B, shift, root)) > 1e-12) throw NumericalFailure("decay-rate root did not converge");
  return root;
}

double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

}  // namespace

double decay_equation(int B, int shift, double a) {
  double s = 0.0;
  for (int i = 1; i <= B - 1; ++i) s += std::exp((i + shift) * a);
  return s - B;
}

double alpha_minus(int B) { return 2.0 * half_rate(B, 0); }

double alpha_plus(int B) { return 2.0 * half_rate(B, 1); }

double alpha_crude_lower(int B) {
  require_b(B);
  return (2.0 / B) * std::abs(std::log1p(-1.0 / B));
}

DecayRates decay_rates(int B) {
  return {B, alpha_minus(B), alpha_plus(B), alpha_crude_lower(B), haga_robins_lambda(B)};
}

double constrained_objective(int B, double gamma, std::span<const double> gamma_i) {
  double z = -gamma * std::log(static_cast<double>(B)) + xlogx(gamma);
  for (double g : gamma_i) z -= xlogx(g);
  return z;
}

ConstrainedSolution solve_constrained_program(int B, BoundingVariant variant) {
  require_b(B);
  const int shift = variant == BoundingVariant::kMinus ? 0 : 1;
  ConstrainedSolution sol;
  sol.variant = variant;
  sol.B = B;
  sol.lambda1 = half_rate(B, shift);

  // Stationarity gives g_i = c exp(w_i lambda1) and g = B c; the weight
  // constraint fixes c.
  double weighted = 0.0;
  for (int i = 1; i <= B - 1; ++i) weighted += (i + shift) * std::exp((i + shift) * sol.lambda1);
  const double c = 2.0 / weighted;
  sol.lambda2 = 1.0 + std::log(c);
  sol.gamma = B * std::exp(sol.lambda2 - 1.0);
  sol.gamma_i.reserve(static_cast<std::size_t>(B - 1));
  for (int i = 1; i <= B - 1; ++i) sol.gamma_i.push_back(std::exp(sol.lambda2 - 1.0) * std::exp((i + shift) * sol.lambda1));

  double weight_sum = 0.0;
  double count_sum = 0.0;
  for (int i = 1; i <= B - 1; ++i) {
    const double g = sol.gamma_i[static_cast<std::size_t>(i - 1)];
    weight_sum += (i + shift) * g;
    count_sum += g;
  }
  sol.weight_residual = std::abs(weight_sum - 2.0);
  sol.count_residual = std::abs(count_sum - sol.gamma);
  if (sol.weight_residual > 1e-9 || sol.count_residual > 1e-9) {
    throw NumericalFailure("constrained extremal violates its constraints");
  }
  sol.Z = constrained_objective(B, sol.gamma, sol.gamma_i);
  return sol;
}

std::vector<double> haga_robins_polynomial(int B) {
  require_b(B);
  std::vector<double> coeffs(static_cast<std::size_t>(B) + 1);
  // (x + 1/B)^B = sum_k C(B,k) B^{-(B-k)} x^k
  double binom = 1.0;
  for (int k = 0; k <= B; ++k) {
    coeffs[static_cast<std::size_t>(k)] = binom * std::pow(static_cast<double>(B), -(B - k));
    binom = binom * (B - k) / (k + 1);
  }
  coeffs[static_cast<std::size_t>(B - 1)] -= std::pow(1.0 + 1.0 / B, B);
  return coeffs;
}

std::vector<std::complex<double>> polynomial_roots(std::span<const double> coeffs) {
  std::size_t degree = coeffs.size();
  while (degree > 0 && coeffs[degree - 1] == 0.0) --degree;
  if (degree < 2) throw InvalidParameter("polynomial must have degree >= 1");
  const auto n = static_cast<Eigen::Index>(degree - 1);
  const double lead = coeffs[degree - 1];

  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (Eigen::Index i = 0; i < n; ++i) companion(i, n - 1) = -coeffs[static_cast<std::size_t>(i)] / lead;

  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
  if (solver.info() != Eigen::Success) throw NumericalFailure("companion eigenvalue solve failed");

  using Cld = std::complex<long double>;
  const auto eval = [&](Cld x, Cld& derivative) {
    Cld p = 0.0L;
    derivative = 0.0L;
    for (std::size_t k = degree; k-- > 0;) {
      derivative = derivative * x + p;
      p = p * x + static_cast<long double>(coeffs[k]);
    }
    return p;
  };

  std::vector<std::complex<double>> roots;
  roots.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    Cld x(solver.eigenvalues()(i).real(), solver.eigenvalues()(i).imag());
    Cld d;
    long double best = std::abs(eval(x, d));
    for (int iter = 0; iter < 8; ++iter) {
      const Cld p = eval(x, d);
      if (std::abs(d) == 0.0L) break;
      const Cld candidate = x - p / d;
      Cld unused;
      const long double residual = std::abs(eval(candidate, unused));
      if (!(residual < best)) break;
      best = residual;
      x = candidate;
    }
    roots.emplace_back(static_cast<double>(x.real()), static_cast<double>(x.imag()));
  }
  return roots;
}

double haga_robins_lambda(int B) {
  const std::vector<double> coeffs = haga_robins_polynomial(B);
  const auto roots = polynomial_roots(coeffs);
  int near_one = 0;
  double lambda = 0.0;
  for (const auto& r : roots) {
    if (std::abs(r - 1.0) <= 1e-9) {
      ++near_one;
    } else {
      lambda = std::max(lambda, std::abs(r));
    }
  }
  if (near_one != 1) throw NumericalFailure("expected exactly one root of p_B at 1");
  return lambda;
}

DecayComparison compare_decay_rates(int B) {
  return {std::pow(haga_robins_lambda(B), 2.0 / B), std::exp(-alpha_minus(B)), std::exp(-alpha_plus(B))};
}

double empirical_decay_rate(int B, int n_lo, int n_hi) {
  require_b(B);
  if (B > 6) throw InvalidParameter("empirical decay fit is limited to B <= 6");
  if (n_lo < 10 * B || n_hi <= n_lo) throw InvalidParameter("fit window must satisfy n_hi > n_lo >= 10B");
  double sx = 0.0;
  double sy = 0.0;
  double sxx = 0.0;
  double sxy = 0.0;
  const double count = n_hi - n_lo + 1;
  for (int N = n_lo; N <= n_hi; ++N) {
    const double p = failure_via_lemma41(B, N);
    if (!(p > 0.0)) throw NumericalFailure("failure probability underflowed in the fit window");
    const double x = N;
    const double y = -std::log(p);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double denom = count * sxx - sx * sx;
  if (denom <= 0.0) throw InvalidParameter("degenerate fit window");
  return (count * sxy - sx * sy) / denom;
}

}  // namespace kruskal
