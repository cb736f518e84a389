#pragma once

#include <complex>
#include <span>
#include <vector>

#include "kruskal/chains.hpp"

namespace kruskal {

// Twice the root of sum_{i=1}^{B-1} exp(i a) = B: decay rate of the lower
// sandwich bound P^-_{N,B}.
double alpha_minus(int B);

// Twice the root of sum_{i=1}^{B-1} exp((i+1) a) = B: decay rate of P^+_{N,B}.
double alpha_plus(int B);

// (2/B) |log(1 - 1/B)|, from the crude upper bound.
double alpha_crude_lower(int B);

// Left-hand side minus B of the root equation; `shift` is 0 (minus) or 1 (plus).
double decay_equation(int B, int shift, double a);

struct DecayRates {
  int B = 0;
  double alpha_minus = 0.0;
  double alpha_plus = 0.0;
  double alpha_crude_lower = 0.0;
  double lambda_hr = 0.0;
};

DecayRates decay_rates(int B);

// Interior extremal of the entropy program behind alpha_B^{+-}:
// maximise Z = -g log B + g log g - sum g_i log g_i subject to
// sum w_i g_i = 2 and sum g_i = g, with w_i = i (minus) or i+1 (plus).
struct ConstrainedSolution {
  BoundingVariant variant = BoundingVariant::kMinus;
  int B = 0;
  double gamma = 0.0;
  std::vector<double> gamma_i;  // gamma_i[k] is g_{k+1}
  double Z = 0.0;               // objective evaluated at (gamma, gamma_i)
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double weight_residual = 0.0;  // |sum w_i g_i - 2|
  double count_residual = 0.0;   // |sum g_i - g|
};

ConstrainedSolution solve_constrained_program(int B, BoundingVariant variant);

// Z for an arbitrary point (0 log 0 taken as 0).
double constrained_objective(int B, double gamma, std::span<const double> gamma_i);

// Ascending coefficients of p_B(x) = (x + 1/B)^B - (1 + 1/B)^B x^{B-1}.
std::vector<double> haga_robins_polynomial(int B);

// Roots of sum_k coeffs[k] x^k via companion-matrix eigenvalues, each
// polished by a few Newton steps.
std::vector<std::complex<double>> polynomial_roots(std::span<const double> coeffs);

// Largest root modulus of p_B once the root at 1 is removed.
double haga_robins_lambda(int B);

struct DecayComparison {
  double lambda_scaled = 0.0;  // lambda_B^{2/B}
  double exp_minus_alpha_minus = 0.0;
  double exp_minus_alpha_plus = 0.0;
};

DecayComparison compare_decay_rates(int B);

// Least-squares slope of -log Prob[t > N] against N for N = n_lo..n_hi,
// using the exact uniform-deck failure probabilities.
double empirical_decay_rate(int B, int n_lo, int n_hi);

}  // namespace kruskal
