#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "kruskal/asymptotics.hpp"
#include "kruskal/bisection.hpp"
#include "kruskal/errors.hpp"
#include "oracles.hpp"

using namespace kruskal;

TEST_CASE("bisection") {
  const double r = bisect_increasing([](double x) { return x * x - 2.0; }, 0.0, 2.0);
  CHECK(r == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK_THROWS_AS(bisect_increasing([](double x) { return x + 1.0; }, 0.0, 1.0), NumericalFailure);
  CHECK_THROWS_AS(bisect_increasing([](double x) { return x; }, 1.0, 0.0), InvalidParameter);
}

TEST_CASE("decay rates at small B") {
  CHECK(std::abs(alpha_minus(2) - 2 * std::log(2.0)) < 1e-12);
  CHECK(std::abs(alpha_plus(2) - std::log(2.0)) < 1e-12);
  // e^a + e^{2a} = 3 is a quadratic in e^a.
  CHECK(std::abs(alpha_minus(3) - 2 * std::log((std::sqrt(13.0) - 1) / 2)) < 1e-12);
  CHECK(std::abs(alpha_plus(3) - 2 * oracle::plus_root_b3()) < 1e-12);
  CHECK(alpha_minus(3) == doctest::Approx(0.5289942).epsilon(1e-6));
  CHECK(alpha_plus(3) == doctest::Approx(0.3217862).epsilon(1e-6));
}

TEST_CASE("ordering of the rates") {
  for (int B = 3; B <= 60; ++B) {
    CAPTURE(B);
    CHECK(alpha_plus(B) <= alpha_minus(B));
    CHECK(alpha_crude_lower(B) <= alpha_minus(B));
    CHECK(std::abs(decay_equation(B, 0, alpha_minus(B) / 2)) <= 1e-12);
    CHECK(std::abs(decay_equation(B, 1, alpha_plus(B) / 2)) <= 1e-12);
  }
  CHECK_THROWS_AS(alpha_minus(1), InvalidParameter);
}

TEST_CASE("large-B expansions leave an O(1/B^4) residual") {
  for (int B : {50, 100, 200}) {
    const double b = B;
    const double rm = std::abs(alpha_minus(B) - 4 / (b * b) - (4.0 / 3) / (b * b * b)) * b * b * b * b;
    const double rp = std::abs(alpha_plus(B) - 4 / (b * b) + (20.0 / 3) / (b * b * b)) * b * b * b * b;
    CHECK(rm < 25.0);
    CHECK(rp < 25.0);
  }
}

TEST_CASE("constrained program at B = 3 against a grid search") {
  for (bool plus : {false, true}) {
    const auto sol = solve_constrained_program(3, plus ? BoundingVariant::kPlus : BoundingVariant::kMinus);
    const oracle::GridMax grid = oracle::constrained_grid_b3(plus, 200'000);
    CAPTURE(plus);
    CHECK(sol.gamma_i[0] == doctest::Approx(grid.g1).epsilon(1e-4));
    CHECK(sol.gamma_i[1] == doctest::Approx(grid.g2).epsilon(1e-4));
    CHECK(sol.Z == doctest::Approx(grid.z).epsilon(1e-8));
  }
}

TEST_CASE("constrained program optimum equals -2 lambda1") {
  for (int B = 2; B <= 10; ++B) {
    for (auto v : {BoundingVariant::kMinus, BoundingVariant::kPlus}) {
      const auto sol = solve_constrained_program(B, v);
      CHECK(std::abs(sol.Z + 2 * sol.lambda1) <= 1e-8);
      CHECK(sol.weight_residual <= 1e-9);
      CHECK(sol.count_residual <= 1e-9);
      CHECK(*std::min_element(sol.gamma_i.begin(), sol.gamma_i.end()) >= 0.0);
      const double alpha = v == BoundingVariant::kMinus ? alpha_minus(B) : alpha_plus(B);
      CHECK(sol.lambda1 == doctest::Approx(alpha / 2));
    }
  }
}

TEST_CASE("polynomial roots") {
  // (x-1)(x-2)(x-3)
  const std::vector<double> c{-6, 11, -6, 1};
  auto roots = polynomial_roots(c);
  std::vector<double> re;
  for (const auto& r : roots) {
    CHECK(std::abs(r.imag()) < 1e-12);
    re.push_back(r.real());
  }
  std::sort(re.begin(), re.end());
  CHECK(re[0] == doctest::Approx(1.0));
  CHECK(re[2] == doctest::Approx(3.0));
  CHECK_THROWS_AS(polynomial_roots(std::vector<double>{1.0}), InvalidParameter);
}

TEST_CASE("Haga-Robins eigenvalue") {
  const auto p2 = haga_robins_polynomial(2);
  REQUIRE(p2.size() == 3);
  CHECK(p2[0] == doctest::Approx(0.25));
  CHECK(p2[1] == doctest::Approx(-1.25));
  CHECK(p2[2] == doctest::Approx(1.0));
  CHECK(haga_robins_lambda(2) == 0.25);
  CHECK(haga_robins_lambda(3) == doctest::Approx(0.4522631).epsilon(1e-6));
  double prev = 0.0;
  for (int B : {5, 10, 20, 40}) {
    const double s = B * (1 - haga_robins_lambda(B));
    CHECK(s > prev);
    CHECK(s < 2.0);
    prev = s;
  }
}

TEST_CASE("decay comparison at B = 50") {
  const DecayComparison c = compare_decay_rates(50);
  CHECK(std::abs(2500 * (1 - c.lambda_scaled) - 4) <= 1);
  CHECK(std::abs(2500 * (1 - c.exp_minus_alpha_minus) - 4) <= 1);
  CHECK(std::abs(2500 * (1 - c.exp_minus_alpha_plus) - 4) <= 1);
}

TEST_CASE("empirical decay rate falls between the bounding rates") {
  const double fit = empirical_decay_rate(3, 100, 300);
  CHECK(fit >= 0.9 * alpha_plus(3));
  CHECK(fit <= 1.1 * alpha_minus(3));
  CHECK_THROWS_AS(empirical_decay_rate(7, 100, 200), InvalidParameter);
  CHECK_THROWS_AS(empirical_decay_rate(3, 20, 200), InvalidParameter);
}
