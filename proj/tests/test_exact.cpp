#include <doctest.h>

#include <cmath>

#include "kruskal/errors.hpp"
#include "kruskal/exact.hpp"
#include "oracles.hpp"

using namespace kruskal;

TEST_CASE("geometric closed forms") {
  CHECK(std::abs(geometric_failure(6.0 / 7, 52) - 0.342254) < 5e-7);
  CHECK(std::abs(geometric_first_card_failure(57.0 / 70, 52) - 0.135949) < 5e-7);
  for (double p : {0.1, 0.5, 6.0 / 7, 0.99}) {
    CHECK(geometric_failure(p, 1) == doctest::Approx(p * (2 - p)));
    for (int N : {1, 10, 52}) {
      CHECK(geometric_failure(p, N) / geometric_first_card_failure(p, N) == doctest::Approx(2 - p).epsilon(1e-13));
    }
  }
  CHECK(geometric_failure(1e-9, 3) < 1e-20);
  CHECK_THROWS_AS(geometric_failure(0.0, 5), InvalidParameter);
  CHECK_THROWS_AS(geometric_first_card_failure(1.5, 5), InvalidParameter);
}

TEST_CASE("enlarged chain matches brute force over every deck") {
  struct Case {
    std::vector<double> masses;
    int N;
    SecretStrategy magician;
    SecretStrategy subject;
  };
  const std::vector<Case> cases = {
      {{0.5, 0.5}, 2, SecretStrategy::uniform(1, 2), SecretStrategy::uniform(1, 2)},
      {{0.5, 0.5}, 9, SecretStrategy::fixed(1), SecretStrategy::uniform(1, 2)},
      {{1.0 / 3, 1.0 / 3, 1.0 / 3}, 7, SecretStrategy::fixed(1), SecretStrategy::uniform(1, 3)},
      {{0.5, 1.0 / 6, 1.0 / 3}, 7, SecretStrategy::fixed(2), SecretStrategy::uniform(1, 3)},
      {{0.25, 0.25, 0.25, 0.25}, 6, SecretStrategy::uniform(1, 4), SecretStrategy::fixed(3)},
      {{0.1, 0.0, 0.2, 0.7}, 7, SecretStrategy::uniform(2, 4), SecretStrategy::uniform(1, 4)},
  };
  for (const Case& c : cases) {
    const auto d = CardDistribution::from_masses(c.masses);
    const double expect = oracle::enumerate_failure(c.masses, c.N, c.magician.pmf(), c.subject.pmf());
    CAPTURE(c.N);
    CHECK(std::abs(iid_exact_failure(d, c.N, c.magician, c.subject) - expect) < 1e-12);
  }
  // 4 equally likely decks x 4 secret pairs.
  CHECK(iid_exact_failure(CardDistribution::uniform(2), 2, SecretStrategy::uniform(1, 2),
                          SecretStrategy::uniform(1, 2)) == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("absorption finishes within the deck size") {
  const auto d = CardDistribution::uniform(13);
  const AbsorptionResult r =
      enlarged_chain_absorption(d, 52, SecretStrategy::fixed(1), SecretStrategy::uniform(1, 13));
  CHECK(r.steps <= 52);
  CHECK(r.coupled + r.escaped == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("failure grows with the magician's first position") {
  const auto d = CardDistribution::uniform(13);
  double prev = 0.0;
  for (int j = 1; j <= 13; ++j) {
    const double f = iid_exact_failure(d, 52, SecretStrategy::fixed(j), SecretStrategy::uniform(1, 13));
    CHECK(f > prev);
    prev = f;
  }
}

TEST_CASE("exact engine preconditions") {
  const auto g = CardDistribution::geometric(0.5);
  CHECK_THROWS_AS(iid_exact_failure(g, 10, SecretStrategy::fixed(1), SecretStrategy::fixed(2)), UnsupportedModel);
  const auto u = CardDistribution::uniform(5);
  CHECK_THROWS_AS(iid_exact_failure(u, 4, SecretStrategy::fixed(1), SecretStrategy::fixed(2)), InvalidParameter);
  CHECK_THROWS_AS(iid_exact_failure(u, 10, SecretStrategy::fixed(6), SecretStrategy::fixed(2)), InvalidParameter);
  CHECK_THROWS_AS(iid_exact_failure(u, 10, SecretStrategy::geometric(0.5), SecretStrategy::fixed(2)),
                  UnsupportedModel);
}

TEST_CASE("travel time laws") {
  for (int B = 2; B <= 5; ++B) {
    for (int N = B; N <= 50; N += 3) {
      for (auto v : {TravelVariant::kReduced, TravelVariant::kMinus, TravelVariant::kPlus}) {
        CHECK(std::abs(travel_time_pmf(B, N, v).total() - 1.0) < 1e-10);
      }
      const TravelTimePmf r = travel_time_pmf(B, N, TravelVariant::kReduced);
      for (int j = 0; j < 2.0 * N / B - 1; ++j) CHECK(r.prob(j) == 0.0);
    }
  }
  // Every jump is 1, so pebbles alternate and the fifth move is the first
  // to pass position 2.
  const TravelTimePmf m = travel_time_pmf(2, 2, TravelVariant::kMinus);
  CHECK(m.prob(5) == 1.0);
  CHECK(m.min_support() == 5);
  CHECK_THROWS_AS(travel_time_pmf(3, 2, TravelVariant::kReduced), InvalidParameter);
}

TEST_CASE("travel-time identity agrees with the enlarged chain") {
  for (int B = 2; B <= 5; ++B) {
    for (int N = B; N <= 30; N += 1) {
      const double exact = iid_exact_failure(CardDistribution::uniform(B), N, SecretStrategy::uniform(1, B),
                                             SecretStrategy::uniform(1, B));
      CHECK(std::abs(failure_via_lemma41(B, N) - exact) <= 1e-10);
    }
  }
  CHECK(failure_via_lemma41(2, 2) == doctest::Approx(0.25));
  const double e13 = failure_via_lemma41(13, 52);
  CHECK(std::abs(e13 - 0.3402755) < 1e-6);
}

TEST_CASE("sandwich and crude bounds") {
  CHECK(crude_upper_bound(4, 8) == doctest::Approx(0.5625));
  CHECK(crude_upper_bound(13, 52) == doctest::Approx(std::pow(12.0 / 13, 6)));
  const SandwichBounds s22 = sandwich_bounds(2, 2);
  CHECK(s22.p_minus == doctest::Approx(0.0625));
  CHECK(s22.p_plus == doctest::Approx(0.25));
  const std::pair<int, int> grid[] = {{4, 8}, {3, 30}, {5, 50}, {3, 6}, {10, 20}, {13, 26}, {10, 52}};
  for (const auto& [B, N] : grid) {
    const SandwichBounds s = sandwich_bounds(B, N);
    const double exact = failure_via_lemma41(B, N);
    CAPTURE(B);
    CAPTURE(N);
    CHECK(s.p_minus <= exact);
    CHECK(exact <= s.p_plus);
    CHECK(exact <= crude_upper_bound(B, N));
  }
  for (int B = 3; B <= 13; ++B) CHECK(failure_via_lemma41(B, 4 * B) <= crude_upper_bound(B, 4 * B));
}

TEST_CASE("pebble laws after two moves") {
  const PebbleLaw r = pebble_distribution(4, 2, TravelVariant::kReduced);
  const PebbleLaw m = pebble_distribution(4, 2, TravelVariant::kMinus);
  for (int i = 1; i <= 4; ++i) {
    for (int j = 1; j <= 4; ++j) {
      CHECK(r.q(i, j) == doctest::Approx(i == j ? 0.0 : 1.0 / 12));
      if (i <= 3 && j <= 3) CHECK(m.q(i, j) == doctest::Approx(1.0 / 9));
    }
  }
  CHECK(r.total() == doctest::Approx(1.0));
  CHECK(m.total() == doctest::Approx(1.0));
  CHECK(r.q.minCoeff() >= 0.0);
  CHECK_THROWS(pebble_distribution(4, 1, TravelVariant::kReduced));
}

TEST_CASE("majorization holds once pebble colours are forgotten") {
  for (int B : {3, 4}) {
    for (int t = 2; t <= 6; ++t) {
      const PebbleLaw r = pebble_distribution(B, t, TravelVariant::kReduced).color_blind();
      const PebbleLaw m = pebble_distribution(B, t, TravelVariant::kMinus).color_blind();
      const PebbleLaw p = pebble_distribution(B, t, TravelVariant::kPlus).color_blind();
      CAPTURE(B);
      CAPTURE(t);
      CHECK(majorization_slack(m, r) >= -1e-12);
      CHECK(majorization_slack(r, p) >= -1e-12);
    }
  }
}

TEST_CASE("coloured pebble laws break the upper majorization") {
  // Pinned counterexample: with colours kept, the plus law puts more mass in
  // some lower-left quadrant than the reduced law after three moves.
  for (int B : {3, 4}) {
    const PebbleLaw r = pebble_distribution(B, 3, TravelVariant::kReduced);
    const PebbleLaw p = pebble_distribution(B, 3, TravelVariant::kPlus);
    CHECK(majorization_slack(r, p) < -1e-3);
  }
}
