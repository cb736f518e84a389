#include <doctest.h>

#include <cmath>

#include "kruskal/errors.hpp"
#include "kruskal/exact.hpp"
#include "kruskal/montecarlo.hpp"

using namespace kruskal;

namespace {

ExperimentConfig shuffled_config(Variation v, std::uint64_t trials) {
  ExperimentConfig c;
  c.deck_model = ShuffledDeckModel{RulesVariation{v}};
  c.magician = SecretStrategy::fixed(1);
  c.subject = SecretStrategy::uniform(1, RulesVariation{v}.max_value());
  c.trials = trials;
  c.seed = {99, 1};
  return c;
}

}  // namespace

TEST_CASE("results do not depend on the worker count") {
  ExperimentConfig c = shuffled_config(Variation::kC, 30'000);
  c.workers = 1;
  const ExperimentResult one = run_experiment(c);
  c.workers = 3;
  const ExperimentResult three = run_experiment(c);
  c.workers = 0;
  const ExperimentResult any = run_experiment(c);
  CHECK(one.failures == three.failures);
  CHECK(one.failures == any.failures);
  CHECK(one.failure_estimate == three.failure_estimate);

  c.seed.stream_id = 2;
  CHECK(run_experiment(c).failures != one.failures);
}

TEST_CASE("estimate and standard error") {
  ExperimentConfig c = shuffled_config(Variation::kA, 1);
  const ExperimentResult r = run_experiment(c);
  CHECK((r.failure_estimate == 0.0 || r.failure_estimate == 1.0));
  CHECK(r.std_error == 0.0);

  c.trials = 12'345;
  const ExperimentResult s = run_experiment(c);
  CHECK(s.failure_estimate == static_cast<double>(s.failures) / 12'345);
  const double f = s.failure_estimate;
  CHECK(s.std_error == doctest::Approx(std::sqrt(f * (1 - f) / 12'345)));
  CHECK(s.seed == c.seed);
  CHECK(s.config.trials == c.trials);
}

TEST_CASE("i.i.d. uniform decks agree with the exact engine") {
  ExperimentConfig c;
  c.deck_model = IidDeckModel{CardDistribution::uniform(13)};
  c.magician = SecretStrategy::fixed(1);
  c.subject = SecretStrategy::uniform(1, 13);
  c.trials = 200'000;
  c.seed = {5, 0};
  const ExperimentResult r = run_experiment(c);
  const double exact = iid_exact_failure(CardDistribution::uniform(13), 52, c.magician, c.subject);
  CHECK(std::abs(r.failure_estimate - exact) <= 4 * r.std_error);
}

TEST_CASE("geometric decks agree with the closed form") {
  ExperimentConfig c;
  c.deck_model = IidDeckModel{CardDistribution::geometric(Rational(6, 7))};
  c.magician = SecretStrategy::geometric(6.0 / 7);
  c.subject = SecretStrategy::geometric(6.0 / 7);
  c.trials = 200'000;
  c.seed = {6, 0};
  const ExperimentResult r = run_experiment(c);
  CHECK(std::abs(r.failure_estimate - geometric_failure(6.0 / 7, 52)) <= 4 * r.std_error);

  c.magician = SecretStrategy::fixed(1);
  const ExperimentResult first = run_experiment(c);
  CHECK(std::abs(first.failure_estimate - geometric_first_card_failure(6.0 / 7, 52)) <= 4 * first.std_error);
}

TEST_CASE("invalid configurations") {
  ExperimentConfig c = shuffled_config(Variation::kB, 100);
  c.magician = SecretStrategy::fixed(53);
  CHECK_THROWS_AS(run_experiment(c), InvalidConfig);
  c = shuffled_config(Variation::kB, 100);
  c.N = 40;
  CHECK_THROWS_AS(run_experiment(c), InvalidConfig);
  c = shuffled_config(Variation::kB, 0);
  CHECK_THROWS_AS(run_experiment(c), InvalidConfig);
  CHECK_THROWS_AS(reproduce_table(FailureTable::kVariationA, 9'999, SeedSpec{}), InvalidConfig);
  CHECK_THROWS_AS(table_from_string("4.1"), InvalidParameter);
}

TEST_CASE("traces replay the experiment's trials") {
  ExperimentConfig c = shuffled_config(Variation::kC, 64);
  const auto traces = trace_trials(c, 64);
  REQUIRE(traces.size() == 64);
  std::uint64_t failures = 0;
  for (const auto& t : traces) {
    failures += t.outcome.success ? 0 : 1;
    CHECK(t.deck.size() == 52);
    CHECK(t.magician.secret == 1);
  }
  CHECK(failures == run_experiment(c).failures);
}

TEST_CASE("table layout") {
  const ResultTable t = reproduce_table(FailureTable::kVariationsBC, 10'000, SeedSpec{1, 0});
  CHECK(t.id == "5.2");
  CHECK(t.columns ==
        std::vector<std::string>{"kruskal_b", "semiuniform_b", "kruskal_c", "semiuniform_c", "uniform"});
  REQUIRE(t.rows.size() == 11);
  CHECK(t.rows.back().label == "avg");
  CHECK(t.rows[0].label == "1");
  CHECK(std::isnan(t.rows[0].std_errors[1]));
  CHECK(t.rows[0].std_errors[0] > 0.0);
  CHECK(std::abs(t.rows[0].values[4] - 0.150944) < 5e-7);
  CHECK(std::abs(t.rows.back().values[1] - 0.298258) < 5e-7);
}
