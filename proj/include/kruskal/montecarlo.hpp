#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "kruskal/counting.hpp"
#include "kruskal/deck_model.hpp"
#include "kruskal/rng.hpp"
#include "kruskal/strategy.hpp"

namespace kruskal {

struct ShuffledDeckModel {
  RulesVariation variation;
};
struct IidDeckModel {
  CardDistribution dist;
};
using DeckModel = std::variant<ShuffledDeckModel, IidDeckModel>;

std::string describe(const DeckModel& model);

struct ExperimentConfig {
  DeckModel deck_model = ShuffledDeckModel{};
  int N = 52;
  SecretStrategy magician = SecretStrategy::fixed(1);
  SecretStrategy subject = SecretStrategy::uniform(1, 10);
  std::uint64_t trials = 1'000'000;
  SeedSpec seed;
  // 0 picks std::thread::hardware_concurrency(). Never changes the result.
  unsigned workers = 0;
};

struct ExperimentResult {
  ExperimentConfig config;
  std::uint64_t trials = 0;
  std::uint64_t failures = 0;
  double failure_estimate = 0.0;  // failures / trials
  double std_error = 0.0;         // sqrt(f (1 - f) / trials)
  SeedSpec seed;
  double runtime_ms = 0.0;
};

// Each trial draws its deck, then the subject's secret, then the magician's,
// from CounterRng(seed, trial_index). Secrets beyond the deck count as
// failures. Throws InvalidConfig for bounded strategies reaching past N or a
// shuffled deck whose length is not 52.
ExperimentResult run_experiment(const ExperimentConfig& config);

struct TrialTrace {
  std::uint64_t trial = 0;
  std::vector<int> deck;
  KeyTrajectory subject;
  KeyTrajectory magician;
  TrickOutcome outcome;
};

// Replays the first `count` trials of an experiment with full trajectories.
std::vector<TrialTrace> trace_trials(const ExperimentConfig& config, std::uint64_t count);

enum class FailureTable { kVariationA, kVariationsBC };

FailureTable table_from_string(const std::string& which);  // "5.1" or "5.2"

struct TableRow {
  std::string label;            // "1".."13" or "avg"
  std::vector<double> values;   // one per column
  std::vector<double> std_errors;  // NaN for exact cells
};

struct ResultTable {
  std::string id;  // "5.1" or "5.2"
  std::vector<std::string> columns;
  std::vector<TableRow> rows;
  std::uint64_t trials = 0;
  SeedSpec seed;
  double runtime_ms = 0.0;
};

// Rows are the magician's fixed first key position j plus "avg" (magician
// uniform over the card values); the subject is uniform over the card
// values. Kruskal columns are Monte Carlo on shuffled 52-card decks, the
// i.i.d. columns come from the exact engine.
ResultTable reproduce_table(FailureTable which, std::uint64_t trials, const SeedSpec& seed, unsigned workers = 0);

}  // namespace kruskal
