#include "kruskal/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>
#include <thread>

#include "kruskal/errors.hpp"
#include "kruskal/exact.hpp"

namespace kruskal {

namespace {

constexpr std::uint64_t kBlockTrials = 4096;

void validate(const ExperimentConfig& config) {
  if (config.trials < 1) throw InvalidConfig("trials must be >= 1");
  if (config.N < 1) throw InvalidConfig("deck length must be >= 1");
  if (std::holds_alternative<ShuffledDeckModel>(config.deck_model) && config.N != 52) {
    throw InvalidConfig("shuffled decks have 52 cards");
  }
  for (const SecretStrategy* s : {&config.magician, &config.subject}) {
    if (!s->is_geometric() && s->max_secret() > config.N) {
      throw InvalidConfig("strategy " + s->describe() + " reaches beyond the deck");
    }
  }
}

// Draws one trial's deck and secrets into `deck`.
struct TrialDraw {
  int subject = 1;
  int magician = 1;
};

class TrialSampler {
 public:
  explicit TrialSampler(const ExperimentConfig& config) : config_(config) {
    if (const auto* s = std::get_if<ShuffledDeckModel>(&config.deck_model)) {
      base_ = standard_deck_values(s->variation);
    }
    deck_.resize(static_cast<std::size_t>(config.N));
  }

  TrialDraw draw(std::uint64_t trial) {
    CounterRng rng(config_.seed, trial);
    if (const auto* iid = std::get_if<IidDeckModel>(&config_.deck_model)) {
      for (int& v : deck_) v = iid->dist.sample(rng);
    } else {
      std::copy(base_.begin(), base_.end(), deck_.begin());
      shuffle_in_place(deck_, rng);
    }
    TrialDraw d;
    d.subject = config_.subject.sample(rng);
    d.magician = config_.magician.sample(rng);
    return d;
  }

  const std::vector<int>& deck() const { return deck_; }

 private:
  const ExperimentConfig& config_;
  std::vector<int> base_;
  std::vector<int> deck_;
};

bool trial_fails(const std::vector<int>& deck, const TrialDraw& d) {
  const auto subject = tapped_position(deck, d.subject);
  const auto magician = tapped_position(deck, d.magician);
  return !subject || !magician || *subject != *magician;
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

std::string describe(const DeckModel& model) {
  if (const auto* s = std::get_if<ShuffledDeckModel>(&model)) {
    return std::string("shuffled:") + s->variation.letter();
  }
  const auto& dist = std::get<IidDeckModel>(model).dist;
  std::ostringstream os;
  os.precision(17);
  os << "iid:" << to_string(dist.family());
  if (dist.bounded()) {
    os << ':' << *dist.max_value();
  } else {
    os << ':' << dist.p();
  }
  return os.str();
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  validate(config);
  const auto start = std::chrono::steady_clock::now();

  const std::uint64_t blocks = (config.trials + kBlockTrials - 1) / kBlockTrials;
  unsigned workers = config.workers != 0 ? config.workers : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, blocks));

  std::atomic<std::uint64_t> next_block{0};
  std::atomic<std::uint64_t> failures{0};
  auto work = [&] {
    TrialSampler sampler(config);
    std::uint64_t local = 0;
    for (std::uint64_t b = next_block++; b < blocks; b = next_block++) {
      const std::uint64_t end = std::min(config.trials, (b + 1) * kBlockTrials);
      for (std::uint64_t t = b * kBlockTrials; t < end; ++t) {
        const TrialDraw d = sampler.draw(t);
        local += trial_fails(sampler.deck(), d) ? 1 : 0;
      }
    }
    failures += local;
  };

  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }

  ExperimentResult result;
  result.config = config;
  result.trials = config.trials;
  result.failures = failures.load();
  result.failure_estimate = static_cast<double>(result.failures) / static_cast<double>(result.trials);
  const double f = result.failure_estimate;
  result.std_error = std::sqrt(f * (1.0 - f) / static_cast<double>(result.trials));
  result.seed = config.seed;
  result.runtime_ms = elapsed_ms(start);
  return result;
}

std::vector<TrialTrace> trace_trials(const ExperimentConfig& config, std::uint64_t count) {
  validate(config);
  TrialSampler sampler(config);
  std::vector<TrialTrace> out;
  for (std::uint64_t t = 0; t < std::min(count, config.trials); ++t) {
    const TrialDraw d = sampler.draw(t);
    TrialTrace trace;
    trace.trial = t;
    trace.deck = sampler.deck();
    trace.subject = key_positions(trace.deck, d.subject);
    trace.magician = key_positions(trace.deck, d.magician);
    trace.outcome = trick_outcome(trace.deck, d.subject, d.magician);
    out.push_back(std::move(trace));
  }
  return out;
}

FailureTable table_from_string(const std::string& which) {
  if (which == "5.1") return FailureTable::kVariationA;
  if (which == "5.2") return FailureTable::kVariationsBC;
  throw InvalidParameter("table must be 5.1 or 5.2");
}

ResultTable reproduce_table(FailureTable which, std::uint64_t trials, const SeedSpec& seed, unsigned workers) {
  if (trials < 10'000) throw InvalidConfig("table reproduction needs at least 10^4 trials per cell");
  const auto start = std::chrono::steady_clock::now();
  constexpr double kExactCell = std::numeric_limits<double>::quiet_NaN();

  struct Column {
    std::string name;
    bool monte_carlo;
    RulesVariation variation;  // Monte Carlo columns
    CardDistribution dist;     // exact columns
  };

  ResultTable table;
  table.trials = trials;
  table.seed = seed;
  std::vector<Column> columns;
  int max_value = 0;
  if (which == FailureTable::kVariationA) {
    table.id = "5.1";
    const RulesVariation a{Variation::kA};
    columns.push_back({"kruskal", true, a, distribution_for_variation(a)});
    columns.push_back({"uniform", false, a, CardDistribution::uniform(13)});
    max_value = 13;
  } else {
    table.id = "5.2";
    const RulesVariation b{Variation::kB};
    const RulesVariation c{Variation::kC};
    columns.push_back({"kruskal_b", true, b, distribution_for_variation(b)});
    columns.push_back({"semiuniform_b", false, b, distribution_for_variation(b)});
    columns.push_back({"kruskal_c", true, c, distribution_for_variation(c)});
    columns.push_back({"semiuniform_c", false, c, distribution_for_variation(c)});
    columns.push_back({"uniform", false, c, CardDistribution::uniform(10)});
    max_value = 10;
  }
  for (const Column& c : columns) table.columns.push_back(c.name);

  const SecretStrategy subject = SecretStrategy::uniform(1, max_value);
  for (int row = 0; row <= max_value; ++row) {
    const bool avg = row == max_value;
    const SecretStrategy magician = avg ? SecretStrategy::uniform(1, max_value) : SecretStrategy::fixed(row + 1);
    TableRow out;
    out.label = avg ? "avg" : std::to_string(row + 1);
    for (std::size_t col = 0; col < columns.size(); ++col) {
      const Column& c = columns[col];
      if (c.monte_carlo) {
        ExperimentConfig cfg;
        cfg.deck_model = ShuffledDeckModel{c.variation};
        cfg.N = 52;
        cfg.magician = magician;
        cfg.subject = subject;
        cfg.trials = trials;
        cfg.seed = {seed.master_seed, seed.stream_id * 10'000 + col * 100 + static_cast<std::uint64_t>(row)};
        cfg.workers = workers;
        const ExperimentResult r = run_experiment(cfg);
        out.values.push_back(r.failure_estimate);
        out.std_errors.push_back(r.std_error);
      } else {
        out.values.push_back(iid_exact_failure(c.dist, 52, magician, subject));
        out.std_errors.push_back(kExactCell);
      }
    }
    table.rows.push_back(std::move(out));
  }
  table.runtime_ms = elapsed_ms(start);
  return table;
}

}  // namespace kruskal
