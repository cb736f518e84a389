#include "kruskal/cli.hpp"

#include <charconv>
#include <chrono>
#include <cstdlib>
#include <sstream>

#include <CLI11.hpp>

#include "kruskal/asymptotics.hpp"
#include "kruskal/chains.hpp"
#include "kruskal/errors.hpp"
#include "kruskal/exact.hpp"
#include "kruskal/manifest.hpp"
#include "kruskal/montecarlo.hpp"
#include "kruskal/output.hpp"

#ifndef KRUSKAL_VERSION
#define KRUSKAL_VERSION "0.0.0"
#endif

namespace kruskal {

namespace {

constexpr const char* kSeedEnv = "COUPLING_COUNT_SEED";
constexpr std::uint64_t kTraceTrials = 10;

struct GlobalOptions {
  std::string seed_text;
  std::uint64_t stream = 0;
  std::string format = "csv";
  std::string out_path;
  std::uint64_t trials = 1'000'000;
  bool trace = false;
  int N = 52;
  unsigned workers = 0;
};

struct DistOptions {
  std::string model;
  std::string p;
  int B = 0;
  std::string variation = "c";
  std::string masses;
};

struct Dist {
  CardDistribution dist;
  std::string label;
};

std::uint64_t parse_u64(const std::string& text, const std::string& what) {
  std::uint64_t v = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (text.empty() || ec != std::errc() || ptr != end) throw InvalidParameter(what + " must be an unsigned 64-bit integer");
  return v;
}

void add_dist_options(CLI::App* sub, DistOptions& d) {
  sub->add_option("--model", d.model, "geometric | uniform | semiuniform | custom")
      ->check(CLI::IsMember({"geometric", "uniform", "semiuniform", "custom"}));
  sub->add_option("--p", d.p, "geometric parameter, decimal or a/b");
  sub->add_option("--B", d.B, "largest card value for --model uniform");
  sub->add_option("--variation", d.variation, "rules variation a | b | c")->check(CLI::IsMember({"a", "b", "c"}));
  sub->add_option("--masses", d.masses, "comma-separated masses of values 1, 2, ... (decimals or a/b)");
}

Dist build_distribution(const DistOptions& d) {
  if (d.model.empty()) throw InvalidParameter("--model is required");
  if (d.model == "geometric") {
    if (d.p.empty()) throw InvalidParameter("--model geometric needs --p");
    if (const auto r = parse_rational(d.p)) return {CardDistribution::geometric(*r), "geometric:" + d.p};
    return {CardDistribution::geometric(parse_number(d.p)), "geometric:" + d.p};
  }
  if (d.model == "uniform") {
    if (d.B < 1) throw InvalidParameter("--model uniform needs --B >= 1");
    return {CardDistribution::uniform(d.B), "uniform:" + std::to_string(d.B)};
  }
  if (d.model == "semiuniform") {
    return {distribution_for_variation(variation_from_string(d.variation)), "semiuniform:" + d.variation};
  }
  if (d.masses.empty()) throw InvalidParameter("--model custom needs --masses");
  std::vector<std::string> parts;
  std::stringstream ss(d.masses);
  for (std::string item; std::getline(ss, item, ',');) parts.push_back(item);
  std::vector<Rational> exact;
  for (const auto& part : parts) {
    const auto r = parse_rational(part);
    if (!r) break;
    exact.push_back(*r);
  }
  if (exact.size() == parts.size()) return {CardDistribution::from_rational_masses(exact), "custom"};
  std::vector<double> masses;
  for (const auto& part : parts) masses.push_back(parse_number(part));
  return {CardDistribution::from_masses(masses), "custom"};
}

// "uniform" alone means uniform over 1..max_value.
SecretStrategy resolve_strategy(const std::string& text, std::optional<int> max_value) {
  if (text == "uniform") {
    if (!max_value) throw InvalidParameter("bare 'uniform' strategy needs a bounded card law");
    return SecretStrategy::uniform(1, *max_value);
  }
  return SecretStrategy::parse(text);
}

class Runner {
 public:
  Runner(const GlobalOptions& g, const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
      : g_(g), out_(out), err_(err) {
    manifest_.tool_version = tool_version();
    manifest_.command_line.push_back("kruskal");
    manifest_.command_line.insert(manifest_.command_line.end(), args.begin(), args.end());
    manifest_.started_at = iso8601_utc(std::chrono::system_clock::now());
    seed_ = resolve_seed();
    manifest_.seed = seed_;
  }

  const SeedSpec& seed() const { return seed_; }
  OutputFormat format() const { return format_from_string(g_.format); }
  std::ostream& err() { return err_; }

  void emit(const std::string& text) {
    if (g_.out_path.empty()) {
      out_ << text;
    } else {
      write_with_manifest(g_.out_path, text, manifest_);
    }
  }

  void emit(const Json& j) { emit(j.dump(2) + "\n"); }

 private:
  SeedSpec resolve_seed() {
    SeedSpec s{0, g_.stream};
    if (!g_.seed_text.empty()) {
      s.master_seed = parse_u64(g_.seed_text, "--seed");
      manifest_.seed_source = "flag";
    } else if (const char* env = std::getenv(kSeedEnv); env && *env) {
      s.master_seed = parse_u64(env, kSeedEnv);
      manifest_.seed_source = "env";
    } else {
      manifest_.seed_source = "default";
    }
    return s;
  }

  const GlobalOptions& g_;
  std::ostream& out_;
  std::ostream& err_;
  Manifest manifest_;
  SeedSpec seed_;
};

Json envelope(const Json& config, const ValueTable& rows) {
  return {{"config", config}, {"rows", rows_to_json(rows)}};
}

void emit_table(Runner& run, const Json& config, const ValueTable& rows, CsvPrecision precision) {
  if (run.format() == OutputFormat::kJson) {
    run.emit(envelope(config, rows));
  } else {
    run.emit(to_csv(rows, precision));
  }
}

// exact ---------------------------------------------------------------------

struct ExactOptions {
  DistOptions dist;
  std::string strategy = "uniform";
  std::string subject = "uniform";
};

void run_exact(Runner& run, const GlobalOptions& g, const ExactOptions& o) {
  const Dist d = build_distribution(o.dist);
  ValueTable t{{"model", "B", "N", "strategy", "value"}, {}};
  Json config = {{"command", "exact"}, {"model", d.label}, {"N", g.N}};
  if (!d.dist.bounded()) {
    double value = 0.0;
    if (o.strategy == "geometric") {
      value = geometric_failure(d.dist.p(), g.N);
    } else if (o.strategy == "first") {
      value = geometric_first_card_failure(d.dist.p(), g.N);
    } else {
      throw UnsupportedModel("geometric decks support --strategy geometric or first");
    }
    config["strategy"] = o.strategy;
    t.rows.push_back({d.label, std::string(), std::int64_t{g.N}, o.strategy, value});
  } else {
    const int B = *d.dist.max_value();
    const SecretStrategy magician = resolve_strategy(o.strategy, B);
    const SecretStrategy subject = resolve_strategy(o.subject, B);
    const AbsorptionResult r = enlarged_chain_absorption(d.dist, g.N, magician, subject);
    if (g.trace) run.err() << "absorbed after " << r.steps << " steps, coupled mass " << r.coupled << "\n";
    const std::string label = magician.describe() + " vs " + subject.describe();
    config["magician"] = magician.describe();
    config["subject"] = subject.describe();
    t.rows.push_back({d.label, std::int64_t{B}, std::int64_t{g.N}, label, r.escaped});
  }
  emit_table(run, config, t, CsvPrecision::kSixDecimals);
}

// bounds --------------------------------------------------------------------

void run_bounds(Runner& run, const GlobalOptions& g, int B) {
  const SandwichBounds s = sandwich_bounds(B, g.N);
  const double exact = failure_via_lemma41(B, g.N);
  const std::string strategy = "uniform:1:" + std::to_string(B) + " vs uniform:1:" + std::to_string(B);
  ValueTable t{{"model", "B", "N", "strategy", "value"}, {}};
  const std::pair<const char*, double> rows[] = {
      {"lower_bound", s.p_minus}, {"exact", exact}, {"upper_bound", s.p_plus}, {"crude_upper", crude_upper_bound(B, g.N)}};
  for (const auto& [name, value] : rows) {
    t.rows.push_back({std::string(name), std::int64_t{B}, std::int64_t{g.N}, strategy, value});
  }
  emit_table(run, {{"command", "bounds"}, {"B", B}, {"N", g.N}}, t, CsvPrecision::kSixDecimals);
}

// asympt --------------------------------------------------------------------

void run_asympt(Runner& run, const std::vector<int>& Bs) {
  ValueTable t{{"B", "alpha_minus", "alpha_plus", "crude_lower", "lambda_hr", "lambda_scaled"}, {}};
  for (int B : Bs) {
    const DecayRates r = decay_rates(B);
    t.rows.push_back({std::int64_t{B}, r.alpha_minus, r.alpha_plus, r.alpha_crude_lower, r.lambda_hr,
                      std::pow(r.lambda_hr, 2.0 / B)});
  }
  emit_table(run, {{"command", "asympt"}, {"B", Bs}}, t, CsvPrecision::kSixDecimals);
}

// chains --------------------------------------------------------------------

struct ChainOptions {
  std::string build;
  DistOptions dist;  // --B doubles as the chain size
  bool stationary = false;
};

void run_chains(Runner& run, const ChainOptions& o) {
  const int B = o.dist.B;
  Json config = {{"command", "chains"}, {"build", o.build}};
  const TransitionMatrix m = [&] {
    if (o.build == "m_pi") {
      const Dist d = build_distribution(o.dist);
      config["model"] = d.label;
      return build_m_pi(d.dist);
    }
    if (B < 2) throw InvalidParameter("--build " + o.build + " needs --B >= 2");
    config["B"] = B;
    if (o.build == "leapfrog") return build_leapfrog(B);
    if (o.build == "reduced") return build_reduced_leapfrog(B);
    return build_bounding_chain(B, o.build == "minus" ? BoundingVariant::kMinus : BoundingVariant::kPlus);
  }();

  if (o.stationary) {
    const StateDistribution s = stationary_distribution(m);
    ValueTable t{{"state", "weight"}, {}};
    for (std::size_t i = 0; i < s.labels().size(); ++i) {
      t.rows.push_back({std::int64_t{s.labels()[i]}, s.weights()(static_cast<Eigen::Index>(i))});
    }
    config["stationary"] = true;
    emit_table(run, config, t, CsvPrecision::kRoundTrip);
    return;
  }
  if (run.format() == OutputFormat::kJson) {
    run.emit(Json{{"config", config}, {"matrix", matrix_to_json(m)}});
  } else {
    run.emit(matrix_to_csv(m));
  }
}

// mc ------------------------------------------------------------------------

struct McOptions {
  std::string deck = "shuffled";
  DistOptions dist;
  std::string strategy = "first";
  std::string subject = "uniform";
};

void run_mc(Runner& run, const GlobalOptions& g, const McOptions& o) {
  ExperimentConfig cfg;
  std::optional<int> max_value;
  if (o.deck == "shuffled") {
    const RulesVariation v = variation_from_string(o.dist.variation);
    cfg.deck_model = ShuffledDeckModel{v};
    max_value = v.max_value();
  } else {
    Dist d = build_distribution(o.dist);
    max_value = d.dist.max_value();
    cfg.deck_model = IidDeckModel{std::move(d.dist)};
  }
  cfg.N = g.N;
  cfg.magician = resolve_strategy(o.strategy, max_value);
  cfg.subject = resolve_strategy(o.subject, max_value);
  cfg.trials = g.trials;
  cfg.seed = run.seed();
  cfg.workers = g.workers;

  const ExperimentResult r = run_experiment(cfg);
  if (g.trace) run.err() << trace_to_json(trace_trials(cfg, kTraceTrials)).dump() << "\n";
  if (run.format() == OutputFormat::kJson) {
    run.emit(experiment_to_json(r));
  } else {
    run.emit(experiment_to_csv(r));
  }
}

// tables --------------------------------------------------------------------

void run_tables(Runner& run, const GlobalOptions& g, const std::string& which) {
  const ResultTable t = reproduce_table(table_from_string(which), g.trials, run.seed(), g.workers);
  if (run.format() == OutputFormat::kJson) {
    run.emit(table_to_json(t));
  } else {
    run.emit(table_to_csv(t));
  }
}

}  // namespace

std::string tool_version() { return KRUSKAL_VERSION; }

int parse_and_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Failure probabilities of the Kruskal count card trick", "kruskal"};
  app.require_subcommand(1);
  app.set_version_flag("--version", tool_version());

  GlobalOptions g;
  app.add_option("--seed", g.seed_text, "master seed (falls back to $COUPLING_COUNT_SEED, then 0)");
  app.add_option("--stream", g.stream, "seed stream id");
  app.add_option("--format", g.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", g.out_path, "write here (plus a .manifest.json sidecar) instead of stdout");
  app.add_option("--trials", g.trials, "Monte Carlo trials")->check(CLI::PositiveNumber);
  app.add_flag("--trace", g.trace, "print trajectories or absorption details to stderr");
  app.add_option("--N", g.N, "deck length")->check(CLI::PositiveNumber);
  app.add_option("--workers", g.workers, "Monte Carlo threads, 0 for all cores");

  ExactOptions exact;
  auto* exact_cmd = app.add_subcommand("exact", "exact failure probability");
  add_dist_options(exact_cmd, exact.dist);
  exact_cmd->add_option("--strategy", exact.strategy,
                        "magician: geometric | first | uniform | fixed:J | uniform:LO:HI");
  exact_cmd->add_option("--subject", exact.subject, "subject strategy (bounded decks)");

  int bounds_b = 0;
  auto* bounds_cmd = app.add_subcommand("bounds", "sandwich and crude bounds for uniform decks");
  bounds_cmd->add_option("--B", bounds_b, "largest card value")->required();

  std::vector<int> asympt_b;
  auto* asympt_cmd = app.add_subcommand("asympt", "decay rates");
  asympt_cmd->add_option("--B", asympt_b, "one or more largest card values")->required()->expected(1, -1);

  ChainOptions chains;
  auto* chains_cmd = app.add_subcommand("chains", "transition matrices as CSV");
  chains_cmd->add_option("--build", chains.build, "m_pi | leapfrog | reduced | minus | plus")
      ->required()
      ->check(CLI::IsMember({"m_pi", "leapfrog", "reduced", "minus", "plus"}));
  add_dist_options(chains_cmd, chains.dist);
  chains_cmd->add_flag("--stationary", chains.stationary, "print the stationary law instead");

  McOptions mc;
  auto* mc_cmd = app.add_subcommand("mc", "Monte Carlo failure estimate");
  mc_cmd->add_option("--deck", mc.deck, "shuffled | iid")->check(CLI::IsMember({"shuffled", "iid"}));
  add_dist_options(mc_cmd, mc.dist);
  mc_cmd->add_option("--strategy", mc.strategy, "magician strategy");
  mc_cmd->add_option("--subject", mc.subject, "subject strategy");

  std::string which;
  auto* tables_cmd = app.add_subcommand("tables", "reproduce the failure tables");
  tables_cmd->add_option("--which", which, "5.1 | 5.2")->required()->check(CLI::IsMember({"5.1", "5.2"}));

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  try {
    Runner run(g, args, out, err);
    if (exact_cmd->parsed()) {
      run_exact(run, g, exact);
    } else if (bounds_cmd->parsed()) {
      run_bounds(run, g, bounds_b);
    } else if (asympt_cmd->parsed()) {
      run_asympt(run, asympt_b);
    } else if (chains_cmd->parsed()) {
      run_chains(run, chains);
    } else if (mc_cmd->parsed()) {
      run_mc(run, g, mc);
    } else {
      run_tables(run, g, which);
    }
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const NumericalFailure& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace kruskal
