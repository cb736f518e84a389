#include "kruskal/deck_model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

#include "kruskal/errors.hpp"

namespace kruskal {

namespace {

// Boost 1.74 recurses forever comparing rational<int64_t> with int.
const Rational kZero(0);
const Rational kOne(1);

}  // namespace

std::string to_string(Family family) {
  switch (family) {
    case Family::kGeometric: return "geometric";
    case Family::kUniform: return "uniform";
    case Family::kSemiuniform: return "semiuniform";
    case Family::kCustom: return "custom";
  }
  return "custom";
}

Family family_from_string(const std::string& name) {
  if (name == "geometric") return Family::kGeometric;
  if (name == "uniform") return Family::kUniform;
  if (name == "semiuniform") return Family::kSemiuniform;
  if (name == "custom") return Family::kCustom;
  throw InvalidParameter("unknown distribution family '" + name + "'");
}

CardDistribution CardDistribution::uniform(int max_value) {
  if (max_value < 1) throw InvalidParameter("uniform distribution needs max_value >= 1");
  std::vector<Rational> masses(static_cast<std::size_t>(max_value), Rational(1, max_value));
  return from_rational_masses(std::move(masses), Family::kUniform);
}

CardDistribution CardDistribution::point_mass(int value) {
  if (value < 1) throw InvalidParameter("card values are >= 1");
  std::vector<Rational> masses(static_cast<std::size_t>(value), Rational(0));
  masses.back() = 1;
  return from_rational_masses(std::move(masses), Family::kCustom);
}

CardDistribution CardDistribution::geometric(double p) {
  if (!(p > 0.0 && p < 1.0)) throw InvalidParameter("geometric parameter must lie in (0,1)");
  CardDistribution d;
  d.family_ = Family::kGeometric;
  d.p_ = p;
  d.mean_ = 1.0 / (1.0 - p);
  return d;
}

CardDistribution CardDistribution::geometric(const Rational& p) {
  if (!(p > kZero && p < kOne)) throw InvalidParameter("geometric parameter must lie in (0,1)");
  CardDistribution d = geometric(to_double(p));
  d.exact_p_ = p;
  return d;
}

CardDistribution CardDistribution::from_masses(std::vector<double> masses, Family family) {
  if (family == Family::kGeometric) throw InvalidParameter("use CardDistribution::geometric");
  while (!masses.empty() && masses.back() == 0.0) masses.pop_back();
  if (masses.empty()) throw InvalidParameter("distribution has no mass");
  double total = 0.0;
  for (double m : masses) {
    if (!(m >= 0.0 && m <= 1.0)) throw InvalidParameter("masses must lie in [0,1]");
    total += m;
  }
  if (std::abs(total - 1.0) > 1e-12) throw InvalidParameter("masses must sum to 1");
  CardDistribution d;
  d.family_ = family;
  d.masses_ = std::move(masses);
  d.finish_bounded();
  return d;
}

CardDistribution CardDistribution::from_rational_masses(std::vector<Rational> masses, Family family) {
  if (family == Family::kGeometric) throw InvalidParameter("use CardDistribution::geometric");
  while (!masses.empty() && masses.back() == kZero) masses.pop_back();
  if (masses.empty()) throw InvalidParameter("distribution has no mass");
  Rational total(0);
  for (const Rational& m : masses) {
    if (m < kZero || m > kOne) throw InvalidParameter("masses must lie in [0,1]");
    total += m;
  }
  if (total != kOne) throw InvalidParameter("masses must sum to 1");
  CardDistribution d;
  d.family_ = family;
  d.masses_.reserve(masses.size());
  for (const Rational& m : masses) d.masses_.push_back(to_double(m));
  d.exact_masses_ = std::move(masses);
  d.finish_bounded();
  return d;
}

void CardDistribution::finish_bounded() {
  cdf_.resize(masses_.size());
  std::partial_sum(masses_.begin(), masses_.end(), cdf_.begin());
  cdf_.back() = 1.0;
  mean_ = 0.0;
  for (std::size_t i = 0; i < masses_.size(); ++i) mean_ += static_cast<double>(i + 1) * masses_[i];
}

std::optional<int> CardDistribution::max_value() const {
  if (!bounded()) return std::nullopt;
  return static_cast<int>(masses_.size());
}

double CardDistribution::p() const {
  if (bounded()) throw UnsupportedModel("bounded distribution has no geometric parameter");
  return p_;
}

double CardDistribution::mass(int value) const {
  if (value < 1) return 0.0;
  if (!bounded()) return (1.0 - p_) * std::pow(p_, value - 1);
  if (value > static_cast<int>(masses_.size())) return 0.0;
  return masses_[static_cast<std::size_t>(value - 1)];
}

std::span<const double> CardDistribution::masses() const {
  if (!bounded()) throw UnsupportedModel("geometric distribution has unbounded support");
  return masses_;
}

std::optional<Rational> CardDistribution::exact_mean() const {
  if (!bounded()) {
    if (!exact_p_) return std::nullopt;
    return Rational(1) / (Rational(1) - *exact_p_);
  }
  if (exact_masses_.empty()) return std::nullopt;
  Rational mean(0);
  for (std::size_t i = 0; i < exact_masses_.size(); ++i) {
    mean += static_cast<std::int64_t>(i + 1) * exact_masses_[i];
  }
  return mean;
}

int CardDistribution::sample(CounterRng& rng) const {
  const double u = rng.uniform01();
  if (!bounded()) {
    // P[V > k] = p^k, so V = 1 + floor(log(1-u) / log p).
    const double k = std::floor(std::log1p(-u) / std::log(p_));
    return 1 + static_cast<int>(k);
  }
  const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  return 1 + static_cast<int>(std::min<std::ptrdiff_t>(it - cdf_.begin(),
                                                       static_cast<std::ptrdiff_t>(cdf_.size()) - 1));
}

int RulesVariation::value_of_rank(int rank) const {
  if (rank < 1 || rank > 13) throw InvalidParameter("rank must be in 1..13");
  if (rank <= 10) return rank;
  switch (tag) {
    case Variation::kA: return rank;
    case Variation::kB: return 10;
    case Variation::kC: return 5;
  }
  return rank;
}

char RulesVariation::letter() const noexcept {
  switch (tag) {
    case Variation::kA: return 'a';
    case Variation::kB: return 'b';
    case Variation::kC: return 'c';
  }
  return '?';
}

RulesVariation variation_from_string(const std::string& name) {
  if (name == "a" || name == "A") return {Variation::kA};
  if (name == "b" || name == "B") return {Variation::kB};
  if (name == "c" || name == "C") return {Variation::kC};
  throw InvalidParameter("rules variation must be a, b or c");
}

CardDistribution distribution_for_variation(RulesVariation variation) {
  std::vector<Rational> masses(static_cast<std::size_t>(variation.max_value()), Rational(0));
  for (int rank = 1; rank <= 13; ++rank) {
    masses[static_cast<std::size_t>(variation.value_of_rank(rank) - 1)] += Rational(1, 13);
  }
  const Family family = variation.tag == Variation::kA ? Family::kUniform : Family::kSemiuniform;
  return CardDistribution::from_rational_masses(std::move(masses), family);
}

CardDistribution geometric_matching_mean(const Rational& mean) {
  if (mean <= kOne) throw InvalidParameter("geometric mean must exceed 1");
  return CardDistribution::geometric(Rational(1) - Rational(1) / mean);
}

CardDistribution geometric_matching_mean(double mean) {
  if (!(mean > 1.0)) throw InvalidParameter("geometric mean must exceed 1");
  return CardDistribution::geometric(1.0 - 1.0 / mean);
}

Deck sample_iid_deck(const CardDistribution& dist, int n, const SeedSpec& seed) {
  if (n < 1) throw InvalidParameter("deck length must be >= 1");
  CounterRng rng(seed, 0);
  Deck deck;
  deck.values.resize(static_cast<std::size_t>(n));
  for (int& v : deck.values) v = dist.sample(rng);
  deck.provenance = IidProvenance{dist.family()};
  return deck;
}

std::vector<int> standard_deck_values(RulesVariation variation) {
  std::vector<int> values;
  values.reserve(52);
  for (int rank = 1; rank <= 13; ++rank) {
    for (int suit = 0; suit < 4; ++suit) values.push_back(variation.value_of_rank(rank));
  }
  return values;
}

void shuffle_in_place(std::span<int> values, CounterRng& rng) {
  for (std::size_t i = values.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.below(i));
    std::swap(values[i - 1], values[j]);
  }
}

Deck shuffle_standard_deck(RulesVariation variation, const SeedSpec& seed) {
  CounterRng rng(seed, 0);
  Deck deck;
  deck.values = standard_deck_values(variation);
  shuffle_in_place(deck.values, rng);
  deck.provenance = ShuffledProvenance{variation};
  return deck;
}

}  // namespace kruskal
