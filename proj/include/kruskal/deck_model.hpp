#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <boost/rational.hpp>

#include "kruskal/rng.hpp"

namespace kruskal {

using Rational = boost::rational<std::int64_t>;

inline double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

enum class Family { kGeometric, kUniform, kSemiuniform, kCustom };

std::string to_string(Family family);
Family family_from_string(const std::string& name);

// Law of a single card value on {1, 2, ...}. Bounded families store masses
// for 1..max_value; the geometric family pi_k = (1-p) p^{k-1} is stored by
// its parameter and never truncated. Immutable after construction.
class CardDistribution {
 public:
  static CardDistribution uniform(int max_value);
  static CardDistribution point_mass(int value);
  static CardDistribution geometric(double p);
  static CardDistribution geometric(const Rational& p);
  // masses[v-1] is the probability of value v.
  static CardDistribution from_masses(std::vector<double> masses, Family family = Family::kCustom);
  static CardDistribution from_rational_masses(std::vector<Rational> masses,
                                               Family family = Family::kCustom);

  Family family() const noexcept { return family_; }
  bool bounded() const noexcept { return family_ != Family::kGeometric; }
  // Largest value with positive support; nullopt for the geometric family.
  std::optional<int> max_value() const;

  // Geometric parameter. Throws UnsupportedModel for bounded families.
  double p() const;
  const std::optional<Rational>& exact_p() const noexcept { return exact_p_; }

  double mass(int value) const;
  // Bounded families only; index v-1.
  std::span<const double> masses() const;
  // Empty unless the distribution was built from exact rationals.
  const std::vector<Rational>& exact_masses() const noexcept { return exact_masses_; }

  double mean() const noexcept { return mean_; }
  std::optional<Rational> exact_mean() const;

  // Inverse-CDF draw.
  int sample(CounterRng& rng) const;

 private:
  CardDistribution() = default;
  void finish_bounded();

  Family family_ = Family::kCustom;
  double p_ = 0.0;
  std::optional<Rational> exact_p_;
  std::vector<double> masses_;
  std::vector<Rational> exact_masses_;
  std::vector<double> cdf_;
  double mean_ = 0.0;
};

enum class Variation { kA, kB, kC };

// Face-card value assignment: J,Q,K -> 11,12,13 (A), 10 each (B), 5 each (C).
// Ace is 1 and 2..10 keep their face value in every variation.
struct RulesVariation {
  Variation tag = Variation::kC;

  // rank in 1..13 (Ace = 1, ..., King = 13).
  int value_of_rank(int rank) const;
  // Largest card value in the deck: 13 for A, 10 otherwise.
  int max_value() const noexcept { return tag == Variation::kA ? 13 : 10; }
  char letter() const noexcept;

  friend bool operator==(const RulesVariation&, const RulesVariation&) = default;
};

RulesVariation variation_from_string(const std::string& name);

struct IidProvenance {
  Family family = Family::kCustom;
};
struct ShuffledProvenance {
  RulesVariation variation;
};
using DeckProvenance = std::variant<IidProvenance, ShuffledProvenance>;

// Card values, top of the deck first. Position k (1-based) is values[k-1].
struct Deck {
  std::vector<int> values;
  DeckProvenance provenance = IidProvenance{};

  int size() const noexcept { return static_cast<int>(values.size()); }
  // 1-based.
  int at(int position) const { return values.at(static_cast<std::size_t>(position - 1)); }
};

// Single-card law of a uniformly drawn card from the 52-card deck.
CardDistribution distribution_for_variation(RulesVariation variation);

// Geometric law with mean `mean`, i.e. p = 1 - 1/mean.
CardDistribution geometric_matching_mean(const Rational& mean);
CardDistribution geometric_matching_mean(double mean);

Deck sample_iid_deck(const CardDistribution& dist, int n, const SeedSpec& seed);

// The 52 values (4 per rank) in rank order.
std::vector<int> standard_deck_values(RulesVariation variation);

// Fisher-Yates in place.
void shuffle_in_place(std::span<int> values, CounterRng& rng);

Deck shuffle_standard_deck(RulesVariation variation, const SeedSpec& seed);

}  // namespace kruskal
