#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "kruskal/deck_model.hpp"
#include "kruskal/rng.hpp"

namespace kruskal {

// How a player picks the position of the first key card.
struct FixedSecret {
  int position = 1;
  friend bool operator==(const FixedSecret&, const FixedSecret&) = default;
};
struct UniformSecret {
  int lo = 1;
  int hi = 1;
  friend bool operator==(const UniformSecret&, const UniformSecret&) = default;
};
struct GeometricSecret {
  double p = 0.5;
  friend bool operator==(const GeometricSecret&, const GeometricSecret&) = default;
};

class SecretStrategy {
 public:
  using Rule = std::variant<FixedSecret, UniformSecret, GeometricSecret>;

  static SecretStrategy fixed(int position);
  static SecretStrategy uniform(int lo, int hi);
  static SecretStrategy geometric(double p);
  // "fixed:J", "uniform:LO:HI", "geometric:P" (P may be "a/b"), or "first".
  static SecretStrategy parse(const std::string& text);

  const Rule& rule() const noexcept { return rule_; }
  bool is_geometric() const noexcept { return std::holds_alternative<GeometricSecret>(rule_); }

  // Largest secret with positive probability; throws for the geometric rule.
  int max_secret() const;
  // pmf()[s-1] = Prob[secret = s] for s = 1..max_secret().
  std::vector<double> pmf() const;
  int sample(CounterRng& rng) const;

  std::string describe() const;

  friend bool operator==(const SecretStrategy&, const SecretStrategy&) = default;

 private:
  explicit SecretStrategy(Rule rule) : rule_(rule) {}
  Rule rule_;
};

// "a/b" or a decimal literal.
double parse_number(const std::string& text);

// Exact value of "a/b" or an integer literal; nullopt for decimals.
std::optional<Rational> parse_rational(const std::string& text);

}  // namespace kruskal
