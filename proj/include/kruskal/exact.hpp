#pragma once

#include <vector>

#include <Eigen/Dense>

#include "kruskal/deck_model.hpp"
#include "kruskal/strategy.hpp"

namespace kruskal {

// Geometric deck and geometric secrets for both players: p^N (2-p)^N.
double geometric_failure(double p, int N);

// Geometric deck, geometric subject, magician always on the first card:
// p^N (2-p)^{N-1}.
double geometric_first_card_failure(double p, int N);

// One state of the enlarged absorbing chain used for bounded i.i.d. decks:
// the two current key cards sit at `leading` and `leading - |offset|`,
// offset = subject position - magician position.
struct EnlargedChainState {
  enum class Kind { kTransient, kCoupled, kEscaped };
  Kind kind = Kind::kTransient;
  int offset = 0;
  int leading = 0;
};

struct AbsorptionResult {
  double coupled = 0.0;
  double escaped = 0.0;  // Prob[t > N]
  int steps = 0;         // trailing-pebble moves until every path absorbed
};

// Propagates the enlarged chain until all mass is COUPLED or ESCAPED.
// Requires a bounded distribution with max value B, N >= B and both
// strategies supported on [1, B].
AbsorptionResult enlarged_chain_absorption(const CardDistribution& dist, int N, const SecretStrategy& magician,
                                           const SecretStrategy& subject);

inline double iid_exact_failure(const CardDistribution& dist, int N, const SecretStrategy& magician,
                                const SecretStrategy& subject) {
  return enlarged_chain_absorption(dist, N, magician, subject).escaped;
}

enum class TravelVariant { kReduced, kMinus, kPlus };

// Law of the number of key cards (reduced) or pebble moves (minus/plus) up to
// and including the first one landing beyond position N.
struct TravelTimePmf {
  int B = 0;
  int N = 0;
  TravelVariant variant = TravelVariant::kReduced;
  std::vector<double> masses;  // masses[j] = Prob[t = j]

  double prob(int j) const {
    return j >= 0 && j < static_cast<int>(masses.size()) ? masses[static_cast<std::size_t>(j)] : 0.0;
  }
  double total() const;
  // Smallest j with positive mass.
  int min_support() const;
  // sum_j (1 - 1/B)^{j-1} Prob[t = j], over the whole support.
  double discounted_sum() const;
};

TravelTimePmf travel_time_pmf(int B, int N, TravelVariant variant);

// Failure probability for uniform decks and uniform secrets on [1,B], from
// the reduced-chain travel time.
double failure_via_lemma41(int B, int N);

struct SandwichBounds {
  double p_minus = 0.0;
  double p_plus = 0.0;
};

SandwichBounds sandwich_bounds(int B, int N);

// (1 - 1/B)^{2N/B - 2}, real exponent.
double crude_upper_bound(int B, int N);

// Joint law of (white, black) pebble positions after `moves` pebble moves.
struct PebbleLaw {
  int B = 0;
  int moves = 0;
  TravelVariant variant = TravelVariant::kReduced;
  Eigen::MatrixXd q;  // q(i, j) = Prob[white at i, black at j], positions from 0

  double total() const { return q.sum(); }
  // sum over i <= i0, j <= j0.
  double cumulative(int i0, int j0) const;
  // (q + q^T) / 2: the law of the positions with colours forgotten.
  PebbleLaw color_blind() const;
};

PebbleLaw pebble_distribution(int B, int moves, TravelVariant variant);

// min over (i0, j0) >= 1 of dominant.cumulative(i0,j0) - other.cumulative(i0,j0).
// Nonnegative iff `dominant` keeps at least as much mass in every lower-left
// quadrant.
double majorization_slack(const PebbleLaw& dominant, const PebbleLaw& other);

}  // namespace kruskal
