#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "kruskal/deck_model.hpp"

namespace kruskal {

// Row-stochastic matrix with integer state labels in ascending order.
// matrix()(r, c) is the probability of moving from labels()[r] to labels()[c].
class TransitionMatrix {
 public:
  TransitionMatrix(std::string name, std::vector<int> labels, Eigen::MatrixXd rows);

  const std::string& name() const noexcept { return name_; }
  const std::vector<int>& labels() const noexcept { return labels_; }
  const Eigen::MatrixXd& matrix() const noexcept { return rows_; }
  int size() const noexcept { return static_cast<int>(labels_.size()); }

  // Throws ShapeError for an unknown label.
  int index_of(int label) const;
  bool has_label(int label) const;
  double operator()(int from_label, int to_label) const;

  // Labels whose row is a unit self-loop.
  std::vector<int> absorbing_labels() const;

 private:
  std::string name_;
  std::vector<int> labels_;
  Eigen::MatrixXd rows_;
};

// Probability vector over a labelled state set (chain states or deck positions).
class StateDistribution {
 public:
  StateDistribution(std::vector<int> labels, Eigen::VectorXd weights);
  static StateDistribution point_mass(const std::vector<int>& labels, int at);

  const std::vector<int>& labels() const noexcept { return labels_; }
  const Eigen::VectorXd& weights() const noexcept { return weights_; }
  // 0 for labels outside the support list.
  double at(int label) const;

 private:
  std::vector<int> labels_;
  Eigen::VectorXd weights_;
};

// Chain M_pi on {0..B-1}: j >= 1 steps to j-1; 0 jumps to j with mass pi_{j+1}.
TransitionMatrix build_m_pi(const CardDistribution& dist);

// Leapfrog chain L_B on offsets -(B-1)..B-1 (white pebble minus black pebble).
TransitionMatrix build_leapfrog(int B);

// L_B with state 0 deleted and rows renormalised by 1/(1 - p_{i0}).
TransitionMatrix build_reduced_leapfrog(int B);

// Law of the reduced chain's first state: (1-1/B)^{-1} (B-|j|)/B^2.
StateDistribution initial_reduced_distribution(int B);

// Position of the top key card given reduced-chain state j: uniform on 1..B-|j|.
StateDistribution top_key_distribution(int B, int j);

enum class BoundingVariant { kMinus, kPlus };

// Comparison chains: the trailing pebble jumps v uniform on [1,B-1] (minus,
// states |i| <= B-1) or [2,B] (plus, states |i| <= B). In state 0 only the
// white pebble jumps.
TransitionMatrix build_bounding_chain(int B, BoundingVariant variant);

// Solves pi P = pi with sum(pi) = 1 by a direct linear solve.
// Throws NoUniqueStationary when the solution is not unique.
StateDistribution stationary_distribution(const TransitionMatrix& m);

// (1 - pi_1 - ... - pi_j) / normaliser for j = 0..B-1, not renormalised.
// Sums to 1 exactly when normaliser == E[pi].
Eigen::VectorXd m_pi_stationary_weights(const CardDistribution& dist, double normaliser);

// sum_s |d1(s) - d2(s)| (no factor 1/2).
double variation_distance(const StateDistribution& d1, const StateDistribution& d2);

// d P^n.
StateDistribution propagate(const StateDistribution& d, const TransitionMatrix& m, int n);

struct CouplingCheck {
  double lhs = 0.0;  // (1/2) ||mu_n - mu'_n||
  double rhs = 0.0;  // Prob[t > n] for the pair chain absorbed at (0,0)
  bool holds = false;
};

// Basic coupling inequality for M_pi, both sides computed exactly.
CouplingCheck coupling_inequality_check(const CardDistribution& dist, const StateDistribution& p,
                                        const StateDistribution& p_prime, int n);

}  // namespace kruskal
