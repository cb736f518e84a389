#include "kruskal/chains.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <utility>

#include <Eigen/LU>

#include "kruskal/errors.hpp"

namespace kruskal {

namespace {

constexpr double kStochasticTol = 1e-12;

void require_b(int B) {
  if (B < 2) throw InvalidParameter("B must be >= 2");
}

std::vector<int> label_range(int lo, int hi) {
  std::vector<int> labels;
  for (int i = lo; i <= hi; ++i) labels.push_back(i);
  return labels;
}

int sign(int x) { return (x > 0) - (x < 0); }

}  // namespace

TransitionMatrix::TransitionMatrix(std::string name, std::vector<int> labels, Eigen::MatrixXd rows)
    : name_(std::move(name)), labels_(std::move(labels)), rows_(std::move(rows)) {
  const auto n = static_cast<Eigen::Index>(labels_.size());
  if (n == 0) throw ShapeError("transition matrix needs at least one state");
  if (rows_.rows() != n || rows_.cols() != n) throw ShapeError("transition matrix must be square and match its labels");
  if (!std::is_sorted(labels_.begin(), labels_.end()) ||
      std::adjacent_find(labels_.begin(), labels_.end()) != labels_.end()) {
    throw ShapeError("state labels must be strictly ascending");
  }
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) {
      const double v = rows_(r, c);
      if (!(v >= 0.0 && v <= 1.0)) throw InvalidParameter("transition probabilities must lie in [0,1]");
    }
    if (std::abs(rows_.row(r).sum() - 1.0) > kStochasticTol) {
      throw InvalidParameter("row for state " + std::to_string(labels_[static_cast<std::size_t>(r)]) +
                             " does not sum to 1");
    }
  }
}

int TransitionMatrix::index_of(int label) const {
  const auto it = std::lower_bound(labels_.begin(), labels_.end(), label);
  if (it == labels_.end() || *it != label) throw ShapeError("no state labelled " + std::to_string(label));
  return static_cast<int>(it - labels_.begin());
}

bool TransitionMatrix::has_label(int label) const {
  return std::binary_search(labels_.begin(), labels_.end(), label);
}

double TransitionMatrix::operator()(int from_label, int to_label) const {
  return rows_(index_of(from_label), index_of(to_label));
}

std::vector<int> TransitionMatrix::absorbing_labels() const {
  std::vector<int> out;
  for (int i = 0; i < size(); ++i) {
    if (rows_(i, i) == 1.0) out.push_back(labels_[static_cast<std::size_t>(i)]);
  }
  return out;
}

StateDistribution::StateDistribution(std::vector<int> labels, Eigen::VectorXd weights)
    : labels_(std::move(labels)), weights_(std::move(weights)) {
  if (static_cast<Eigen::Index>(labels_.size()) != weights_.size()) {
    throw ShapeError("distribution weights do not match labels");
  }
  if ((weights_.array() < 0.0).any()) throw InvalidParameter("distribution weights must be nonnegative");
  if (std::abs(weights_.sum() - 1.0) > kStochasticTol) throw InvalidParameter("distribution must sum to 1");
}

StateDistribution StateDistribution::point_mass(const std::vector<int>& labels, int at) {
  Eigen::VectorXd w = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(labels.size()));
  const auto it = std::find(labels.begin(), labels.end(), at);
  if (it == labels.end()) throw ShapeError("point mass outside the state set");
  w(it - labels.begin()) = 1.0;
  return StateDistribution(labels, std::move(w));
}

double StateDistribution::at(int label) const {
  const auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return 0.0;
  return weights_(it - labels_.begin());
}

TransitionMatrix build_m_pi(const CardDistribution& dist) {
  if (!dist.bounded()) throw UnsupportedModel("M_pi is built only for bounded card distributions");
  const int B = *dist.max_value();
  Eigen::MatrixXd P = Eigen::MatrixXd::Zero(B, B);
  for (int j = 0; j < B; ++j) P(0, j) = dist.mass(j + 1);
  for (int j = 1; j < B; ++j) P(j, j - 1) = 1.0;
  return TransitionMatrix("m_pi", label_range(0, B - 1), std::move(P));
}

TransitionMatrix build_leapfrog(int B) {
  require_b(B);
  const int n = 2 * B - 1;
  Eigen::MatrixXd P = Eigen::MatrixXd::Zero(n, n);
  const double bb = static_cast<double>(B) * B;
  for (int i = -(B - 1); i <= B - 1; ++i) {
    for (int j = -(B - 1); j <= B - 1; ++j) {
      double p = 0.0;
      if (i == 0) {
        p = (B - std::abs(j)) / bb;
      } else {
        const int v = sign(i) * (i - j);
        if (v >= 1 && v <= B) p = 1.0 / B;
      }
      P(i + B - 1, j + B - 1) = p;
    }
  }
  return TransitionMatrix("leapfrog", label_range(-(B - 1), B - 1), std::move(P));
}

TransitionMatrix build_reduced_leapfrog(int B) {
  const TransitionMatrix full = build_leapfrog(B);
  const int zero = full.index_of(0);
  std::vector<int> labels;
  std::vector<int> keep;
  for (int k = 0; k < full.size(); ++k) {
    if (k == zero) continue;
    labels.push_back(full.labels()[static_cast<std::size_t>(k)]);
    keep.push_back(k);
  }
  const auto n = static_cast<Eigen::Index>(keep.size());
  Eigen::MatrixXd P(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const double stay_away = 1.0 - full.matrix()(keep[r], zero);
    for (Eigen::Index c = 0; c < n; ++c) P(r, c) = full.matrix()(keep[r], keep[c]) / stay_away;
  }
  return TransitionMatrix("reduced_leapfrog", std::move(labels), std::move(P));
}

StateDistribution initial_reduced_distribution(int B) {
  require_b(B);
  std::vector<int> labels;
  std::vector<double> w;
  const double scale = 1.0 / (1.0 - 1.0 / B);
  const double bb = static_cast<double>(B) * B;
  for (int j = -(B - 1); j <= B - 1; ++j) {
    if (j == 0) continue;
    labels.push_back(j);
    w.push_back(scale * (B - std::abs(j)) / bb);
  }
  return StateDistribution(std::move(labels), Eigen::Map<Eigen::VectorXd>(w.data(), static_cast<Eigen::Index>(w.size())));
}

StateDistribution top_key_distribution(int B, int j) {
  require_b(B);
  if (j == 0 || std::abs(j) >= B) throw InvalidParameter("top key card needs 1 <= |j| <= B-1");
  const int span = B - std::abs(j);
  return StateDistribution(label_range(1, span), Eigen::VectorXd::Constant(span, 1.0 / span));
}

TransitionMatrix build_bounding_chain(int B, BoundingVariant variant) {
  require_b(B);
  const bool minus = variant == BoundingVariant::kMinus;
  const int reach = minus ? B - 1 : B;
  const int v_lo = minus ? 1 : 2;
  const int v_hi = minus ? B - 1 : B;
  const double w = 1.0 / (v_hi - v_lo + 1);
  const int n = 2 * reach + 1;
  Eigen::MatrixXd P = Eigen::MatrixXd::Zero(n, n);
  for (int i = -reach; i <= reach; ++i) {
    for (int v = v_lo; v <= v_hi; ++v) {
      const int j = i == 0 ? v : i - sign(i) * v;
      P(i + reach, j + reach) += w;
    }
  }
  return TransitionMatrix(minus ? "bounding_minus" : "bounding_plus", label_range(-reach, reach), std::move(P));
}

StateDistribution stationary_distribution(const TransitionMatrix& m) {
  const auto n = static_cast<Eigen::Index>(m.size());
  Eigen::MatrixXd A = m.matrix().transpose() - Eigen::MatrixXd::Identity(n, n);
  A.row(n - 1).setOnes();
  Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
  b(n - 1) = 1.0;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
  if (!lu.isInvertible()) {
    throw NoUniqueStationary("chain '" + m.name() + "' has no unique stationary distribution");
  }
  Eigen::VectorXd pi = lu.solve(b);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (pi(i) < 0.0) {
      if (pi(i) < -1e-12) throw NumericalFailure("stationary solve produced a negative weight");
      pi(i) = 0.0;
    }
  }
  pi /= pi.sum();
  const double residual = (pi.transpose() * m.matrix() - pi.transpose()).cwiseAbs().sum();
  if (residual > 1e-12) throw NumericalFailure("stationary residual too large for '" + m.name() + "'");
  return StateDistribution(m.labels(), std::move(pi));
}

Eigen::VectorXd m_pi_stationary_weights(const CardDistribution& dist, double normaliser) {
  if (!dist.bounded()) throw UnsupportedModel("closed form is tabulated only for bounded distributions");
  const int B = *dist.max_value();
  Eigen::VectorXd w(B);
  double tail = 1.0;
  for (int j = 0; j < B; ++j) {
    if (j > 0) tail -= dist.mass(j);
    w(j) = tail / normaliser;
  }
  return w;
}

double variation_distance(const StateDistribution& d1, const StateDistribution& d2) {
  if (d1.labels() != d2.labels()) throw ShapeError("variation distance needs aligned supports");
  return (d1.weights() - d2.weights()).cwiseAbs().sum();
}

StateDistribution propagate(const StateDistribution& d, const TransitionMatrix& m, int n) {
  if (d.labels() != m.labels()) throw ShapeError("distribution and chain have different states");
  if (n < 0) throw InvalidParameter("step count must be >= 0");
  Eigen::RowVectorXd mu = d.weights().transpose();
  for (int k = 0; k < n; ++k) mu = mu * m.matrix();
  return StateDistribution(d.labels(), mu.transpose());
}

CouplingCheck coupling_inequality_check(const CardDistribution& dist, const StateDistribution& p,
                                        const StateDistribution& p_prime, int n) {
  if (n < 1) throw InvalidParameter("n must be >= 1");
  const TransitionMatrix chain = build_m_pi(dist);
  if (p.labels() != chain.labels() || p_prime.labels() != chain.labels()) {
    throw ShapeError("initial laws must live on the M_pi states 0..B-1");
  }
  const Eigen::MatrixXd& P = chain.matrix();

  CouplingCheck out;
  out.lhs = 0.5 * variation_distance(propagate(p, chain, n), propagate(p_prime, chain, n));

  // Two independent copies; mass reaching (0,0) has coupled and is dropped.
  Eigen::MatrixXd pair = p.weights() * p_prime.weights().transpose();
  pair(0, 0) = 0.0;
  for (int step = 0; step < n; ++step) {
    pair = P.transpose() * pair * P;
    pair(0, 0) = 0.0;
  }
  out.rhs = std::clamp(pair.sum(), 0.0, 1.0);
  out.holds = out.lhs <= out.rhs + 1e-12;
  return out;
}

}  // namespace kruskal
