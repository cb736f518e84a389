#include "kruskal/exact.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <optional>

#include "kruskal/chains.hpp"
#include "kruskal/errors.hpp"

namespace kruskal {

namespace {

void require_p(double p) {
  if (!(p > 0.0 && p < 1.0)) throw InvalidParameter("geometric parameter must lie in (0,1)");
}

void require_bn(int B, int N) {
  if (B < 2) throw InvalidParameter("B must be >= 2");
  if (N < B) throw InvalidParameter("N must be >= B");
}

int sign(int x) { return (x > 0) - (x < 0); }

// Dense storage for mass on (chain label, leading position 0..N).
class OffsetGrid {
 public:
  OffsetGrid(int min_label, int max_label, int N)
      : min_label_(min_label), labels_(max_label - min_label + 1), N_(N),
        mass_(static_cast<std::size_t>(labels_) * static_cast<std::size_t>(N + 1), 0.0) {}

  double& at(int label, int leading) {
    return mass_[static_cast<std::size_t>(label - min_label_) * static_cast<std::size_t>(N_ + 1) +
                 static_cast<std::size_t>(leading)];
  }
  double get(int label, int leading) const {
    return mass_[static_cast<std::size_t>(label - min_label_) * static_cast<std::size_t>(N_ + 1) +
                 static_cast<std::size_t>(leading)];
  }
  void clear() { std::fill(mass_.begin(), mass_.end(), 0.0); }
  bool empty() const {
    return std::all_of(mass_.begin(), mass_.end(), [](double m) { return m == 0.0; });
  }
  int min_label() const { return min_label_; }
  int max_label() const { return min_label_ + labels_ - 1; }
  int N() const { return N_; }

 private:
  int min_label_;
  int labels_;
  int N_;
  std::vector<double> mass_;
};

const TransitionMatrix& chain_for(int B, TravelVariant variant, std::optional<TransitionMatrix>& slot) {
  switch (variant) {
    case TravelVariant::kReduced: slot.emplace(build_reduced_leapfrog(B)); break;
    case TravelVariant::kMinus: slot.emplace(build_bounding_chain(B, BoundingVariant::kMinus)); break;
    case TravelVariant::kPlus: slot.emplace(build_bounding_chain(B, BoundingVariant::kPlus)); break;
  }
  return *slot;
}

// Jump of the moving pebble for the transition from -> to.
int jump_size(int from, int to) { return from == 0 ? to : sign(from) * (from - to); }

}  // namespace

double geometric_failure(double p, int N) {
  require_p(p);
  if (N < 1) throw InvalidParameter("N must be >= 1");
  return std::pow(p * (2.0 - p), N);
}

double geometric_first_card_failure(double p, int N) {
  require_p(p);
  if (N < 1) throw InvalidParameter("N must be >= 1");
  return std::pow(p, N) * std::pow(2.0 - p, N - 1);
}

AbsorptionResult enlarged_chain_absorption(const CardDistribution& dist, int N, const SecretStrategy& magician,
                                           const SecretStrategy& subject) {
  if (!dist.bounded()) {
    throw UnsupportedModel("enlarged chain needs a bounded distribution; use the geometric closed form");
  }
  if (magician.is_geometric() || subject.is_geometric()) {
    throw UnsupportedModel("geometric secrets are only available with the geometric closed form");
  }
  const int B = *dist.max_value();
  if (N < B) throw InvalidParameter("N must be >= the largest card value");
  if (magician.max_secret() > B || subject.max_secret() > B) {
    throw InvalidParameter("secret strategies must be supported on [1, B]");
  }

  const auto values = dist.masses();
  const std::vector<double> mag = magician.pmf();
  const std::vector<double> sub = subject.pmf();

  AbsorptionResult out;
  OffsetGrid cur(-(B - 1), B - 1, N);
  for (std::size_t s = 0; s < sub.size(); ++s) {
    for (std::size_t j = 0; j < mag.size(); ++j) {
      const double w = sub[s] * mag[j];
      if (w == 0.0) continue;
      if (s == j) {
        out.coupled += w;
        continue;
      }
      const int offset = static_cast<int>(s) - static_cast<int>(j);
      const int leading = static_cast<int>(std::max(s, j)) + 1;
      cur.at(offset, leading) += w;
    }
  }

  OffsetGrid next = cur;
  while (!cur.empty()) {
    if (out.steps >= N) throw NumericalFailure("enlarged chain failed to absorb within N steps");
    ++out.steps;
    next.clear();
    for (int d = -(B - 1); d <= B - 1; ++d) {
      if (d == 0) continue;
      for (int m = 1; m <= N; ++m) {
        const double w = cur.get(d, m);
        if (w == 0.0) continue;
        const int trailing = m - std::abs(d);
        for (int v = 1; v <= B; ++v) {
          const double pv = values[static_cast<std::size_t>(v - 1)];
          if (pv == 0.0) continue;
          const int landed = trailing + v;
          if (landed == m) {
            out.coupled += w * pv;
          } else if (landed > N) {
            out.escaped += w * pv;
          } else {
            // The leader stays at m when landed < m; otherwise the mover leads.
            const int lead = std::max(m, landed);
            const int gap = lead - std::min(m, landed);
            const bool subject_leads = (d > 0) == (landed < m);
            next.at(subject_leads ? gap : -gap, lead) += w * pv;
          }
        }
      }
    }
    std::swap(cur, next);
  }
  return out;
}

double TravelTimePmf::total() const {
  double s = 0.0;
  for (double m : masses) s += m;
  return s;
}

int TravelTimePmf::min_support() const {
  for (std::size_t j = 0; j < masses.size(); ++j) {
    if (masses[j] > 0.0) return static_cast<int>(j);
  }
  return -1;
}

double TravelTimePmf::discounted_sum() const {
  const double ratio = 1.0 - 1.0 / B;
  double s = 0.0;
  for (std::size_t j = 1; j < masses.size(); ++j) {
    if (masses[j] > 0.0) s += std::pow(ratio, static_cast<double>(j) - 1.0) * masses[j];
  }
  return s;
}

TravelTimePmf travel_time_pmf(int B, int N, TravelVariant variant) {
  require_bn(B, N);
  std::optional<TransitionMatrix> slot;
  const TransitionMatrix& chain = chain_for(B, variant, slot);

  TravelTimePmf pmf;
  pmf.B = B;
  pmf.N = N;
  pmf.variant = variant;

  OffsetGrid cur(chain.labels().front(), chain.labels().back(), N);
  int count = 0;
  if (variant == TravelVariant::kReduced) {
    // First reduced state with its top key card; this configuration already
    // holds two key cards.
    const StateDistribution init = initial_reduced_distribution(B);
    for (std::size_t k = 0; k < init.labels().size(); ++k) {
      const int d = init.labels()[k];
      const StateDistribution top = top_key_distribution(B, d);
      for (std::size_t t = 0; t < top.labels().size(); ++t) {
        const int leading = top.labels()[t] + std::abs(d);
        cur.at(d, leading) += init.weights()(static_cast<Eigen::Index>(k)) * top.weights()(static_cast<Eigen::Index>(t));
      }
    }
    count = 2;
  } else {
    cur.at(0, 0) = 1.0;
  }
  pmf.masses.assign(static_cast<std::size_t>(count) + 1, 0.0);

  const Eigen::MatrixXd& P = chain.matrix();
  const auto& labels = chain.labels();
  const int step_limit = 2 * N + 4;
  OffsetGrid next = cur;
  while (!cur.empty()) {
    if (count > step_limit) throw NumericalFailure("travel time failed to terminate");
    ++count;
    pmf.masses.push_back(0.0);
    next.clear();
    for (std::size_t r = 0; r < labels.size(); ++r) {
      const int d = labels[r];
      for (int m = 0; m <= N; ++m) {
        const double w = cur.get(d, m);
        if (w == 0.0) continue;
        const int trailing = m - std::abs(d);
        for (std::size_t c = 0; c < labels.size(); ++c) {
          const double p = P(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
          if (p == 0.0) continue;
          const int to = labels[c];
          const int landed = trailing + jump_size(d, to);
          if (landed > N) {
            pmf.masses.back() += w * p;
          } else {
            next.at(to, std::max(m, landed)) += w * p;
          }
        }
      }
    }
    std::swap(cur, next);
  }
  return pmf;
}

double failure_via_lemma41(int B, int N) {
  return travel_time_pmf(B, N, TravelVariant::kReduced).discounted_sum();
}

SandwichBounds sandwich_bounds(int B, int N) {
  return {travel_time_pmf(B, N, TravelVariant::kMinus).discounted_sum(),
          travel_time_pmf(B, N, TravelVariant::kPlus).discounted_sum()};
}

double crude_upper_bound(int B, int N) {
  require_bn(B, N);
  return std::pow(1.0 - 1.0 / B, 2.0 * N / B - 2.0);
}

double PebbleLaw::cumulative(int i0, int j0) const {
  const auto n = q.rows();
  if (i0 < 0 || j0 < 0) return 0.0;
  const Eigen::Index ri = std::min<Eigen::Index>(i0, n - 1);
  const Eigen::Index rj = std::min<Eigen::Index>(j0, n - 1);
  return q.topLeftCorner(ri + 1, rj + 1).sum();
}

PebbleLaw PebbleLaw::color_blind() const {
  PebbleLaw out = *this;
  out.q = 0.5 * (q + q.transpose());
  return out;
}

PebbleLaw pebble_distribution(int B, int moves, TravelVariant variant) {
  if (B < 2) throw InvalidParameter("B must be >= 2");
  if (moves < 2) throw InvalidParameter("pebble laws are defined from two moves on");
  std::optional<TransitionMatrix> slot;
  const TransitionMatrix& chain = chain_for(B, variant, slot);

  const int size = moves * B + 1;
  PebbleLaw law;
  law.B = B;
  law.moves = moves;
  law.variant = variant;
  law.q = Eigen::MatrixXd::Zero(size, size);

  int done = 0;
  if (variant == TravelVariant::kReduced) {
    const StateDistribution init = initial_reduced_distribution(B);
    for (std::size_t k = 0; k < init.labels().size(); ++k) {
      const int d = init.labels()[k];
      const StateDistribution top = top_key_distribution(B, d);
      for (std::size_t t = 0; t < top.labels().size(); ++t) {
        const int low = top.labels()[t];
        law.q(low + std::max(d, 0), low + std::max(-d, 0)) +=
            init.weights()(static_cast<Eigen::Index>(k)) * top.weights()(static_cast<Eigen::Index>(t));
      }
    }
    done = 2;
  } else {
    law.q(0, 0) = 1.0;
  }

  const Eigen::MatrixXd& P = chain.matrix();
  for (; done < moves; ++done) {
    Eigen::MatrixXd next = Eigen::MatrixXd::Zero(size, size);
    for (int w = 0; w < size; ++w) {
      for (int b = 0; b < size; ++b) {
        const double mass = law.q(w, b);
        if (mass == 0.0) continue;
        const int d = w - b;
        if (!chain.has_label(d)) throw NumericalFailure("pebbles drifted outside the chain's offsets");
        const int r = chain.index_of(d);
        for (int c = 0; c < chain.size(); ++c) {
          const double p = P(r, c);
          if (p == 0.0) continue;
          const int v = jump_size(d, chain.labels()[static_cast<std::size_t>(c)]);
          // At a tie the white pebble moves; otherwise the trailing one.
          if (d <= 0) {
            next(w + v, b) += mass * p;
          } else {
            next(w, b + v) += mass * p;
          }
        }
      }
    }
    law.q = std::move(next);
  }
  return law;
}

double majorization_slack(const PebbleLaw& dominant, const PebbleLaw& other) {
  const int n = static_cast<int>(std::max(dominant.q.rows(), other.q.rows()));
  double slack = std::numeric_limits<double>::infinity();
  for (int i0 = 1; i0 < n; ++i0) {
    for (int j0 = 1; j0 < n; ++j0) {
      slack = std::min(slack, dominant.cumulative(i0, j0) - other.cumulative(i0, j0));
    }
  }
  return slack;
}

}  // namespace kruskal
