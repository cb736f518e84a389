#include <doctest.h>

#include <algorithm>

#include "kruskal/counting.hpp"
#include "kruskal/deck_model.hpp"
#include "oracles.hpp"

using namespace kruskal;

namespace {

// Hand-rolled generator: deck length, card law and secrets all drawn from a
// counter stream so every failing case is reproducible from its index.
struct Instance {
  std::vector<int> deck;
  int s1 = 1;
  int s2 = 1;
};

Instance random_instance(std::uint64_t index) {
  CounterRng rng(SeedSpec{2024, 77}, index);
  Instance in;
  if (rng.below(2) == 0) {
    const int B = rng.between(1, 13);
    const int n = rng.between(1, 60);
    in.deck.resize(static_cast<std::size_t>(n));
    for (int& v : in.deck) v = rng.between(1, B);
  } else {
    in.deck = standard_deck_values(RulesVariation{static_cast<Variation>(rng.below(3))});
    shuffle_in_place(in.deck, rng);
  }
  const int hi = static_cast<int>(in.deck.size()) + 3;
  in.s1 = rng.between(1, std::min(hi, 14));
  in.s2 = rng.between(1, std::min(hi, 14));
  return in;
}

}  // namespace

TEST_CASE("key positions on a hand-built deck") {
  const std::vector<int> deck{3, 1, 2, 5, 1, 1, 4, 2, 2, 1};
  const KeyTrajectory t = key_positions(deck, 1);
  CHECK(t.positions == std::vector<int>{1, 4, 9});
  CHECK(*t.tapped() == 9);
  CHECK(key_positions(deck, 2).positions == std::vector<int>{2, 3, 5, 6, 7});
  CHECK(*tapped_position(deck, 2) == 7);
  CHECK(*coupling_time(deck, 2, 3) == 3);
  CHECK(!coupling_time(deck, 1, 3));
  const TrickOutcome o = trick_outcome(deck, 2, 1);
  CHECK(!o.success);
  CHECK(!o.coupled);
  CHECK(*o.subject_tapped == 7);
  CHECK(*o.magician_tapped == 9);
}

TEST_CASE("out-of-range secrets fail") {
  const std::vector<int> deck{1, 1, 1};
  const KeyTrajectory t = key_positions(deck, 5);
  CHECK(t.secret_out_of_range);
  CHECK(t.positions.empty());
  CHECK(!tapped_position(deck, 4));
  const TrickOutcome o = trick_outcome(deck, 5, 1);
  CHECK(o.secret_out_of_range);
  CHECK(!o.success);
}

TEST_CASE("property: same tapped card iff the trajectories couple") {
  for (std::uint64_t i = 0; i < 5000; ++i) {
    const Instance in = random_instance(i);
    CAPTURE(i);
    const int n = static_cast<int>(in.deck.size());
    const auto t1 = tapped_position(in.deck, in.s1);
    const auto t2 = tapped_position(in.deck, in.s2);
    REQUIRE(t1.value_or(0) == oracle::tapped(in.deck, in.s1));
    REQUIRE(t2.value_or(0) == oracle::tapped(in.deck, in.s2));

    const auto c = coupling_time(in.deck, in.s1, in.s2);
    const bool in_range = in.s1 <= n && in.s2 <= n;
    CHECK((in_range && t1 == t2) == c.has_value());
    const TrickOutcome o = trick_outcome(in.deck, in.s1, in.s2);
    CHECK(o.success == c.has_value());
    CHECK(o.coupled == o.success);
  }
}

TEST_CASE("property: the coupling position is the first common key card") {
  for (std::uint64_t i = 0; i < 2000; ++i) {
    const Instance in = random_instance(10'000 + i);
    const auto c = coupling_time(in.deck, in.s1, in.s2);
    if (!c) continue;
    const auto a = key_positions(in.deck, in.s1).positions;
    const auto b = key_positions(in.deck, in.s2).positions;
    int first = 0;
    for (int p : a) {
      if (std::find(b.begin(), b.end(), p) != b.end()) {
        first = p;
        break;
      }
    }
    CAPTURE(i);
    CHECK(*c == first);
  }
}

TEST_CASE("property: successive key cards step by the card value") {
  for (std::uint64_t i = 0; i < 1000; ++i) {
    const Instance in = random_instance(50'000 + i);
    const KeyTrajectory t = key_positions(in.deck, in.s1);
    if (t.secret_out_of_range) continue;
    REQUIRE(t.positions.front() == in.s1);
    for (std::size_t k = 1; k < t.positions.size(); ++k) {
      CHECK(t.positions[k] - t.positions[k - 1] == in.deck[static_cast<std::size_t>(t.positions[k - 1] - 1)]);
    }
    const int last = t.positions.back();
    CHECK(last + in.deck[static_cast<std::size_t>(last - 1)] > t.deck_length);
  }
}
