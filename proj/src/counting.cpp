#include "kruskal/counting.hpp"

#include "kruskal/errors.hpp"

namespace kruskal {

namespace {

void check_secret(int secret) {
  if (secret < 1) throw InvalidParameter("secret number must be >= 1");
}

int value_at(std::span<const int> deck, int position) {
  const int v = deck[static_cast<std::size_t>(position - 1)];
  if (v < 1) throw InvalidParameter("card values must be >= 1");
  return v;
}

}  // namespace

KeyTrajectory key_positions(std::span<const int> deck, int secret) {
  check_secret(secret);
  KeyTrajectory t;
  t.deck_length = static_cast<int>(deck.size());
  t.secret = secret;
  if (secret > t.deck_length) {
    t.secret_out_of_range = true;
    return t;
  }
  for (int pos = secret; pos <= t.deck_length; pos += value_at(deck, pos)) t.positions.push_back(pos);
  return t;
}

std::optional<int> tapped_position(std::span<const int> deck, int secret) {
  check_secret(secret);
  const int n = static_cast<int>(deck.size());
  if (secret > n) return std::nullopt;
  int pos = secret;
  for (int next = pos + value_at(deck, pos); next <= n; next = pos + value_at(deck, pos)) pos = next;
  return pos;
}

std::optional<int> coupling_time(std::span<const int> deck, int secret1, int secret2) {
  check_secret(secret1);
  check_secret(secret2);
  const int n = static_cast<int>(deck.size());
  int a = secret1;
  int b = secret2;
  // Advance whichever pebble is behind until they meet or one leaves the deck.
  while (a <= n && b <= n) {
    if (a == b) return a;
    if (a < b) {
      a += value_at(deck, a);
    } else {
      b += value_at(deck, b);
    }
  }
  return std::nullopt;
}

TrickOutcome trick_outcome(std::span<const int> deck, int subject_secret, int magician_secret) {
  TrickOutcome out;
  out.subject_tapped = tapped_position(deck, subject_secret);
  out.magician_tapped = tapped_position(deck, magician_secret);
  out.secret_out_of_range = !out.subject_tapped || !out.magician_tapped;
  out.coupling_position = coupling_time(deck, subject_secret, magician_secret);
  out.coupled = out.coupling_position.has_value();
  out.success = !out.secret_out_of_range && *out.subject_tapped == *out.magician_tapped;
  return out;
}

}  // namespace kruskal
