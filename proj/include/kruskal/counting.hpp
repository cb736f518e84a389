#pragma once

#include <optional>
#include <span>
#include <vector>

#include "kruskal/deck_model.hpp"

namespace kruskal {

// Key-card positions visited by Kruskal's counting procedure from `secret`.
// positions[0] == secret and positions[k+1] == positions[k] + deck[positions[k]];
// the last position is the tapped card. Empty when secret > deck_length.
struct KeyTrajectory {
  int deck_length = 0;
  int secret = 1;
  std::vector<int> positions;
  bool secret_out_of_range = false;

  std::optional<int> tapped() const {
    if (positions.empty()) return std::nullopt;
    return positions.back();
  }
};

struct TrickOutcome {
  bool coupled = false;
  std::optional<int> coupling_position;
  std::optional<int> subject_tapped;
  std::optional<int> magician_tapped;
  bool success = false;
  // Set when a secret exceeds the deck length; scored as failure.
  bool secret_out_of_range = false;
};

KeyTrajectory key_positions(std::span<const int> deck, int secret);
inline KeyTrajectory key_positions(const Deck& deck, int secret) { return key_positions(deck.values, secret); }

// Last key position, without materialising the trajectory.
std::optional<int> tapped_position(std::span<const int> deck, int secret);

// First position shared by both trajectories.
std::optional<int> coupling_time(std::span<const int> deck, int secret1, int secret2);
inline std::optional<int> coupling_time(const Deck& deck, int secret1, int secret2) {
  return coupling_time(deck.values, secret1, secret2);
}

TrickOutcome trick_outcome(std::span<const int> deck, int subject_secret, int magician_secret);
inline TrickOutcome trick_outcome(const Deck& deck, int subject_secret, int magician_secret) {
  return trick_outcome(deck.values, subject_secret, magician_secret);
}

}  // namespace kruskal
