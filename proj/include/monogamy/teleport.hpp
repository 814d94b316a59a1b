#pragma once

#include "monogamy/states.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

namespace monogamy {

struct BellOutcome {
  int i = 0;  // measured bit of the input qubit
  int j = 0;  // measured bit of the sender's half of the Bell pair

  friend bool operator==(const BellOutcome&, const BellOutcome&) = default;
};

enum class Correction { I, X, Z, XZ };

std::string_view to_string(Correction c);

/// Pauli correction Z^i X^j applied by the receiver for outcome (i, j).
Correction correction_for(BellOutcome outcome);

struct TeleportTranscript {
  PureState input_state;
  BellOutcome outcome;
  Correction correction = Correction::I;
  PureState output_state;
  std::array<double, 4> outcome_probabilities{};  // indexed by 2i + j
  double fidelity = 0.0;                          // |<input|output>|²
};

/// Standard Bell-measurement teleportation of a single qubit over the pair
/// (|00> + |11>)/√2. Without `forced_outcome` the measurement is sampled from
/// the Born rule with a generator keyed by `seed`.
TeleportTranscript teleport(const PureState& input, std::optional<BellOutcome> forced_outcome = std::nullopt,
                            std::uint64_t seed = 0);

}  // namespace monogamy
