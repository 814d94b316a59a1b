#include "monogamy/teleport.hpp"

#include "monogamy/rng.hpp"

#include <cmath>

namespace monogamy {

std::string_view to_string(Correction c) {
  switch (c) {
    case Correction::I: return "I";
    case Correction::X: return "X";
    case Correction::Z: return "Z";
    case Correction::XZ: return "XZ";
  }
  return "?";
}

Correction correction_for(BellOutcome outcome) {
  if (outcome.i == 0) return outcome.j == 0 ? Correction::I : Correction::X;
  return outcome.j == 0 ? Correction::Z : Correction::XZ;
}

namespace {

// Qubit order (q0, q1, q2) = (input, sender's half, receiver's half); q0 is the
// most significant bit of the basis index.
ComplexVector apply_cnot_01(const ComplexVector& s) {
  ComplexVector out = s;
  for (int q2 = 0; q2 < 2; ++q2) {
    std::swap(out(4 + 0 + q2), out(4 + 2 + q2));  // q0 = 1 flips q1
  }
  return out;
}

ComplexVector apply_h_0(const ComplexVector& s) {
  const double r = 1.0 / std::sqrt(2.0);
  ComplexVector out(8);
  for (int rest = 0; rest < 4; ++rest) {
    out(rest) = r * (s(rest) + s(4 + rest));
    out(4 + rest) = r * (s(rest) - s(4 + rest));
  }
  return out;
}

ComplexMatrix correction_matrix(Correction c) {
  switch (c) {
    case Correction::I: return ComplexMatrix::Identity(2, 2);
    case Correction::X: return pauli_x();
    case Correction::Z: return pauli_z();
    case Correction::XZ: return pauli_z() * pauli_x();  // X first, then Z
  }
  return ComplexMatrix::Identity(2, 2);
}

}  // namespace

TeleportTranscript teleport(const PureState& input, std::optional<BellOutcome> forced_outcome, std::uint64_t seed) {
  if (input.dims() != Dims{2}) throw StateError("teleport: input must be a single qubit");
  if (forced_outcome) {
    const auto [i, j] = *forced_outcome;
    if (i < 0 || i > 1 || j < 0 || j > 1) throw StateError("teleport: forced outcome must lie in {0,1}^2");
  }

  const PureState bell = named_state(NamedState::Bell);
  ComplexVector s = tensor(input.amplitudes(), bell.amplitudes());
  s = apply_h_0(apply_cnot_01(s));

  std::array<double, 4> probs{};
  for (int k = 0; k < 4; ++k) probs[static_cast<std::size_t>(k)] = s.segment(2 * k, 2).squaredNorm();

  BellOutcome outcome;
  if (forced_outcome) {
    outcome = *forced_outcome;
  } else {
    CounterRng rng(seed);
    const double u = rng.uniform();
    double acc = 0.0;
    int k = 3;
    for (int m = 0; m < 4; ++m) {
      acc += probs[static_cast<std::size_t>(m)];
      if (u < acc) {
        k = m;
        break;
      }
    }
    outcome = {k >> 1, k & 1};
  }

  const int branch = 2 * outcome.i + outcome.j;
  const Correction corr = correction_for(outcome);
  const ComplexVector received = correction_matrix(corr) * s.segment(2 * branch, 2);
  PureState output = PureState::normalized(received, {2});
  const double fidelity = std::norm(input.amplitudes().dot(output.amplitudes()));
  return TeleportTranscript{input, outcome, corr, std::move(output), probs, fidelity};
}

}  // namespace monogamy
