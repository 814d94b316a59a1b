#pragma once

#include "monogamy/states.hpp"

#include <string_view>

namespace monogamy {

class MeasureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class MeasureId { EntropyOfEntanglement, Concurrence, EntanglementOfFormation, Tangle };

std::string_view to_string(MeasureId id);

struct MeasureValue {
  double value = 0.0;  // bits for entropy-based measures, dimensionless otherwise
  MeasureId id = MeasureId::EntropyOfEntanglement;
};

/// -Σ p log2 p, with 0 log 0 = 0. Entries in [-kNegativeEigenTol, 0) count as 0.
double shannon_bits(const RealVector& probabilities);

/// h(p) = -p log2 p - (1-p) log2 (1-p).
double binary_entropy(double p);

/// Von Neumann entropy (bits) of the reduced state on the left side of `cut`.
MeasureValue entropy_of_entanglement(const PureState& state, const Cut& cut);

/// Wootters concurrence from the eigenvalues of ρ ρ̃.
MeasureValue concurrence(const DensityMatrix& rho);

/// Same quantity through the Hermitian route sqrt(sqrt(ρ) ρ̃ sqrt(ρ)).
MeasureValue concurrence_psd_sandwich(const DensityMatrix& rho);

/// Closed-form entanglement of formation as a function of concurrence.
double eof_from_concurrence(double c);

MeasureValue eof_closed_form(const DensityMatrix& rho);

/// 4 det ρ_q for the single-qubit side `cut.left` of a pure state.
MeasureValue tangle_pure(const PureState& state, const Cut& cut);

}  // namespace monogamy
