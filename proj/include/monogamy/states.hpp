#pragma once

#include "monogamy/linalg.hpp"

#include <cstdint>
#include <string_view>
#include <vector>

namespace monogamy {

class StateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kNormTol = 1e-10;

/// Bipartition of a multipartite system: `left` lists the subsystems on one
/// side (strictly increasing); everything else is on the other side.
struct Cut {
  std::vector<std::size_t> left;

  static Cut first_vs_rest() { return Cut{{0}}; }
  std::vector<std::size_t> right(std::size_t num_subsystems) const;
  void validate(std::size_t num_subsystems) const;
};

/// Unit-norm amplitude vector over a tensor product of subsystems.
/// Basis index of |a b c> is ((a * d_B) + b) * d_C + c.
class PureState {
 public:
  PureState(ComplexVector amplitudes, Dims dims);

  /// Normalizes `amplitudes` before validation; throws on a zero vector.
  static PureState normalized(ComplexVector amplitudes, Dims dims);

  const ComplexVector& amplitudes() const noexcept { return amplitudes_; }
  const Dims& dims() const noexcept { return dims_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(amplitudes_.size()); }

 private:
  ComplexVector amplitudes_;
  Dims dims_;
};

/// Hermitian, PSD (up to kNegativeEigenTol), unit-trace operator.
class DensityMatrix {
 public:
  DensityMatrix(ComplexMatrix matrix, Dims dims);

  const ComplexMatrix& matrix() const noexcept { return matrix_; }
  const Dims& dims() const noexcept { return dims_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(matrix_.rows()); }

  double purity() const;
  /// Reduced state on `keep`.
  DensityMatrix reduce(std::span<const std::size_t> keep) const;

 private:
  ComplexMatrix matrix_;
  Dims dims_;
};

struct Ensemble {
  std::vector<double> weights;
  std::vector<PureState> members;

  /// Throws StateError on size mismatch, negative weights, bad weight sum or
  /// inconsistent member dims.
  void validate() const;
};

struct SchmidtDecomposition {
  RealVector coefficients;  // descending
  ComplexMatrix left;       // column k is the k-th left vector
  ComplexMatrix right;      // column k is the k-th right vector
};

enum class NamedState { Product, Bell, MaxEntangled, Ghz, W, Counterexample };

NamedState parse_named_state(std::string_view name);

/// `d` is only used by MaxEntangled (d ≥ 2).
PureState named_state(NamedState name, std::size_t d = 2);
PureState named_state(std::string_view name, std::size_t d = 2);

PureState haar_random_pure(const Dims& dims, std::uint64_t seed);

/// Haar-distributed unitary (QR of a Ginibre matrix with phase correction).
ComplexMatrix haar_random_unitary(std::size_t dim, std::uint64_t seed);

/// G G† / Tr(G G†) for a dim × rank complex Gaussian G.
DensityMatrix ginibre_random_density(const Dims& dims, std::size_t rank, std::uint64_t seed);
DensityMatrix ginibre_random_density(std::size_t dim, std::size_t rank, std::uint64_t seed);

/// Amplitudes arranged as a (left × right) matrix along `cut`.
ComplexMatrix reshape_along(const PureState& state, const Cut& cut);

SchmidtDecomposition schmidt(const PureState& state, const Cut& cut);

DensityMatrix to_density(const PureState& state);
DensityMatrix mix(const Ensemble& ensemble);

}  // namespace monogamy
