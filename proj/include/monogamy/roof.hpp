#pragma once

#include "monogamy/measures.hpp"

#include <cstdint>
#include <string_view>

namespace monogamy {

/// Pure-state functionals the convex roof can extend. Both are evaluated
/// across the cut that isolates the first subsystem.
enum class PureFunctional { Entropy, Tangle };

PureFunctional parse_pure_functional(std::string_view name);

double evaluate_functional(PureFunctional f, const PureState& state);

struct RoofConfig {
  std::size_t ensemble_size = 0;  // 0 selects max(4, rank^2)
  std::size_t restarts = 32;
  double tolerance = 1e-8;        // minimum per-sweep improvement
  std::size_t max_iterations = 5000;
  std::uint64_t seed = 0;
};

struct RoofResult {
  double value = 0.0;
  Ensemble ensemble;
  std::size_t iterations = 0;
  bool converged = false;
};

/// Upper bound on min Σ p_i f(ψ_i) over decompositions ρ = Σ p_i |ψ_i><ψ_i|.
///
/// Decompositions are written as |ψ̃_j> = Σ_i V_ji sqrt(λ_i) |e_i> for an
/// n × rank isometry V over the eigen-ensemble {λ_i, |e_i>}. Each restart
/// starts from a random isometry (restart 0 uses the eigen-ensemble itself)
/// and sweeps over all member pairs, mixing each pair with the SU(2) rotation
/// that lowers the objective most (pattern search on two angles). A restart
/// stops when a full sweep improves by less than `tolerance` or after
/// `max_iterations` sweeps. Never throws on non-convergence.
RoofResult convex_roof(PureFunctional functional, const DensityMatrix& rho, const RoofConfig& config = {});

}  // namespace monogamy
