#include "monogamy/roof.hpp"

#include "monogamy/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace monogamy {

PureFunctional parse_pure_functional(std::string_view name) {
  if (name == "entropy" || name == "eof") return PureFunctional::Entropy;
  if (name == "tangle") return PureFunctional::Tangle;
  throw MeasureError("unknown pure-state functional '" + std::string(name) + "'");
}

double evaluate_functional(PureFunctional f, const PureState& state) {
  switch (f) {
    case PureFunctional::Entropy: return entropy_of_entanglement(state, Cut::first_vs_rest()).value;
    case PureFunctional::Tangle: return tangle_pure(state, Cut::first_vs_rest()).value;
  }
  throw MeasureError("invalid functional id");
}

namespace {

constexpr double kRankThreshold = 1e-12;
constexpr double kNegligibleWeight = 1e-14;

// Weighted functional p·f(ψ̃/√p) of an unnormalized member ψ̃ with p = |ψ̃|²,
// together with its gradient ∂/∂ψ̃* (so that dF = 2 Re <g, dψ̃>).
//
// With σ = M M† the unnormalized reduced state of the first subsystem
// (M = ψ̃ reshaped to d_A × rest), F = ∂f/∂σ is
//   entropy: -log2(σ / p)
//   tangle:  4 (adj(σ) / p - det(σ) / p² I)
// and the gradient is F M reshaped back.
class MemberFunctional {
 public:
  MemberFunctional(PureFunctional f, std::size_t first_dim, std::size_t total_dim)
      : f_(f), first_dim_(static_cast<Eigen::Index>(first_dim)),
        block_(static_cast<Eigen::Index>(total_dim / first_dim)) {
    if (f_ == PureFunctional::Tangle && first_dim != 2)
      throw MeasureError("convex_roof: tangle requires the first subsystem to be a qubit");
  }

  double value(const ComplexVector& psi) const {
    const double p = psi.squaredNorm();
    if (p < 1e-300) return 0.0;
    if (first_dim_ == 2) {
      const auto [a, b, c] = qubit_blocks(psi);
      const double det = std::max(a * b - std::norm(c), 0.0);
      if (f_ == PureFunctional::Tangle) return 4.0 * det / p;
      const double disc = std::sqrt(std::max(0.0, 1.0 - 4.0 * det / (p * p)));
      return p * binary_entropy((1.0 + disc) / 2.0);
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(reduced(psi) / p, Eigen::EigenvaluesOnly);
    return p * shannon_bits(solver.eigenvalues());
  }

  void gradient(const ComplexVector& psi, ComplexVector& grad) const {
    grad.resize(psi.size());
    const double p = psi.squaredNorm();
    if (p < 1e-300) {
      grad.setZero();
      return;
    }
    ComplexMatrix f;
    if (f_ == PureFunctional::Tangle) {
      const auto [a, b, c] = qubit_blocks(psi);
      const double det = std::max(a * b - std::norm(c), 0.0);
      f.resize(2, 2);
      // σ = [[a, c*], [c, b]], adj(σ) = [[b, -c*], [-c, a]].
      f << b / p - det / (p * p), -std::conj(c) / p, -c / p, a / p - det / (p * p);
      f *= 4.0;
    } else {
      Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(reduced(psi) / p);
      RealVector logs(solver.eigenvalues().size());
      for (Eigen::Index i = 0; i < logs.size(); ++i) logs(i) = -std::log2(std::max(solver.eigenvalues()(i), 1e-300));
      f = solver.eigenvectors() * logs.cast<Complex>().asDiagonal() * solver.eigenvectors().adjoint();
    }
    // Row a of M is the contiguous block for first-subsystem digit a.
    for (Eigen::Index row = 0; row < first_dim_; ++row) {
      auto out = grad.segment(row * block_, block_);
      out.setZero();
      for (Eigen::Index k = 0; k < first_dim_; ++k) out += f(row, k) * psi.segment(k * block_, block_);
    }
  }

 private:
  struct QubitBlocks {
    double a, b;
    Complex c;
  };

  QubitBlocks qubit_blocks(const ComplexVector& psi) const {
    const auto r0 = psi.head(block_);
    const auto r1 = psi.tail(block_);
    return {r0.squaredNorm(), r1.squaredNorm(), r0.dot(r1)};  // c = <r0, r1> = σ(1, 0)
  }

  ComplexMatrix reduced(const ComplexVector& psi) const {
    const Eigen::Map<const ComplexMatrix> m(psi.data(), block_, first_dim_);  // column a is the block of digit a
    return m.transpose() * m.conjugate();
  }

  PureFunctional f_;
  Eigen::Index first_dim_;
  Eigen::Index block_;
};

struct RestartOutcome {
  ComplexMatrix members;  // column j is ψ̃_j
  double total = 0.0;
  std::size_t sweeps = 0;
  bool converged = false;
};

// exp(i(aσx + bσy)) mixing the pair (x, y).
void rotate_pair(const ComplexVector& x, const ComplexVector& y, double a, double b, ComplexVector& x_out,
                 ComplexVector& y_out) {
  const double r = std::hypot(a, b);
  const double cr = std::cos(r);
  const Complex s = r > 0.0 ? Complex(0.0, std::sin(r) / r) : Complex(0.0, 1.0);
  x_out = cr * x + (s * Complex(a, -b)) * y;
  y_out = (s * Complex(a, b)) * x + cr * y;
}

class PairOptimizer {
 public:
  explicit PairOptimizer(const MemberFunctional& f) : f_(f) {}

  /// Lowers f(x) + f(y) by a line search along the steepest-descent Givens
  /// generator. Returns true and updates the pair when it improves.
  bool improve(ComplexVector& x, ComplexVector& y, double& fx, double& fy) {
    f_.gradient(x, gx_);
    f_.gradient(y, gy_);
    const Complex cross_xy = gx_.dot(y);  // <g_x, y>
    const Complex cross_yx = gy_.dot(x);
    // d/da and d/db of f(x') + f(y') at the identity.
    const double da = -2.0 * (cross_xy + cross_yx).imag();
    const double db = 2.0 * (cross_xy - cross_yx).real();
    const double slope = std::hypot(da, db);
    if (!(slope > 1e-13)) return false;
    dir_a_ = -da / slope;
    dir_b_ = -db / slope;

    const double f0 = fx + fy;
    double best_s = 0.0, best_f = f0;
    auto probe = [&](double s) {
      rotate_pair(x, y, s * dir_a_, s * dir_b_, xt_, yt_);
      const double v = f_.value(xt_) + f_.value(yt_);
      if (v < best_f) {
        best_f = v;
        best_s = s;
      }
      return v;
    };

    constexpr double kMaxStep = 1.5707963267948966;
    double s = std::clamp(step_hint_, 1e-8, kMaxStep);
    double fs = probe(s);
    if (fs < f0) {
      // Expand while the objective keeps falling.
      for (int k = 0; k < 8 && 2.0 * s <= kMaxStep; ++k) {
        const double f2 = probe(2.0 * s);
        if (f2 >= fs) {
          parabolic(s, fs, 2.0 * s, f2, f0, probe);
          break;
        }
        s *= 2.0;
        fs = f2;
      }
    } else {
      for (int k = 0; k < 40 && fs >= f0; ++k) {
        const double prev_s = s, prev_f = fs;
        s *= 0.25;
        fs = probe(s);
        if (fs < f0) parabolic(s, fs, prev_s, prev_f, f0, probe);
      }
    }
    if (!(best_f < f0 - 1e-16 * std::max(1.0, f0))) {
      step_hint_ = std::max(step_hint_ * 0.5, 1e-8);
      return false;
    }
    step_hint_ = best_s;
    rotate_pair(x, y, best_s * dir_a_, best_s * dir_b_, xt_, yt_);
    x = xt_;
    y = yt_;
    fx = f_.value(x);
    fy = f_.value(y);
    return true;
  }

 private:
  // Vertex of the parabola through (0, f0), (s1, f1), (s2, f2).
  template <typename Probe>
  static void parabolic(double s1, double f1, double s2, double f2, double f0, Probe& probe) {
    const double num = (f1 - f0) * s2 * s2 - (f2 - f0) * s1 * s1;
    const double den = 2.0 * ((f1 - f0) * s2 - (f2 - f0) * s1);
    if (den != 0.0) {
      const double vertex = num / den;
      if (vertex > 0.0 && vertex < 2.0 * s2 && std::isfinite(vertex)) probe(vertex);
    }
  }

  const MemberFunctional& f_;
  ComplexVector gx_, gy_, xt_, yt_;
  double dir_a_ = 0.0, dir_b_ = 0.0;
  double step_hint_ = 0.1;
};

RestartOutcome refine(const MemberFunctional& functional, ComplexMatrix members, const RoofConfig& config) {
  const Eigen::Index n = members.cols();
  std::vector<double> costs(static_cast<std::size_t>(n));
  for (Eigen::Index j = 0; j < n; ++j) costs[static_cast<std::size_t>(j)] = functional.value(members.col(j));
  auto total = [&] {
    double t = 0.0;
    for (double c : costs) t += c;
    return t;
  };

  RestartOutcome out;
  double current = total();
  PairOptimizer pair(functional);
  ComplexVector x, y;
  while (out.sweeps < config.max_iterations && current > 0.0) {
    ++out.sweeps;
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = i + 1; j < n; ++j) {
        auto& ci = costs[static_cast<std::size_t>(i)];
        auto& cj = costs[static_cast<std::size_t>(j)];
        if (ci + cj <= 0.0) continue;
        x = members.col(i);
        y = members.col(j);
        if (pair.improve(x, y, ci, cj)) {
          members.col(i) = x;
          members.col(j) = y;
        }
      }
    }
    const double next = total();
    const double gain = current - next;
    current = next;
    if (gain < config.tolerance) {
      out.converged = true;
      break;
    }
  }
  if (current <= 0.0) out.converged = true;
  out.members = std::move(members);
  out.total = current;
  return out;
}

Ensemble to_ensemble(const ComplexMatrix& members, const Dims& dims) {
  Ensemble e;
  double total = 0.0;
  for (Eigen::Index j = 0; j < members.cols(); ++j) {
    const double p = members.col(j).squaredNorm();
    if (p < kNegligibleWeight) continue;
    e.weights.push_back(p);
    e.members.push_back(PureState::normalized(members.col(j), dims));
    total += p;
  }
  for (double& w : e.weights) w /= total;
  return e;
}

double ensemble_average(PureFunctional f, const Ensemble& e) {
  double v = 0.0;
  for (std::size_t i = 0; i < e.members.size(); ++i) v += e.weights[i] * evaluate_functional(f, e.members[i]);
  return v;
}

}  // namespace

RoofResult convex_roof(PureFunctional functional, const DensityMatrix& rho, const RoofConfig& config) {
  if (rho.dims().size() < 2) throw MeasureError("convex_roof: state must have at least two subsystems");
  const MemberFunctional member_functional(functional, rho.dims().front(), rho.dim());

  const HermitianSpectrum eig = eig_hermitian(rho.matrix());
  Eigen::Index rank = 0;
  while (rank < eig.eigenvalues.size() && eig.eigenvalues(rank) > kRankThreshold) ++rank;
  rank = std::max<Eigen::Index>(rank, 1);

  // Eigen-ensemble scaled by sqrt(λ): column i is sqrt(λ_i)|e_i>.
  ComplexMatrix scaled = eig.eigenvectors.leftCols(rank);
  for (Eigen::Index i = 0; i < rank; ++i) scaled.col(i) *= std::sqrt(eig.eigenvalues(i));

  RoofResult result;
  if (rank == 1) {
    result.ensemble = to_ensemble(scaled, rho.dims());
    result.value = ensemble_average(functional, result.ensemble);
    result.converged = true;
    return result;
  }

  if (config.ensemble_size != 0 && config.ensemble_size < static_cast<std::size_t>(rank))
    throw MeasureError("convex_roof: ensemble size " + std::to_string(config.ensemble_size) + " is below the rank " +
                       std::to_string(rank));
  const auto n = static_cast<Eigen::Index>(
      config.ensemble_size ? config.ensemble_size : std::max<std::size_t>(4, static_cast<std::size_t>(rank * rank)));
  const std::size_t restarts = std::max<std::size_t>(config.restarts, 1);

  RestartOutcome best;
  best.total = std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < restarts; ++r) {
    ComplexMatrix v = ComplexMatrix::Zero(n, rank);  // n × rank isometry
    if (r == 0) {
      v.topRows(rank).setIdentity();
    } else {
      CounterRng rng(config.seed + r);
      ComplexMatrix g(n, rank);
      for (Eigen::Index c = 0; c < rank; ++c)
        for (Eigen::Index i = 0; i < n; ++i) g(i, c) = rng.complex_normal();
      Eigen::HouseholderQR<ComplexMatrix> qr(g);
      v = qr.householderQ() * ComplexMatrix::Identity(n, rank);
    }
    RestartOutcome outcome = refine(member_functional, scaled * v.transpose(), config);
    if (outcome.total < best.total) best = std::move(outcome);
    if (best.total <= 1e-14) break;
  }

  result.ensemble = to_ensemble(best.members, rho.dims());
  result.value = ensemble_average(functional, result.ensemble);
  result.iterations = best.sweeps;
  result.converged = best.converged;
  return result;
}

}  // namespace monogamy
