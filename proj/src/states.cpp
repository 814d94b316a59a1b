#include "monogamy/states.hpp"

#include "monogamy/rng.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace monogamy {

namespace {

void validate_dims(const Dims& dims, std::size_t expected) {
  if (dims.empty()) throw StateError("dims must be nonempty");
  if (std::ranges::any_of(dims, [](std::size_t d) { return d == 0; }))
    throw StateError("subsystem dimensions must be positive");
  if (product(dims) != expected)
    throw StateError("product of dims (" + std::to_string(product(dims)) +
                     ") does not match state dimension (" + std::to_string(expected) + ")");
}

// Splits every basis index into its (left, right) indices along `cut`.
void split_indices(const Dims& dims, const Cut& cut, std::vector<std::size_t>& left_index,
                   std::vector<std::size_t>& right_index, std::size_t& left_dim,
                   std::size_t& right_dim) {
  std::vector<bool> on_left(dims.size(), false);
  for (auto s : cut.left) on_left[s] = true;
  const std::size_t n = product(dims);
  left_index.assign(n, 0);
  right_index.assign(n, 0);
  left_dim = right_dim = 1;
  for (std::size_t full = 0; full < n; ++full) {
    std::size_t rem = full, ls = 1, rs = 1, l = 0, r = 0;
    for (std::size_t s = dims.size(); s-- > 0;) {
      const std::size_t digit = rem % dims[s];
      rem /= dims[s];
      if (on_left[s]) {
        l += digit * ls;
        ls *= dims[s];
      } else {
        r += digit * rs;
        rs *= dims[s];
      }
    }
    left_index[full] = l;
    right_index[full] = r;
    left_dim = ls;
    right_dim = rs;
  }
}

}  // namespace

std::vector<std::size_t> Cut::right(std::size_t num_subsystems) const {
  std::vector<std::size_t> out;
  for (std::size_t s = 0; s < num_subsystems; ++s)
    if (!std::ranges::binary_search(left, s)) out.push_back(s);
  return out;
}

void Cut::validate(std::size_t num_subsystems) const {
  if (left.empty() || left.size() >= num_subsystems)
    throw StateError("invalid cut: both sides must be nonempty");
  for (std::size_t i = 0; i < left.size(); ++i)
    if (left[i] >= num_subsystems || (i > 0 && left[i] <= left[i - 1]))
      throw StateError("invalid cut: subsystem indices must be strictly increasing and in range");
}

PureState::PureState(ComplexVector amplitudes, Dims dims)
    : amplitudes_(std::move(amplitudes)), dims_(std::move(dims)) {
  validate_dims(dims_, static_cast<std::size_t>(amplitudes_.size()));
  if (!amplitudes_.allFinite()) throw StateError("amplitudes must be finite");
  const double norm2 = amplitudes_.squaredNorm();
  if (std::abs(norm2 - 1.0) > kNormTol)
    throw StateError("state is not normalized (norm^2 = " + std::to_string(norm2) + ")");
}

PureState PureState::normalized(ComplexVector amplitudes, Dims dims) {
  const double norm = amplitudes.norm();
  if (!(norm > 0.0)) throw StateError("cannot normalize a zero vector");
  amplitudes /= norm;
  return PureState(std::move(amplitudes), std::move(dims));
}

DensityMatrix::DensityMatrix(ComplexMatrix matrix, Dims dims)
    : matrix_(std::move(matrix)), dims_(std::move(dims)) {
  validate_matrix(matrix_);
  validate_dims(dims_, dim());
  if (max_asymmetry(matrix_) > kHermitianTol) throw StateError("density matrix is not Hermitian");
  matrix_ = (matrix_ + matrix_.adjoint()) * 0.5;
  const double tr = matrix_.trace().real();
  if (std::abs(tr - 1.0) > kNormTol)
    throw StateError("density matrix trace is " + std::to_string(tr) + ", expected 1");
  const RealVector ev = eigvals_hermitian(matrix_);
  if (ev(ev.size() - 1) < -kNegativeEigenTol)
    throw StateError("density matrix has negative eigenvalue " + std::to_string(ev(ev.size() - 1)));
}

double DensityMatrix::purity() const { return (matrix_ * matrix_).trace().real(); }

DensityMatrix DensityMatrix::reduce(std::span<const std::size_t> keep) const {
  Dims kept;
  for (auto k : keep) {
    if (k >= dims_.size()) throw StateError("reduce: subsystem index out of range");
    kept.push_back(dims_[k]);
  }
  return DensityMatrix(partial_trace(matrix_, dims_, keep), std::move(kept));
}

void Ensemble::validate() const {
  if (members.empty() || weights.size() != members.size())
    throw StateError("ensemble weights and members must be nonempty and equal in length");
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw StateError("ensemble weights must be nonnegative");
    total += w;
  }
  if (std::abs(total - 1.0) > kNormTol) throw StateError("ensemble weights must sum to 1");
  for (const auto& m : members)
    if (m.dims() != members.front().dims()) throw StateError("ensemble members have mismatched dims");
}

NamedState parse_named_state(std::string_view name) {
  if (name == "product") return NamedState::Product;
  if (name == "bell") return NamedState::Bell;
  if (name == "max_entangled") return NamedState::MaxEntangled;
  if (name == "ghz") return NamedState::Ghz;
  if (name == "w") return NamedState::W;
  if (name == "counterexample") return NamedState::Counterexample;
  throw StateError("unknown named state '" + std::string(name) + "'");
}

PureState named_state(NamedState name, std::size_t d) {
  switch (name) {
    case NamedState::Product: {
      ComplexVector plus(2);
      plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
      return PureState::normalized(tensor(plus, plus), {2, 2});
    }
    case NamedState::Bell:
      return named_state(NamedState::MaxEntangled, 2);
    case NamedState::MaxEntangled: {
      if (d < 2) throw StateError("maximally entangled state needs d >= 2");
      ComplexVector a = ComplexVector::Zero(static_cast<Eigen::Index>(d * d));
      for (std::size_t i = 0; i < d; ++i) a(static_cast<Eigen::Index>(i * d + i)) = 1.0 / std::sqrt(double(d));
      return PureState::normalized(std::move(a), {d, d});
    }
    case NamedState::Ghz: {
      ComplexVector a = ComplexVector::Zero(8);
      a(0) = a(7) = 1.0 / std::sqrt(2.0);
      return PureState::normalized(std::move(a), {2, 2, 2});
    }
    case NamedState::W: {
      ComplexVector a = ComplexVector::Zero(8);
      a(4) = a(2) = a(1) = 1.0 / std::sqrt(3.0);
      return PureState::normalized(std::move(a), {2, 2, 2});
    }
    case NamedState::Counterexample: {
      // |100>/√2 + |010>/2 + |001>/2
      ComplexVector a = ComplexVector::Zero(8);
      a(4) = 1.0 / std::sqrt(2.0);
      a(2) = 0.5;
      a(1) = 0.5;
      return PureState::normalized(std::move(a), {2, 2, 2});
    }
  }
  throw StateError("unknown named state");
}

PureState named_state(std::string_view name, std::size_t d) { return named_state(parse_named_state(name), d); }

PureState haar_random_pure(const Dims& dims, std::uint64_t seed) {
  if (dims.empty() || std::ranges::any_of(dims, [](std::size_t d) { return d < 2; }))
    throw StateError("haar_random_pure: dims must be nonempty with every entry >= 2");
  CounterRng rng(seed);
  ComplexVector a(static_cast<Eigen::Index>(product(dims)));
  for (Eigen::Index i = 0; i < a.size(); ++i) a(i) = rng.complex_normal();
  return PureState::normalized(std::move(a), dims);
}

ComplexMatrix haar_random_unitary(std::size_t dim, std::uint64_t seed) {
  CounterRng rng(seed);
  const auto n = static_cast<Eigen::Index>(dim);
  ComplexMatrix g(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) g(i, j) = rng.complex_normal();
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < n; ++j) {
    const Complex diag = r(j, j);
    if (std::abs(diag) > 0) q.col(j) *= diag / std::abs(diag);
  }
  return q;
}

DensityMatrix ginibre_random_density(const Dims& dims, std::size_t rank, std::uint64_t seed) {
  const std::size_t dim = product(dims);
  if (rank < 1 || rank > dim) throw StateError("ginibre_random_density: need 1 <= rank <= dim");
  CounterRng rng(seed);
  ComplexMatrix g(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(rank));
  for (Eigen::Index j = 0; j < g.cols(); ++j)
    for (Eigen::Index i = 0; i < g.rows(); ++i) g(i, j) = rng.complex_normal();
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  rho = (rho + rho.adjoint()) * 0.5;
  return DensityMatrix(std::move(rho), dims);
}

DensityMatrix ginibre_random_density(std::size_t dim, std::size_t rank, std::uint64_t seed) {
  return ginibre_random_density(Dims{dim}, rank, seed);
}

ComplexMatrix reshape_along(const PureState& state, const Cut& cut) {
  cut.validate(state.dims().size());
  std::vector<std::size_t> li, ri;
  std::size_t ld = 0, rd = 0;
  split_indices(state.dims(), cut, li, ri, ld, rd);
  ComplexMatrix m = ComplexMatrix::Zero(static_cast<Eigen::Index>(ld), static_cast<Eigen::Index>(rd));
  for (std::size_t i = 0; i < li.size(); ++i)
    m(static_cast<Eigen::Index>(li[i]), static_cast<Eigen::Index>(ri[i])) =
        state.amplitudes()(static_cast<Eigen::Index>(i));
  return m;
}

SchmidtDecomposition schmidt(const PureState& state, const Cut& cut) {
  const ComplexMatrix m = reshape_along(state, cut);
  Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  SchmidtDecomposition out;
  out.coefficients = svd.singularValues();  // already descending
  out.left = svd.matrixU();
  // ψ(l, r) = Σ_k s_k U(l, k) conj(V(r, k)), so the right vectors are conj(V).
  out.right = svd.matrixV().conjugate();
  for (Eigen::Index k = 0; k < out.left.cols(); ++k) {
    for (Eigen::Index i = 0; i < out.left.rows(); ++i) {
      const Complex c = out.left(i, k);
      if (std::abs(c) > 1e-12) {
        const Complex phase = c / std::abs(c);
        out.left.col(k) *= std::conj(phase);
        out.right.col(k) *= phase;
        break;
      }
    }
  }
  return out;
}

DensityMatrix to_density(const PureState& state) {
  const ComplexVector& a = state.amplitudes();
  return DensityMatrix(a * a.adjoint(), state.dims());
}

DensityMatrix mix(const Ensemble& ensemble) {
  ensemble.validate();
  const auto n = static_cast<Eigen::Index>(ensemble.members.front().dim());
  ComplexMatrix rho = ComplexMatrix::Zero(n, n);
  for (std::size_t i = 0; i < ensemble.members.size(); ++i) {
    const ComplexVector& a = ensemble.members[i].amplitudes();
    rho.noalias() += ensemble.weights[i] * (a * a.adjoint());
  }
  return DensityMatrix(std::move(rho), ensemble.members.front().dims());
}

}  // namespace monogamy
