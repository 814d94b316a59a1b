#include "monogamy/measures.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace monogamy {

std::string_view to_string(MeasureId id) {
  switch (id) {
    case MeasureId::EntropyOfEntanglement: return "entropy";
    case MeasureId::Concurrence: return "concurrence";
    case MeasureId::EntanglementOfFormation: return "eof";
    case MeasureId::Tangle: return "tangle";
  }
  return "unknown";
}

double shannon_bits(const RealVector& probabilities) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < probabilities.size(); ++i) {
    const double p = probabilities(i);
    if (p > 0.0) s -= p * std::log2(p);
  }
  return std::max(s, 0.0);
}

double binary_entropy(double p) {
  p = std::clamp(p, 0.0, 1.0);
  double s = 0.0;
  if (p > 0.0) s -= p * std::log2(p);
  if (p < 1.0) s -= (1.0 - p) * std::log2(1.0 - p);
  return s;
}

namespace {

void require_two_qubits(const DensityMatrix& rho, const char* op) {
  if (rho.dims() != Dims{2, 2}) throw MeasureError(std::string(op) + ": expected two-qubit dims (2,2)");
}
}  // namespace

MeasureValue entropy_of_entanglement(const PureState& state, const Cut& cut) {
  // Both reduced states share their nonzero spectrum; the smaller side is cheaper.
  const ComplexMatrix m = reshape_along(state, cut);
  const ComplexMatrix reduced = m.rows() <= m.cols() ? ComplexMatrix(m * m.adjoint())
                                                     : ComplexMatrix(m.transpose() * m.conjugate());
  const double s = shannon_bits(eigvals_hermitian((reduced + reduced.adjoint()) * 0.5));
  return {s, MeasureId::EntropyOfEntanglement};
}

constexpr double kProductSpectrumFloor = 1e-13;

MeasureValue concurrence(const DensityMatrix& rho) {
  require_two_qubits(rho, "concurrence");
  const ComplexMatrix& m = rho.matrix();
  const ComplexMatrix product = m * spin_flip(m);
  Eigen::ComplexEigenSolver<ComplexMatrix> solver(product, false);
  if (solver.info() != Eigen::Success) throw LinalgError("concurrence: eigensolver did not converge");
  // ρρ̃ is similar to a PSD matrix, so its spectrum is real and nonnegative up
  // to rounding. Rounding leaves ~1e-16 where the exact value is 0 (any
  // rank-deficient ρ) and the square root would blow that up to 1e-8, so
  // eigenvalues under kProductSpectrumFloor count as zero.
  std::array<double, 4> lambda{};
  for (int i = 0; i < 4; ++i) {
    const double mu = solver.eigenvalues()(i).real();
    lambda[static_cast<std::size_t>(i)] = mu < kProductSpectrumFloor ? 0.0 : std::sqrt(mu);
  }
  std::ranges::sort(lambda, std::greater<>());
  const double c = lambda[0] - lambda[1] - lambda[2] - lambda[3];
  return {std::clamp(c, 0.0, 1.0), MeasureId::Concurrence};
}

MeasureValue concurrence_psd_sandwich(const DensityMatrix& rho) {
  require_two_qubits(rho, "concurrence");
  const ComplexMatrix root = sqrt_psd(rho.matrix());
  ComplexMatrix inner = root * spin_flip(rho.matrix()) * root;
  inner = (inner + inner.adjoint()) * 0.5;
  const RealVector ev = eigvals_hermitian(inner);
  std::array<double, 4> lambda{};
  for (int i = 0; i < 4; ++i) lambda[static_cast<std::size_t>(i)] = std::sqrt(std::max(ev(i), 0.0));
  const double c = lambda[0] - lambda[1] - lambda[2] - lambda[3];
  return {std::clamp(c, 0.0, 1.0), MeasureId::Concurrence};
}

double eof_from_concurrence(double c) {
  if (!(c >= -1e-9 && c <= 1.0 + 1e-9)) throw MeasureError("eof_from_concurrence: concurrence outside [0, 1]");
  c = std::clamp(c, 0.0, 1.0);
  return binary_entropy((1.0 + std::sqrt(1.0 - c * c)) / 2.0);
}

MeasureValue eof_closed_form(const DensityMatrix& rho) {
  require_two_qubits(rho, "eof_closed_form");
  return {eof_from_concurrence(concurrence(rho).value), MeasureId::EntanglementOfFormation};
}

MeasureValue tangle_pure(const PureState& state, const Cut& cut) {
  cut.validate(state.dims().size());
  if (cut.left.size() != 1 || state.dims()[cut.left.front()] != 2)
    throw MeasureError("tangle_pure: the cut must isolate a single qubit");
  const ComplexMatrix m = reshape_along(state, cut);
  const ComplexMatrix reduced = m * m.adjoint();
  const double det = (reduced(0, 0) * reduced(1, 1) - reduced(0, 1) * reduced(1, 0)).real();
  return {std::clamp(4.0 * det, 0.0, 1.0), MeasureId::Tangle};
}

}  // namespace monogamy
