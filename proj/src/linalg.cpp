#include "monogamy/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace monogamy {

void validate_matrix(const ComplexMatrix& m) {
  if (m.rows() == 0 || m.rows() != m.cols()) {
    throw LinalgError("matrix must be square and nonempty");
  }
  if (static_cast<std::size_t>(m.rows()) > kMaxDim) {
    throw LinalgError("matrix dimension " + std::to_string(m.rows()) + " exceeds cap " +
                      std::to_string(kMaxDim));
  }
  if (!m.allFinite()) throw LinalgError("matrix has non-finite entries");
}

std::size_t product(std::span<const std::size_t> dims) {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  const Eigen::Index ra = a.rows(), ca = a.cols(), rb = b.rows(), cb = b.cols();
  ComplexMatrix out(ra * rb, ca * cb);
  for (Eigen::Index i = 0; i < ra; ++i)
    for (Eigen::Index j = 0; j < ca; ++j) out.block(i * rb, j * cb, rb, cb) = a(i, j) * b;
  return out;
}

ComplexVector tensor(const ComplexVector& a, const ComplexVector& b) {
  ComplexVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep) {
  validate_matrix(m);
  if (keep.empty()) throw LinalgError("partial_trace: keep set is empty");
  if (std::ranges::any_of(dims, [](std::size_t d) { return d == 0; }) ||
      product(dims) != static_cast<std::size_t>(m.rows())) {
    throw LinalgError("partial_trace: product of dims does not match matrix dimension");
  }
  for (std::size_t i = 0; i < keep.size(); ++i) {
    if (keep[i] >= dims.size() || (i > 0 && keep[i] <= keep[i - 1])) {
      throw LinalgError("partial_trace: keep must be a strictly increasing subsystem index set");
    }
  }

  std::vector<bool> kept(dims.size(), false);
  for (auto k : keep) kept[k] = true;

  const std::size_t n = static_cast<std::size_t>(m.rows());
  std::vector<std::size_t> kept_index(n), traced_index(n);
  std::size_t kept_dim = 1;
  for (std::size_t full = 0; full < n; ++full) {
    std::size_t rem = full, kstride = 1, tstride = 1, k = 0, t = 0;
    for (std::size_t s = dims.size(); s-- > 0;) {
      const std::size_t digit = rem % dims[s];
      rem /= dims[s];
      if (kept[s]) {
        k += digit * kstride;
        kstride *= dims[s];
      } else {
        t += digit * tstride;
        tstride *= dims[s];
      }
    }
    kept_index[full] = k;
    traced_index[full] = t;
    kept_dim = kstride;
  }

  ComplexMatrix out = ComplexMatrix::Zero(static_cast<Eigen::Index>(kept_dim),
                                          static_cast<Eigen::Index>(kept_dim));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (traced_index[i] == traced_index[j])
        out(static_cast<Eigen::Index>(kept_index[i]), static_cast<Eigen::Index>(kept_index[j])) +=
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  return out;
}

double max_asymmetry(const ComplexMatrix& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

namespace {

ComplexMatrix symmetrized(const ComplexMatrix& m) {
  validate_matrix(m);
  const double asym = max_asymmetry(m);
  if (asym > kHermitianTol) {
    throw LinalgError("matrix is not Hermitian (max asymmetry " + std::to_string(asym) + ")");
  }
  return (m + m.adjoint()) * 0.5;
}

}  // namespace

HermitianSpectrum eig_hermitian(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(symmetrized(m));
  if (solver.info() != Eigen::Success) throw LinalgError("eig_hermitian: eigensolver did not converge");
  // Eigen returns ascending order.
  HermitianSpectrum out;
  out.eigenvalues = solver.eigenvalues().reverse();
  out.eigenvectors = solver.eigenvectors().rowwise().reverse();
  return out;
}

RealVector eigvals_hermitian(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(symmetrized(m), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw LinalgError("eig_hermitian: eigensolver did not converge");
  return solver.eigenvalues().reverse();
}

ComplexMatrix sqrt_psd(const ComplexMatrix& m) {
  const auto eig = eig_hermitian(m);
  RealVector roots(eig.eigenvalues.size());
  for (Eigen::Index i = 0; i < roots.size(); ++i) {
    const double lambda = eig.eigenvalues(i);
    if (lambda < -kNegativeEigenTol) {
      throw LinalgError("sqrt_psd: negative eigenvalue " + std::to_string(lambda));
    }
    roots(i) = std::sqrt(std::max(lambda, 0.0));
  }
  const ComplexMatrix& v = eig.eigenvectors;
  ComplexMatrix out = v * roots.cast<Complex>().asDiagonal() * v.adjoint();
  return (out + out.adjoint()) * 0.5;
}

const ComplexMatrix& pauli_x() {
  static const ComplexMatrix m = [] {
    ComplexMatrix x(2, 2);
    x << 0, 1, 1, 0;
    return x;
  }();
  return m;
}

const ComplexMatrix& pauli_y() {
  static const ComplexMatrix m = [] {
    ComplexMatrix y(2, 2);
    y << 0, Complex(0, -1), Complex(0, 1), 0;
    return y;
  }();
  return m;
}

const ComplexMatrix& pauli_z() {
  static const ComplexMatrix m = [] {
    ComplexMatrix z(2, 2);
    z << 1, 0, 0, -1;
    return z;
  }();
  return m;
}

ComplexMatrix spin_flip(const ComplexMatrix& rho) {
  validate_matrix(rho);
  if (rho.rows() != 4) throw LinalgError("spin_flip: expected a 4x4 two-qubit operator");
  static const ComplexMatrix yy = tensor(pauli_y(), pauli_y());
  return yy * rho.conjugate() * yy;
}

}  // namespace monogamy
