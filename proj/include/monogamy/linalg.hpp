#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace monogamy {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Subsystem dimensions, most significant subsystem first.
using Dims = std::vector<std::size_t>;

inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kNegativeEigenTol = 1e-10;
inline constexpr std::size_t kMaxDim = 64;

class LinalgError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct HermitianSpectrum {
  RealVector eigenvalues;      // descending
  ComplexMatrix eigenvectors;  // column i pairs with eigenvalues(i)
};

/// Throws LinalgError unless `m` is square, nonempty, within kMaxDim and finite.
void validate_matrix(const ComplexMatrix& m);

std::size_t product(std::span<const std::size_t> dims);

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector tensor(const ComplexVector& a, const ComplexVector& b);

/// Reduced operator on the subsystems listed in `keep` (strictly increasing).
ComplexMatrix partial_trace(const ComplexMatrix& m, std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep);

double max_asymmetry(const ComplexMatrix& m);

/// Eigendecomposition of a Hermitian matrix. Inputs within kHermitianTol of
/// Hermitian are symmetrized first.
HermitianSpectrum eig_hermitian(const ComplexMatrix& m);

/// Eigenvalues only, descending.
RealVector eigvals_hermitian(const ComplexMatrix& m);

/// Principal square root of a PSD matrix. Eigenvalues in [-kNegativeEigenTol, 0)
/// are clipped to zero.
ComplexMatrix sqrt_psd(const ComplexMatrix& m);

const ComplexMatrix& pauli_x();
const ComplexMatrix& pauli_y();
const ComplexMatrix& pauli_z();

/// (σy ⊗ σy) ρ* (σy ⊗ σy) for a 4×4 operator.
ComplexMatrix spin_flip(const ComplexMatrix& rho);

}  // namespace monogamy
