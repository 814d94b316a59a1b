#pragma once

#include "monogamy/rng.hpp"
#include "monogamy/states.hpp"

#include <doctest.h>

namespace testing {

using namespace monogamy;

inline double max_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  REQUIRE(a.rows() == b.rows());
  REQUIRE(a.cols() == b.cols());
  return (a - b).cwiseAbs().maxCoeff();
}

inline ComplexMatrix random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  CounterRng rng(seed);
  ComplexMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = rng.complex_normal();
  return m;
}

inline ComplexMatrix random_hermitian(std::size_t n, std::uint64_t seed) {
  const ComplexMatrix g = random_matrix(n, n, seed);
  return 0.5 * (g + g.adjoint());
}

inline ComplexMatrix random_psd(std::size_t n, std::uint64_t seed) {
  const ComplexMatrix g = random_matrix(n, n, seed);
  return g * g.adjoint();
}

inline ComplexVector ket(std::initializer_list<Complex> amps) {
  ComplexVector v(static_cast<Eigen::Index>(amps.size()));
  Eigen::Index i = 0;
  for (Complex a : amps) v(i++) = a;
  return v;
}

inline DensityMatrix local_rotate(const DensityMatrix& rho, const ComplexMatrix& u, const ComplexMatrix& v) {
  const ComplexMatrix uv = tensor(u, v);
  return DensityMatrix(uv * rho.matrix() * uv.adjoint(), rho.dims());
}

}  // namespace testing
