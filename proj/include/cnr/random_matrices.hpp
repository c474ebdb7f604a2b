#pragma once

#include "cnr/haar.hpp"
#include "cnr/rng.hpp"

namespace cnr {

// i.i.d. standard complex Gaussian entries.
inline DenseMatrix gaussian_matrix(int rows, int cols, Rng& rng) {
  DenseMatrix m(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) m(i, j) = rng.complex_normal();
  return m;
}

inline DenseMatrix gaussian_matrix(int n, Rng& rng) { return gaussian_matrix(n, n, rng); }

inline DenseMatrix random_hermitian(int n, Rng& rng) {
  const DenseMatrix g = gaussian_matrix(n, rng);
  return 0.5 * (g + g.adjoint());
}

inline ComplexVector gaussian_vector(int n, Rng& rng) {
  ComplexVector v(n);
  for (int i = 0; i < n; ++i) v(i) = rng.complex_normal();
  return v;
}

// V diag(d) V^H with V Haar.
inline DenseMatrix conjugated_diagonal(const ComplexVector& d, Rng& rng) {
  const DenseMatrix v = haar_unitary(static_cast<int>(d.size()), rng);
  return v * d.asDiagonal() * v.adjoint();
}

inline DenseMatrix random_normal(int n, Rng& rng) { return conjugated_diagonal(gaussian_vector(n, rng), rng); }

inline DenseMatrix random_diagonal(int n, Rng& rng) {
  return DenseMatrix(gaussian_vector(n, rng).asDiagonal());
}

}  // namespace cnr
