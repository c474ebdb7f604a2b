#include "cnr/haar.hpp"

#include <Eigen/QR>

namespace cnr {

DenseMatrix haar_unitary(int n, Rng& rng) {
  if (n < 1) throw InvalidArgument("haar_unitary: n must be >= 1");
  DenseMatrix z(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) z(i, j) = rng.complex_normal();

  Eigen::HouseholderQR<DenseMatrix> qr(z);
  DenseMatrix q = qr.householderQ();
  const auto& r = qr.matrixQR();
  for (int k = 0; k < n; ++k) {
    const double mod = std::abs(r(k, k));
    const Complex phase = mod > 0.0 ? r(k, k) / mod : Complex(1.0);
    q.col(k) *= phase;
  }
  return q;
}

}  // namespace cnr
