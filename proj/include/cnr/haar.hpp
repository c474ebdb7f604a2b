#pragma once

#include "cnr/rng.hpp"
#include "cnr/types.hpp"

namespace cnr {

// Haar-distributed n x n unitary: QR of a complex Ginibre matrix with the
// diagonal of R normalised to positive reals (Q <- Q * diag(r_kk / |r_kk|)).
// Without that phase correction the result is not Haar.
DenseMatrix haar_unitary(int n, Rng& rng);

}  // namespace cnr
