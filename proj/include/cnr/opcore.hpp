#pragma once

#include <limits>
#include <vector>

#include "cnr/types.hpp"

namespace cnr {

// Schatten class exponent p in [1, inf].
//
// Stored as the reciprocal pair (1/p, 1/q) with q the conjugate exponent, so
// conjugation is a swap and therefore an exact involution.
class SchattenExponent {
 public:
  explicit SchattenExponent(double p);
  static SchattenExponent infinity() { return SchattenExponent(0.0, 1.0); }

  double value() const {
    return inv_ == 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / inv_;
  }
  double reciprocal() const { return inv_; }
  bool is_infinite() const { return inv_ == 0.0; }
  SchattenExponent conjugate() const { return SchattenExponent(conj_inv_, inv_); }

  friend bool operator==(const SchattenExponent& a, const SchattenExponent& b) {
    return a.inv_ == b.inv_ && a.conj_inv_ == b.conj_inv_;
  }

 private:
  SchattenExponent(double inv, double conj_inv) : inv_(inv), conj_inv_(conj_inv) {}
  double inv_;
  double conj_inv_;
};

inline SchattenExponent conjugate_exponent(const SchattenExponent& p) { return p.conjugate(); }

// Nonincreasing list of singular values.
struct SingularSpectrum {
  std::vector<double> values;
};

// Modified eigenvalue sequence of a finite matrix: nonzero eigenvalues by
// nonincreasing modulus with algebraic multiplicity, numerical-kernel zeros
// appended at the end. values.size() equals the matrix dimension.
struct EigenSeq {
  std::vector<Complex> values;
  std::size_t kernel_padding = 0;
};

// Eigen-decomposition of a normal matrix, A = vectors * diag(seq.values) * vectors^H,
// with the columns of `vectors` ordered like seq.values.
struct NormalDecomposition {
  EigenSeq seq;
  DenseMatrix vectors;
};

struct InequalityReport {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

void require_square(const DenseMatrix& a, const char* what);
void require_finite(const DenseMatrix& a, const char* what);

SingularSpectrum singular_values(const DenseMatrix& a);

// Schatten norm of a finite singular value list (any order).
double schatten_norm(const std::vector<double>& singular, const SchattenExponent& p);
double schatten_norm(const DenseMatrix& a, const SchattenExponent& p);
double operator_norm(const DenseMatrix& a);

Complex trace(const DenseMatrix& a);
// tr(A B) without forming the product.
Complex trace_of_product(const DenseMatrix& a, const DenseMatrix& b);

// An eigenvalue is kernel when |lambda| <= 1e-10 * max(1, ||A||).
EigenSeq modified_eigenseq(const DenseMatrix& a);

bool is_hermitian(const DenseMatrix& a, double tol = 1e-10);
bool is_normal(const DenseMatrix& a, double tol = 1e-10);
bool is_unitary(const DenseMatrix& u, double tol = 1e-10);

// Throws InvalidArgument unless `a` is normal to 1e-10.
NormalDecomposition normal_decomposition(const DenseMatrix& a);

// Eigenvalues of a Hermitian matrix in decreasing order.
std::vector<double> hermitian_eigenvalues_desc(const DenseMatrix& a);

// |tr(CT)| <= nu_p(C) nu_q(T), q conjugate to p.
InequalityReport check_holder_trace(const DenseMatrix& c, const DenseMatrix& t,
                                    const SchattenExponent& p);

// sum_{k<=m} |<e_k, T e_k>| <= sum_{k<=m} s_k(T) for orthonormal columns e_k.
InequalityReport check_diagonal_domination(const DenseMatrix& t, const DenseMatrix& onb,
                                           std::size_t m);

// nu_p(S C T) <= ||S|| nu_p(C) ||T||.
InequalityReport check_ideal_bound(const DenseMatrix& s, const DenseMatrix& c,
                                   const DenseMatrix& t, const SchattenExponent& p);

}  // namespace cnr
