#include "cnr/opcore.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace cnr {

namespace {

constexpr double kKernelTol = 1e-10;
constexpr double kClusterTol = 1e-8;

bool is_diagonal(const DenseMatrix& a) {
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      if (i != j && a(i, j) != Complex(0.0, 0.0)) return false;
  return true;
}

// Orders eigenvalues by nonincreasing modulus, snaps the numerical kernel to
// exact zeros (placed last) and merges clusters. Returns the order applied.
std::vector<std::size_t> order_spectrum(std::vector<Complex>& eig, double norm,
                                        std::size_t& kernel) {
  const double scale = std::max(1.0, norm);
  const std::size_t n = eig.size();

  for (auto& z : eig)
    if (std::abs(z) <= kKernelTol * scale) z = 0.0;

  std::vector<bool> done(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    if (done[i] || eig[i] == Complex(0.0)) continue;
    std::vector<std::size_t> members{i};
    for (std::size_t j = i + 1; j < n; ++j)
      if (!done[j] && eig[j] != Complex(0.0) && std::abs(eig[j] - eig[i]) <= kClusterTol * scale)
        members.push_back(j);
    if (members.size() > 1) {
      Complex mean = 0.0;
      for (auto m : members) mean += eig[m];
      mean /= static_cast<double>(members.size());
      for (auto m : members) eig[m] = mean;
    }
    for (auto m : members) done[m] = true;
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const double ma = std::abs(eig[a]);
    const double mb = std::abs(eig[b]);
    if (ma != mb) return ma > mb;
    if (eig[a].real() != eig[b].real()) return eig[a].real() > eig[b].real();
    return eig[a].imag() > eig[b].imag();
  });
  std::vector<Complex> sorted(n);
  for (std::size_t k = 0; k < n; ++k) sorted[k] = eig[order[k]];
  eig = std::move(sorted);
  kernel = static_cast<std::size_t>(std::count(eig.begin(), eig.end(), Complex(0.0)));
  return order;
}

double max_abs(const DenseMatrix& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

}  // namespace

SchattenExponent::SchattenExponent(double p) {
  if (std::isnan(p) || p < 1.0) throw InvalidArgument("Schatten exponent must lie in [1, inf]");
  if (std::isinf(p)) {
    inv_ = 0.0;
    conj_inv_ = 1.0;
  } else {
    inv_ = 1.0 / p;
    conj_inv_ = 1.0 - inv_;
  }
}

void require_square(const DenseMatrix& a, const char* what) {
  if (a.rows() < 1 || a.rows() != a.cols())
    throw InvalidArgument(std::string(what) + ": expected a non-empty square matrix");
}

void require_finite(const DenseMatrix& a, const char* what) {
  if (!a.allFinite()) throw InvalidArgument(std::string(what) + ": non-finite entries");
}

SingularSpectrum singular_values(const DenseMatrix& a) {
  SingularSpectrum out;
  if (a.size() == 0) return out;
  if (a.rows() == a.cols() && is_diagonal(a)) {
    out.values.resize(static_cast<std::size_t>(a.rows()));
    for (Eigen::Index k = 0; k < a.rows(); ++k) out.values[k] = std::abs(a(k, k));
  } else {
    Eigen::VectorXd s;
    if (std::min(a.rows(), a.cols()) <= 64) {
      Eigen::JacobiSVD<DenseMatrix> svd(a);
      if (svd.info() != Eigen::Success) throw NumericFailure("singular_values: SVD did not converge");
      s = svd.singularValues();
    } else {
      Eigen::BDCSVD<DenseMatrix> svd(a);
      if (svd.info() != Eigen::Success) throw NumericFailure("singular_values: SVD did not converge");
      s = svd.singularValues();
    }
    out.values.assign(s.data(), s.data() + s.size());
  }
  std::sort(out.values.begin(), out.values.end(), std::greater<>());
  return out;
}

double schatten_norm(const std::vector<double>& singular, const SchattenExponent& p) {
  if (singular.empty()) return 0.0;
  const double top = *std::max_element(singular.begin(), singular.end());
  if (p.is_infinite() || top == 0.0) return top;
  const double exponent = p.value();
  if (exponent == 1.0) return std::accumulate(singular.begin(), singular.end(), 0.0);
  // scaled by the top value so large exponents do not overflow
  double sum = 0.0;
  for (double s : singular) sum += std::pow(s / top, exponent);
  return top * std::pow(sum, p.reciprocal());
}

double schatten_norm(const DenseMatrix& a, const SchattenExponent& p) {
  return schatten_norm(singular_values(a).values, p);
}

double operator_norm(const DenseMatrix& a) {
  const auto s = singular_values(a).values;
  return s.empty() ? 0.0 : s.front();
}

Complex trace(const DenseMatrix& a) {
  require_square(a, "trace");
  return a.diagonal().sum();
}

Complex trace_of_product(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.rows() || a.rows() != b.cols())
    throw InvalidArgument("trace_of_product: incompatible dimensions");
  return a.transpose().cwiseProduct(b).sum();
}

EigenSeq modified_eigenseq(const DenseMatrix& a) {
  require_square(a, "modified_eigenseq");
  require_finite(a, "modified_eigenseq");
  EigenSeq seq;
  seq.values.resize(static_cast<std::size_t>(a.rows()));
  if (is_diagonal(a)) {
    for (Eigen::Index k = 0; k < a.rows(); ++k) seq.values[static_cast<std::size_t>(k)] = a(k, k);
  } else {
    Eigen::ComplexSchur<DenseMatrix> schur(a, /*computeU=*/false);
    if (schur.info() != Eigen::Success)
      throw NumericFailure("modified_eigenseq: Schur decomposition did not converge");
    for (Eigen::Index k = 0; k < a.rows(); ++k) seq.values[static_cast<std::size_t>(k)] = schur.matrixT()(k, k);
  }
  order_spectrum(seq.values, operator_norm(a), seq.kernel_padding);
  return seq;
}

bool is_hermitian(const DenseMatrix& a, double tol) {
  if (a.rows() != a.cols()) return false;
  return max_abs(a - a.adjoint()) <= tol * std::max(1.0, max_abs(a));
}

bool is_normal(const DenseMatrix& a, double tol) {
  if (a.rows() != a.cols()) return false;
  const DenseMatrix comm = a * a.adjoint() - a.adjoint() * a;
  const double scale = std::max(1.0, a.squaredNorm());
  return comm.norm() <= tol * scale;
}

bool is_unitary(const DenseMatrix& u, double tol) {
  if (u.rows() != u.cols() || u.rows() == 0) return false;
  const DenseMatrix gram = u.adjoint() * u - DenseMatrix::Identity(u.rows(), u.cols());
  return max_abs(gram) <= tol;
}

NormalDecomposition normal_decomposition(const DenseMatrix& a) {
  require_square(a, "normal_decomposition");
  require_finite(a, "normal_decomposition");
  if (!is_normal(a)) throw InvalidArgument("normal_decomposition: matrix is not normal");

  const Eigen::Index n = a.rows();
  std::vector<Complex> eig(static_cast<std::size_t>(n));
  DenseMatrix basis;
  if (is_diagonal(a)) {
    for (Eigen::Index k = 0; k < n; ++k) eig[k] = a(k, k);
    basis = DenseMatrix::Identity(n, n);
  } else {
    Eigen::ComplexSchur<DenseMatrix> schur(a, /*computeU=*/true);
    if (schur.info() != Eigen::Success)
      throw NumericFailure("normal_decomposition: Schur decomposition did not converge");
    for (Eigen::Index k = 0; k < n; ++k) eig[k] = schur.matrixT()(k, k);
    basis = schur.matrixU();
  }

  NormalDecomposition out;
  const auto order = order_spectrum(eig, operator_norm(a), out.seq.kernel_padding);
  out.seq.values = std::move(eig);
  out.vectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) out.vectors.col(k) = basis.col(static_cast<Eigen::Index>(order[k]));
  return out;
}

std::vector<double> hermitian_eigenvalues_desc(const DenseMatrix& a) {
  require_square(a, "hermitian_eigenvalues_desc");
  const DenseMatrix h = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<DenseMatrix> solver(h, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw NumericFailure("hermitian_eigenvalues_desc: eigensolver did not converge");
  const auto& ev = solver.eigenvalues();
  std::vector<double> out(static_cast<std::size_t>(ev.size()));
  for (Eigen::Index k = 0; k < ev.size(); ++k) out[static_cast<std::size_t>(k)] = ev(ev.size() - 1 - k);
  return out;
}

InequalityReport check_holder_trace(const DenseMatrix& c, const DenseMatrix& t,
                                    const SchattenExponent& p) {
  require_square(c, "check_holder_trace");
  require_square(t, "check_holder_trace");
  if (c.rows() != t.rows()) throw InvalidArgument("check_holder_trace: dimension mismatch");
  InequalityReport r;
  r.lhs = std::abs(trace_of_product(c, t));
  r.rhs = schatten_norm(c, p) * schatten_norm(t, p.conjugate());
  r.holds = r.lhs <= r.rhs + slack(1e-10, r.rhs);
  return r;
}

InequalityReport check_diagonal_domination(const DenseMatrix& t, const DenseMatrix& onb,
                                           std::size_t m) {
  require_square(t, "check_diagonal_domination");
  if (onb.rows() != t.rows()) throw InvalidArgument("check_diagonal_domination: basis dimension mismatch");
  if (m > static_cast<std::size_t>(onb.cols()))
    throw InvalidArgument("check_diagonal_domination: m exceeds the number of basis vectors");
  const DenseMatrix gram = onb.adjoint() * onb - DenseMatrix::Identity(onb.cols(), onb.cols());
  if (max_abs(gram) > 1e-10) throw InvalidArgument("check_diagonal_domination: basis is not orthonormal");

  const auto s = singular_values(t).values;
  InequalityReport r;
  for (std::size_t k = 0; k < m; ++k) {
    const auto e = onb.col(static_cast<Eigen::Index>(k));
    r.lhs += std::abs(e.dot(t * e));  // dot() conjugates the left operand
    if (k < s.size()) r.rhs += s[k];
  }
  r.holds = r.lhs <= r.rhs + slack(1e-10, r.rhs);
  return r;
}

InequalityReport check_ideal_bound(const DenseMatrix& s, const DenseMatrix& c,
                                   const DenseMatrix& t, const SchattenExponent& p) {
  if (s.cols() != c.rows() || c.cols() != t.rows())
    throw InvalidArgument("check_ideal_bound: incompatible dimensions");
  InequalityReport r;
  r.lhs = schatten_norm(DenseMatrix(s * c * t), p);
  r.rhs = operator_norm(s) * schatten_norm(c, p) * operator_norm(t);
  r.holds = r.lhs <= r.rhs + slack(1e-10, r.rhs);
  return r;
}

}  // namespace cnr
