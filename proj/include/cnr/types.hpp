#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace cnr {

using Complex = std::complex<double>;

// Working representation of a truncated operator. Square in every public
// entry point unless a function states otherwise.
using DenseMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

// Precondition or argument violation (dimension mismatch, non-unitary input,
// wrong structure such as a non-Hermitian matrix where one is required).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A decomposition or iteration that did not converge.
class NumericFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An operator description is not a member of the requested Schatten class.
class AdmissionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed operator description or data file.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// tol * (1 + scale): the uniform slack used by every checker.
inline double slack(double tol, double scale) { return tol * (1.0 + scale); }

}  // namespace cnr
