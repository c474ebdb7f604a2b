#pragma once

#include <string>
#include <variant>
#include <vector>

#include "cnr/opcore.hpp"

namespace cnr {

// Phase attached to the k-th term (k = 1, 2, ...) of a diagonal decay law.
struct PhasePattern {
  enum class Kind { constant, alternating, periodic };
  Kind kind = Kind::constant;
  // constant: {phi} (empty means phi = 0); alternating: optional base {phi};
  // periodic: the angle list, cycled.
  std::vector<double> angles;

  Complex at(std::size_t k) const;
};

struct PowerLaw {
  double alpha = 1.0;  // |d_k| = k^{-alpha}
  PhasePattern phase;
};

struct GeometricLaw {
  Complex ratio;  // d_k = ratio^k
};

struct ExplicitLaw {
  std::vector<Complex> values;  // zero beyond the list
};

using DecayLaw = std::variant<PowerLaw, GeometricLaw, ExplicitLaw>;

// Declarative Schatten-class operator: a finite dense matrix, or a diagonal
// operator in the standard basis whose entries follow a decay law.
struct OperatorSpec {
  enum class Kind { dense, diagonal };
  Kind kind = Kind::diagonal;
  DenseMatrix entries;  // dense only
  DecayLaw law;         // diagonal only
  SchattenExponent class_p{1.0};

  static OperatorSpec dense(DenseMatrix m, SchattenExponent p = SchattenExponent(1.0));
  static OperatorSpec diagonal(DecayLaw law, SchattenExponent p);

  // Dimension of a dense spec; 0 for the infinite diagonal family.
  std::size_t dimension() const;

  // k-th diagonal value, k = 1, 2, ... (diagonal specs only).
  Complex diagonal_value(std::size_t k) const;
  std::vector<Complex> diagonal_values(std::size_t n) const;

  // True when the operator has finite Schatten-p norm.
  bool admits(const SchattenExponent& p) const;
};

// Throws ParseError on malformed documents.
OperatorSpec parse_operator_spec(const std::string& json_text);
OperatorSpec load_operator_spec(const std::string& path);
std::string to_json(const OperatorSpec& spec);

// Leading n x n block of the operator's matrix in the basis named by `basis_tag`:
//   "standard"               the defining basis
//   "haar:<seed>"            dense specs, conjugated V^H A V by a seeded Haar V
//   "haar:<seed>:<master>"   diagonal specs, master truncation conjugated first
DenseMatrix truncate(const OperatorSpec& spec, const std::string& basis_tag, std::size_t n);

}  // namespace cnr
