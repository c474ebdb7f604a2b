#pragma once

#include <string>
#include <utility>
#include <vector>

#include "cnr/crange.hpp"
#include "cnr/operator_spec.hpp"

namespace cnr {

struct LadderConfig {
  std::vector<std::size_t> sizes{8, 16, 32, 64};
  SamplerConfig sampler;
  std::pair<std::string, std::string> basis_tags{"standard", "standard"};
};

// Throws InvalidArgument unless sizes are strictly increasing, even and >= 2,
// with at least two rungs.
void validate_ladder(const std::vector<std::size_t>& sizes);

// The largest rung stands in for the infinite-dimensional limit; the Cauchy
// tail is a diagnostic, not a certified rate.
struct ConvergenceReport {
  std::vector<std::size_t> sizes;
  std::vector<PointCloud> clouds;
  std::vector<double> pairwise_hausdorff;
  std::vector<Complex> star_centers;
  double center_decay = 0.0;  // least-squares slope of log|center| against log n
  double cauchy_tail = 0.0;
};

// Throws AdmissionError unless C is in its declared class p and T in the
// conjugate class q.
void require_conjugate_admission(const OperatorSpec& c, const OperatorSpec& t);

ConvergenceReport run_range_ladder(const OperatorSpec& c, const OperatorSpec& t, const LadderConfig& cfg);

// Exact C-spectrum ladder for two diagonal specs; sizes <= 9.
ConvergenceReport run_spectrum_ladder(const OperatorSpec& c, const OperatorSpec& t,
                                      const std::vector<std::size_t>& sizes);

struct CenterDecayReport {
  std::vector<std::size_t> sizes;
  std::vector<double> values;  // |n^{-1/q} sum_{k<=n} c_kk|
  double threshold = 0.0;
  bool monotone_tail = false;  // nonincreasing over the final half
  bool holds = false;          // final value below threshold
};

CenterDecayReport check_center_decay(const OperatorSpec& c, const SchattenExponent& q,
                                     const std::vector<std::size_t>& sizes, double threshold);

struct ProjectionReport {
  std::size_t master = 0;
  std::vector<std::size_t> sizes;
  std::vector<double> tails;  // nu_p(C_m - P_n C_m P_n)
  bool monotone = false;
  bool holds = false;
};

// Master truncation size 4 * max(sizes) (the full dimension for dense specs).
ProjectionReport check_projection_convergence(const OperatorSpec& c, const SchattenExponent& p,
                                              const std::vector<std::size_t>& sizes);

struct TraceFunctionalReport {
  std::size_t master = 0;
  std::vector<std::size_t> sizes;
  std::vector<double> errors;  // |tr(C_m P_n T_m P_n) - tr(C_m T_m)|
  std::vector<double> bounds;  // nu_p(C_m - P_n C_m P_n) nu_q(T_m)
  bool holds = false;
};

TraceFunctionalReport check_trace_functional_convergence(const OperatorSpec& c, const OperatorSpec& t,
                                                         const std::vector<std::size_t>& sizes);

}  // namespace cnr
