#pragma once

#include <cstdint>
#include <vector>

#include "cnr/haar.hpp"
#include "cnr/opcore.hpp"
#include "cnr/setgeom.hpp"

namespace cnr {

struct AscentConfig {
  bool enabled = false;
  int directions = 64;
  int max_iters = 500;
  // Initial step of the backtracking search, in units of 1 / (||C|| ||T||).
  double step_init = 1.0;
};

struct SamplerConfig {
  std::size_t sample_count = 2000;
  std::uint64_t seed = 0;
  AscentConfig ascent;
};

// Finite permutation sigma of {0..n-1}, image[k] = sigma(k).
struct Permutation {
  std::vector<std::size_t> image;
  bool is_bijection() const;
  // Matrix with P e_k = e_{sigma(k)}.
  DenseMatrix matrix() const;
};

// tr(C U^H T U). Validates dimensions and unitarity of U (1e-10).
Complex wc_point(const DenseMatrix& c, const DenseMatrix& t, const DenseMatrix& u);

// Haar samples of the C-numerical range. When cfg.ascent.enabled, each ascent
// direction also contributes its whole trajectory, which runs from the Haar
// bulk out to the boundary. Sample k uses substream (seed, k); ascent
// direction d uses substream (seed, sample_count + d).
PointCloud sample_wc(const DenseMatrix& c, const DenseMatrix& t, const SamplerConfig& cfg);

// h(theta) = max_U Re(e^{-i theta} tr(C U^H T U)) for Hermitian C, computed as
// sum_k lambda_k(C) lambda_k(Re(e^{-i theta} T)) with both in decreasing order.
double support_function_hermitian(const DenseMatrix& c, const DenseMatrix& t, double theta);

// A point of W_C(T) attaining support_function_hermitian at theta.
Complex support_point_hermitian(const DenseMatrix& c, const DenseMatrix& t, double theta);

struct RefineResult {
  Complex point;
  double objective = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<double> history;  // objective after each accepted step, starting value first
  std::vector<Complex> path;     // W point after each accepted step, starting point first
};

// Riemannian ascent of f(U) = Re(e^{-i theta} tr(C U^H T U)) over U <- U exp(s G),
// G the skew-Hermitian gradient, with Armijo backtracking (at most 40 halvings).
// The first trial step is step_init / (||C|| ||T||); later searches start from
// twice the last accepted step.
// Starts from the best of a handful of Haar draws from `rng`.
RefineResult refine_support(const DenseMatrix& c, const DenseMatrix& t, double theta,
                            const SamplerConfig& cfg, Rng& rng);

// tr(C) tr(T) / n, the finite-dimensional star center.
Complex star_center(const DenseMatrix& c, const DenseMatrix& t);

struct SpectrumPoint {
  Complex value;
  Permutation sigma;
};

constexpr std::size_t kMaxExactSpectrum = 9;

// Every sum_k gamma_k tau_{sigma(k)}, one entry per permutation (no dedup).
std::vector<SpectrumPoint> enumerate_c_spectrum(const EigenSeq& c_seq, const EigenSeq& t_seq);

// The C-spectrum of a finite pair, deduplicated within 1e-12.
PointCloud c_spectrum_exact(const EigenSeq& c_seq, const EigenSeq& t_seq);

// Random-permutation sample of the C-spectrum.
PointCloud c_spectrum_sample(const EigenSeq& c_seq, const EigenSeq& t_seq, const SamplerConfig& cfg);

// sum_k |gamma_k| |tau_k| with both sorted by decreasing modulus; bounds every
// C-spectrum value in modulus.
double rearrangement_bound(const EigenSeq& c_seq, const EigenSeq& t_seq);

struct InclusionReport {
  double witness_max_error = 0.0;      // max |tr(C U_P^H T U_P) - spectrum value|
  double max_outward_distance = 0.0;   // of W samples from hull(spectrum)
  std::size_t spectrum_points = 0;
  std::size_t samples = 0;
  bool first_inclusion = false;
  bool second_inclusion = false;
  bool holds = false;
};

// P_C(T) in W_C(T) via permutation witnesses, W_C(T) in conv(P_C(T)) via
// sampled points. Both matrices must be normal.
InclusionReport check_inclusion_chain(const DenseMatrix& c, const DenseMatrix& t,
                                      const SamplerConfig& cfg, double tol);

struct Collinearity {
  bool collinear = false;
  double phase = 0.0;     // e^{i phase} * eigenvalues are real
  double residual = 0.0;  // max distance of an eigenvalue from the fitted line
  double offset = 0.0;    // distance of the fitted line from the origin
};

// Total-least-squares line through the points; collinear when both residual
// and offset are <= 1e-10 * max(1, max |z|).
Collinearity detect_collinearity(std::span<const Complex> values);

struct ConvexityReport {
  double phase = 0.0;
  std::vector<double> angles;
  std::vector<double> exact_support;    // h(theta) at each angle
  std::vector<double> sampled_support;  // max over the cloud of Re(e^{-i theta} z)
  double gap = 0.0;                     // Hausdorff distance of the two hulls
  double diameter = 0.0;                // of the exact support polygon
  bool holds = false;
};

// C normal with eigenvalues on a line through 0. Compares hull(sample_wc) with
// the polygon through the exact support points at `angles` uniform angles.
ConvexityReport check_convexity_collinear(const DenseMatrix& c, const DenseMatrix& t,
                                          const SamplerConfig& cfg, int angles = 64);

}  // namespace cnr
