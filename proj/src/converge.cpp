#include "cnr/converge.hpp"

#include <algorithm>
#include <cmath>

namespace cnr {

namespace {

constexpr std::size_t kMasterFactor = 4;

void require_increasing(const std::vector<std::size_t>& sizes, const char* what) {
  if (sizes.size() < 2) throw InvalidArgument(std::string(what) + ": need at least two sizes");
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (sizes[i] < 1) throw InvalidArgument(std::string(what) + ": sizes must be >= 1");
    if (i > 0 && sizes[i] <= sizes[i - 1]) throw InvalidArgument(std::string(what) + ": sizes must increase strictly");
  }
}

double fit_log_slope(const std::vector<std::size_t>& sizes, const std::vector<Complex>& centers) {
  std::vector<double> x, y;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    const double mod = std::abs(centers[i]);
    if (mod > 0.0) {
      x.push_back(std::log(static_cast<double>(sizes[i])));
      y.push_back(std::log(mod));
    }
  }
  if (x.size() < 2) return 0.0;
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxx > 0.0 ? sxy / sxx : 0.0;
}

// Finite master representation in the standard basis: a diagonal vector when
// possible, otherwise a dense matrix.
struct Master {
  bool diagonal = false;
  ComplexVector diag;
  DenseMatrix dense;
  std::size_t size = 0;
};

Master master_of(const OperatorSpec& spec, std::size_t size) {
  Master m;
  m.size = size;
  if (spec.kind == OperatorSpec::Kind::diagonal) {
    m.diagonal = true;
    const auto d = spec.diagonal_values(size);
    m.diag = Eigen::Map<const ComplexVector>(d.data(), static_cast<Eigen::Index>(d.size()));
  } else {
    m.dense = truncate(spec, "standard", size);
  }
  return m;
}

std::size_t master_size(std::initializer_list<const OperatorSpec*> specs, std::size_t largest) {
  std::size_t dense_dim = 0;
  for (const auto* s : specs) {
    if (s->kind != OperatorSpec::Kind::dense) continue;
    if (dense_dim != 0 && s->dimension() != dense_dim) throw InvalidArgument("dense operators differ in dimension");
    dense_dim = s->dimension();
  }
  if (dense_dim == 0) return kMasterFactor * largest;
  if (largest > dense_dim) throw InvalidArgument("ladder size exceeds the dense operator's dimension");
  return dense_dim;
}

// Singular values of A_m - P_n A_m P_n.
std::vector<double> complement_singular_values(const Master& m, std::size_t n) {
  if (m.diagonal) {
    std::vector<double> s;
    for (std::size_t k = n; k < m.size; ++k) s.push_back(std::abs(m.diag(static_cast<Eigen::Index>(k))));
    return s;
  }
  DenseMatrix diff = m.dense;
  const auto b = static_cast<Eigen::Index>(n);
  diff.topLeftCorner(b, b).setZero();
  return singular_values(diff).values;
}

std::vector<double> all_singular_values(const Master& m) {
  if (m.diagonal) {
    std::vector<double> s(m.size);
    for (std::size_t k = 0; k < m.size; ++k) s[k] = std::abs(m.diag(static_cast<Eigen::Index>(k)));
    return s;
  }
  return singular_values(m.dense).values;
}

// tr(P_n C P_n T), i.e. the trace of the product of the leading n x n blocks.
Complex leading_block_trace(const Master& c, const Master& t, std::size_t n) {
  const auto b = static_cast<Eigen::Index>(n);
  if (c.diagonal && t.diagonal) return c.diag.head(b).cwiseProduct(t.diag.head(b)).sum();
  const DenseMatrix cb = c.diagonal ? DenseMatrix(c.diag.head(b).asDiagonal()) : DenseMatrix(c.dense.topLeftCorner(b, b));
  const DenseMatrix tb = t.diagonal ? DenseMatrix(t.diag.head(b).asDiagonal()) : DenseMatrix(t.dense.topLeftCorner(b, b));
  return trace_of_product(cb, tb);
}

}  // namespace

void validate_ladder(const std::vector<std::size_t>& sizes) {
  require_increasing(sizes, "ladder");
  for (auto n : sizes)
    if (n < 2 || n % 2 != 0)
      throw InvalidArgument("ladder sizes must be even (truncations [A]_{2n}), got " + std::to_string(n));
}

void require_conjugate_admission(const OperatorSpec& c, const OperatorSpec& t) {
  if (!c.admits(c.class_p)) throw AdmissionError("C is not in its declared Schatten class");
  if (!t.admits(c.class_p.conjugate())) throw AdmissionError("T is not in the Schatten class conjugate to C's");
}

ConvergenceReport run_range_ladder(const OperatorSpec& c, const OperatorSpec& t, const LadderConfig& cfg) {
  validate_ladder(cfg.sizes);
  require_conjugate_admission(c, t);

  ConvergenceReport r;
  r.sizes = cfg.sizes;
  for (auto n : cfg.sizes) {
    const DenseMatrix cn = truncate(c, cfg.basis_tags.first, n);
    const DenseMatrix tn = truncate(t, cfg.basis_tags.second, n);
    r.clouds.push_back(sample_wc(cn, tn, cfg.sampler));
    r.star_centers.push_back(star_center(cn, tn));
  }
  const auto limit = set_sequence_limit(r.clouds);
  r.pairwise_hausdorff = limit.pairwise;
  r.cauchy_tail = limit.cauchy_tail;
  r.center_decay = fit_log_slope(r.sizes, r.star_centers);
  return r;
}

ConvergenceReport run_spectrum_ladder(const OperatorSpec& c, const OperatorSpec& t,
                                      const std::vector<std::size_t>& sizes) {
  if (c.kind != OperatorSpec::Kind::diagonal || t.kind != OperatorSpec::Kind::diagonal)
    throw InvalidArgument("run_spectrum_ladder: both operators must be diagonal");
  require_increasing(sizes, "run_spectrum_ladder");
  if (sizes.back() > kMaxExactSpectrum) throw InvalidArgument("run_spectrum_ladder: sizes must be <= 9");
  require_conjugate_admission(c, t);

  ConvergenceReport r;
  r.sizes = sizes;
  for (auto n : sizes) {
    const DenseMatrix cn = truncate(c, "standard", n);
    const DenseMatrix tn = truncate(t, "standard", n);
    r.clouds.push_back(c_spectrum_exact(modified_eigenseq(cn), modified_eigenseq(tn)));
    r.star_centers.push_back(star_center(cn, tn));
  }
  const auto limit = set_sequence_limit(r.clouds);
  r.pairwise_hausdorff = limit.pairwise;
  r.cauchy_tail = limit.cauchy_tail;
  r.center_decay = fit_log_slope(r.sizes, r.star_centers);
  return r;
}

CenterDecayReport check_center_decay(const OperatorSpec& c, const SchattenExponent& q,
                                     const std::vector<std::size_t>& sizes, double threshold) {
  if (q.is_infinite()) throw InvalidArgument("check_center_decay: needs p > 1, i.e. q < inf");
  if (c.kind != OperatorSpec::Kind::diagonal) throw InvalidArgument("check_center_decay: C must be diagonal");
  require_increasing(sizes, "check_center_decay");
  if (!c.admits(q.conjugate())) throw AdmissionError("check_center_decay: C is not in the class conjugate to q");

  CenterDecayReport r;
  r.sizes = sizes;
  r.threshold = threshold;
  Complex partial = 0.0;
  std::size_t k = 0;
  for (auto n : sizes) {
    while (k < n) partial += c.diagonal_value(++k);
    r.values.push_back(std::abs(partial) * std::pow(static_cast<double>(n), -q.reciprocal()));
  }
  r.monotone_tail = true;
  for (std::size_t i = r.values.size() / 2; i + 1 < r.values.size(); ++i)
    if (r.values[i + 1] > r.values[i]) r.monotone_tail = false;
  r.holds = r.values.back() < threshold;
  return r;
}

ProjectionReport check_projection_convergence(const OperatorSpec& c, const SchattenExponent& p,
                                              const std::vector<std::size_t>& sizes) {
  require_increasing(sizes, "check_projection_convergence");
  if (!c.admits(p)) throw AdmissionError("check_projection_convergence: C is not in class p");
  ProjectionReport r;
  r.sizes = sizes;
  r.master = master_size({&c}, sizes.back());
  const Master m = master_of(c, r.master);
  for (auto n : sizes) r.tails.push_back(schatten_norm(complement_singular_values(m, n), p));
  r.monotone = true;
  for (std::size_t i = 0; i + 1 < r.tails.size(); ++i)
    if (r.tails[i + 1] > r.tails[i] + slack(1e-12, r.tails[i])) r.monotone = false;
  r.holds = r.monotone;
  return r;
}

TraceFunctionalReport check_trace_functional_convergence(const OperatorSpec& c, const OperatorSpec& t,
                                                         const std::vector<std::size_t>& sizes) {
  require_increasing(sizes, "check_trace_functional_convergence");
  require_conjugate_admission(c, t);
  TraceFunctionalReport r;
  r.sizes = sizes;
  r.master = master_size({&c, &t}, sizes.back());
  const Master cm = master_of(c, r.master);
  const Master tm = master_of(t, r.master);
  const Complex full = leading_block_trace(cm, tm, r.master);
  const double t_norm = schatten_norm(all_singular_values(tm), c.class_p.conjugate());
  r.holds = true;
  for (auto n : sizes) {
    const double err = std::abs(leading_block_trace(cm, tm, n) - full);
    const double bound = schatten_norm(complement_singular_values(cm, n), c.class_p) * t_norm;
    r.errors.push_back(err);
    r.bounds.push_back(bound);
    if (err > bound + slack(1e-10, bound)) r.holds = false;
  }
  return r;
}

}  // namespace cnr
