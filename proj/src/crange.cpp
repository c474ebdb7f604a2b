#include "cnr/crange.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include <Eigen/Eigenvalues>

#include "cnr/parallel.hpp"

namespace cnr {

namespace {

constexpr int kAscentStarts = 8;
constexpr int kMaxHalvings = 40;
constexpr double kArmijo = 1e-4;
constexpr double kDedupTol = 1e-12;
// Recorded ascent paths get a point at least every 1% of ||C|| ||T||.
constexpr double kPathResolution = 0.01;
constexpr int kMaxPathPieces = 16;

void require_pair(const DenseMatrix& c, const DenseMatrix& t, const char* what) {
  require_square(c, what);
  require_square(t, what);
  if (c.rows() != t.rows()) throw InvalidArgument(std::string(what) + ": dimension mismatch");
}

bool diagonal_matrix(const DenseMatrix& a) {
  return (a - DenseMatrix(a.diagonal().asDiagonal())).cwiseAbs().maxCoeff() == 0.0;
}

// tr(C U^H T U) without validation.
Complex orbit_value(const DenseMatrix& c, const DenseMatrix& t, const DenseMatrix& u) {
  const DenseMatrix m = u.adjoint() * t * u;
  return trace_of_product(c, m);
}

// Both factors diagonal: tr(C U^H T U) = sum_{j,k} c_k t_j |u_jk|^2.
Complex orbit_value_diagonal(const ComplexVector& c, const ComplexVector& t, const DenseMatrix& u) {
  Complex sum = 0.0;
  for (Eigen::Index k = 0; k < u.cols(); ++k) {
    Complex col = 0.0;
    for (Eigen::Index j = 0; j < u.rows(); ++j) col += t(j) * std::norm(u(j, k));
    sum += c(k) * col;
  }
  return sum;
}

struct HermitianEigen {
  Eigen::VectorXd values;  // decreasing
  DenseMatrix vectors;     // matching columns
};

HermitianEigen hermitian_eigen_desc(const DenseMatrix& h) {
  Eigen::SelfAdjointEigenSolver<DenseMatrix> solver(0.5 * (h + h.adjoint()));
  if (solver.info() != Eigen::Success) throw NumericFailure("Hermitian eigensolver did not converge");
  HermitianEigen out;
  out.values = solver.eigenvalues().reverse();
  out.vectors = solver.eigenvectors().rowwise().reverse();
  return out;
}

DenseMatrix real_part_rotated(const DenseMatrix& t, double theta) {
  const Complex rot = std::polar(1.0, -theta);
  return 0.5 * (rot * t + std::conj(rot) * t.adjoint());
}

void require_hermitian(const DenseMatrix& c, const char* what) {
  if (!is_hermitian(c)) throw InvalidArgument(std::string(what) + ": C must be Hermitian");
}

// exp(s G) for skew-Hermitian G = -i H, from the eigendecomposition of H.
DenseMatrix skew_exponential(const HermitianEigen& h, double s) {
  ComplexVector phases(h.values.size());
  for (Eigen::Index k = 0; k < h.values.size(); ++k) phases(k) = std::polar(1.0, -s * h.values(k));
  return h.vectors * phases.asDiagonal() * h.vectors.adjoint();
}

std::vector<Complex> dedup(std::vector<Complex> values, double tol) {
  std::sort(values.begin(), values.end(), [](Complex a, Complex b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  std::vector<Complex> kept;
  for (const auto& z : values) {
    bool dup = false;
    for (auto it = kept.rbegin(); it != kept.rend() && it->real() >= z.real() - tol; ++it) {
      if (std::abs(*it - z) <= tol) {
        dup = true;
        break;
      }
    }
    if (!dup) kept.push_back(z);
  }
  return kept;
}

void require_same_length(const EigenSeq& a, const EigenSeq& b, const char* what) {
  if (a.values.size() != b.values.size() || a.values.empty())
    throw InvalidArgument(std::string(what) + ": sequences must have equal, non-zero length");
}

}  // namespace

bool Permutation::is_bijection() const {
  std::vector<std::size_t> sorted = image;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t k = 0; k < sorted.size(); ++k)
    if (sorted[k] != k) return false;
  return true;
}

DenseMatrix Permutation::matrix() const {
  const auto n = static_cast<Eigen::Index>(image.size());
  DenseMatrix p = DenseMatrix::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) p(static_cast<Eigen::Index>(image[static_cast<std::size_t>(k)]), k) = 1.0;
  return p;
}

Complex wc_point(const DenseMatrix& c, const DenseMatrix& t, const DenseMatrix& u) {
  require_pair(c, t, "wc_point");
  if (u.rows() != c.rows() || u.cols() != c.cols()) throw InvalidArgument("wc_point: U has the wrong dimension");
  if (!is_unitary(u)) throw InvalidArgument("wc_point: U is not unitary");
  return orbit_value(c, t, u);
}

PointCloud sample_wc(const DenseMatrix& c, const DenseMatrix& t, const SamplerConfig& cfg) {
  require_pair(c, t, "sample_wc");
  const int n = static_cast<int>(c.rows());
  const bool diagonal = diagonal_matrix(c) && diagonal_matrix(t);
  const ComplexVector cd = c.diagonal();
  const ComplexVector td = t.diagonal();

  const std::size_t directions =
      cfg.ascent.enabled ? static_cast<std::size_t>(std::max(0, cfg.ascent.directions)) : 0;
  PointCloud cloud;
  cloud.points.resize(cfg.sample_count);
  cloud.meta.source = CloudMeta::Source::sampled;
  cloud.meta.sample_count = cfg.sample_count;
  cloud.meta.seed = cfg.seed;

  parallel_for(cfg.sample_count, [&](std::size_t k) {
    Rng rng(cfg.seed, k);
    const DenseMatrix u = haar_unitary(n, rng);
    cloud.points[k] = diagonal ? orbit_value_diagonal(cd, td, u) : orbit_value(c, t, u);
  });
  std::vector<std::vector<Complex>> paths(directions);
  parallel_for(directions, [&](std::size_t d) {
    Rng rng(cfg.seed, cfg.sample_count + d);
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(d) / static_cast<double>(directions);
    paths[d] = refine_support(c, t, theta, cfg, rng).path;
  });
  // Haar mass concentrates near the center as n grows; the trajectories keep
  // the band between the bulk and the boundary populated.
  for (const auto& p : paths) cloud.points.insert(cloud.points.end(), p.begin(), p.end());
  return cloud;
}

double support_function_hermitian(const DenseMatrix& c, const DenseMatrix& t, double theta) {
  require_pair(c, t, "support_function_hermitian");
  require_hermitian(c, "support_function_hermitian");
  const auto cv = hermitian_eigenvalues_desc(c);
  const auto hv = hermitian_eigenvalues_desc(real_part_rotated(t, theta));
  return std::inner_product(cv.begin(), cv.end(), hv.begin(), 0.0);
}

Complex support_point_hermitian(const DenseMatrix& c, const DenseMatrix& t, double theta) {
  require_pair(c, t, "support_point_hermitian");
  require_hermitian(c, "support_point_hermitian");
  const auto ce = hermitian_eigen_desc(c);
  const auto he = hermitian_eigen_desc(real_part_rotated(t, theta));
  // U^H H U = V diag(h) V^H aligns the eigenvectors of H with those of C
  const DenseMatrix u = he.vectors * ce.vectors.adjoint();
  return orbit_value(c, t, u);
}

RefineResult refine_support(const DenseMatrix& c, const DenseMatrix& t, double theta,
                            const SamplerConfig& cfg, Rng& rng) {
  require_pair(c, t, "refine_support");
  const int n = static_cast<int>(c.rows());
  const Complex rot = std::polar(1.0, -std::fmod(theta, 2.0 * std::numbers::pi));
  const double scale = operator_norm(c) * operator_norm(t);
  auto objective = [&](const DenseMatrix& m) { return (rot * trace_of_product(c, m)).real(); };

  DenseMatrix u;
  DenseMatrix m;
  double f = -std::numeric_limits<double>::infinity();
  for (int s = 0; s < kAscentStarts; ++s) {
    DenseMatrix cand = haar_unitary(n, rng);
    DenseMatrix cm = cand.adjoint() * t * cand;
    const double cf = objective(cm);
    if (cf > f) {
      f = cf;
      u = std::move(cand);
      m = std::move(cm);
    }
  }

  RefineResult out;
  out.history.push_back(f);
  out.path.push_back(trace_of_product(c, m));
  if (scale == 0.0) {
    out.converged = true;
  } else {
    const double step0 = cfg.ascent.step_init / scale;
    const double gtol = 1e-8 * scale;
    const int restart = std::max(1, n * n);  // dimension of the Lie algebra
    double trial = step0;
    DenseMatrix g_prev, d;
    for (int it = 0; it < cfg.ascent.max_iters; ++it) {
      const DenseMatrix k = rot * (c * m - m * c);
      const DenseMatrix g = 0.5 * (k.adjoint() - k);
      const double gnorm2 = g.squaredNorm();
      if (std::sqrt(gnorm2) <= gtol) {
        out.converged = true;
        break;
      }
      // Polak-Ribiere+ in the Lie algebra at U. The previous direction is
      // unchanged by its own transport, and g_prev has been transported.
      if (it % restart == 0) {
        d = g;
      } else {
        const double beta = std::max(0.0, ((g - g_prev).cwiseProduct(g.conjugate())).sum().real() / g_prev.squaredNorm());
        d = g + beta * d;
        if ((d.cwiseProduct(g.conjugate())).sum().real() <= 0.0) d = g;
      }
      const double slope = (d.cwiseProduct(g.conjugate())).sum().real();
      const DenseMatrix h = Complex(0.0, 1.0) * d;  // Hermitian, d = -i h
      const auto he = hermitian_eigen_desc(h);
      auto probe = [&](double sp, DenseMatrix& e_out, DenseMatrix& m_out) {
        e_out = skew_exponential(he, sp);
        m_out = e_out.adjoint() * m * e_out;
        return objective(m_out);
      };
      auto armijo = [&](double sp, double value) { return value >= f + kArmijo * sp * slope; };

      double step = trial;
      DenseMatrix e, next_m;
      double next_f = probe(step, e, next_m);
      bool accepted = armijo(step, next_f);
      // quadratic model along the geodesic; its maximiser is usually a far
      // better step than the raw trial, which keeps CG from zig-zagging
      const double kappa = 2.0 * (next_f - f - slope * step) / (step * step);
      if (kappa < 0.0) {
        const double model_step = std::clamp(-slope / kappa, step / 16.0, step * 16.0);
        DenseMatrix e2, m2;
        const double f2 = probe(model_step, e2, m2);
        if (armijo(model_step, f2) && (!accepted || f2 > next_f)) {
          step = model_step;
          e = std::move(e2);
          next_m = std::move(m2);
          next_f = f2;
          accepted = true;
        }
      }
      for (int halving = 1; !accepted && halving <= kMaxHalvings; ++halving) {
        step *= 0.5;
        next_f = probe(step, e, next_m);
        accepted = armijo(step, next_f);
      }
      if (accepted) {
        // long moves are filled in along the same geodesic
        const Complex from = out.path.back();
        const Complex to = trace_of_product(c, next_m);
        const int pieces = std::min(kMaxPathPieces, static_cast<int>(std::ceil(std::abs(to - from) / (kPathResolution * scale))));
        for (int j = 1; j < pieces; ++j) {
          const DenseMatrix mid = skew_exponential(he, step * j / pieces);
          out.path.push_back(trace_of_product(c, DenseMatrix(mid.adjoint() * m * mid)));
        }
        u = u * e;
        m = std::move(next_m);
        f = next_f;
        trial = 2.0 * step;
      }
      ++out.iterations;
      if (!accepted) {
        // no ascent left at working precision
        out.converged = std::sqrt(gnorm2) <= 1e-6 * scale;
        break;
      }
      g_prev = e.adjoint() * g * e;
      out.history.push_back(f);
      out.path.push_back(trace_of_product(c, m));
    }
  }
  out.objective = f;
  out.point = trace_of_product(c, m);
  return out;
}

Complex star_center(const DenseMatrix& c, const DenseMatrix& t) {
  require_pair(c, t, "star_center");
  return trace(c) * trace(t) / static_cast<double>(c.rows());
}

std::vector<SpectrumPoint> enumerate_c_spectrum(const EigenSeq& c_seq, const EigenSeq& t_seq) {
  require_same_length(c_seq, t_seq, "enumerate_c_spectrum");
  const std::size_t n = c_seq.values.size();
  if (n > kMaxExactSpectrum) throw InvalidArgument("enumerate_c_spectrum: n > 9, use c_spectrum_sample");
  std::vector<std::size_t> sigma(n);
  std::iota(sigma.begin(), sigma.end(), 0);
  std::vector<SpectrumPoint> out;
  do {
    Complex sum = 0.0;
    for (std::size_t k = 0; k < n; ++k) sum += c_seq.values[k] * t_seq.values[sigma[k]];
    out.push_back({sum, Permutation{sigma}});
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return out;
}

PointCloud c_spectrum_exact(const EigenSeq& c_seq, const EigenSeq& t_seq) {
  const auto all = enumerate_c_spectrum(c_seq, t_seq);
  std::vector<Complex> values;
  values.reserve(all.size());
  for (const auto& p : all) values.push_back(p.value);
  PointCloud cloud;
  cloud.points = dedup(std::move(values), kDedupTol);
  cloud.meta.source = CloudMeta::Source::exact;
  cloud.meta.sample_count = all.size();
  return cloud;
}

PointCloud c_spectrum_sample(const EigenSeq& c_seq, const EigenSeq& t_seq, const SamplerConfig& cfg) {
  require_same_length(c_seq, t_seq, "c_spectrum_sample");
  const std::size_t n = c_seq.values.size();
  PointCloud cloud;
  cloud.points.resize(cfg.sample_count);
  cloud.meta.source = CloudMeta::Source::sampled;
  cloud.meta.sample_count = cfg.sample_count;
  cloud.meta.seed = cfg.seed;
  parallel_for(cfg.sample_count, [&](std::size_t s) {
    Rng rng(cfg.seed, s);
    std::vector<std::size_t> sigma(n);
    std::iota(sigma.begin(), sigma.end(), 0);
    std::shuffle(sigma.begin(), sigma.end(), rng.engine());
    Complex sum = 0.0;
    for (std::size_t k = 0; k < n; ++k) sum += c_seq.values[k] * t_seq.values[sigma[k]];
    cloud.points[s] = sum;
  });
  return cloud;
}

double rearrangement_bound(const EigenSeq& c_seq, const EigenSeq& t_seq) {
  std::vector<double> a, b;
  for (auto z : c_seq.values) a.push_back(std::abs(z));
  for (auto z : t_seq.values) b.push_back(std::abs(z));
  std::sort(a.begin(), a.end(), std::greater<>());
  std::sort(b.begin(), b.end(), std::greater<>());
  double sum = 0.0;
  for (std::size_t k = 0; k < std::min(a.size(), b.size()); ++k) sum += a[k] * b[k];
  return sum;
}

InclusionReport check_inclusion_chain(const DenseMatrix& c, const DenseMatrix& t,
                                      const SamplerConfig& cfg, double tol) {
  require_pair(c, t, "check_inclusion_chain");
  if (static_cast<std::size_t>(c.rows()) > kMaxExactSpectrum)
    throw InvalidArgument("check_inclusion_chain: dimension must be <= 9");
  const auto cd = normal_decomposition(c);
  const auto td = normal_decomposition(t);

  InclusionReport r;
  const auto points = enumerate_c_spectrum(cd.seq, td.seq);
  const double scale = rearrangement_bound(cd.seq, td.seq);
  std::vector<double> errors(points.size());
  parallel_for(points.size(), [&](std::size_t i) {
    // U = Q_T P Q_C^H maps the C eigenbasis onto the permuted T eigenbasis
    const DenseMatrix u = td.vectors * points[i].sigma.matrix() * cd.vectors.adjoint();
    errors[i] = std::abs(orbit_value(c, t, u) - points[i].value);
  });
  r.witness_max_error = *std::max_element(errors.begin(), errors.end());
  r.first_inclusion = r.witness_max_error <= slack(1e-12, scale);

  const auto spectrum = c_spectrum_exact(cd.seq, td.seq);
  r.spectrum_points = spectrum.points.size();
  const auto hull = convex_hull(spectrum);
  const auto cloud = sample_wc(c, t, cfg);
  r.samples = cloud.points.size();
  for (const auto& z : cloud.points) r.max_outward_distance = std::max(r.max_outward_distance, polygon_distance(hull, z));
  r.second_inclusion = r.max_outward_distance <= tol;
  r.holds = r.first_inclusion && r.second_inclusion;
  return r;
}

Collinearity detect_collinearity(std::span<const Complex> values) {
  Collinearity out;
  if (values.empty()) {
    out.collinear = true;
    return out;
  }
  double scale = 1.0;
  Complex centroid = 0.0;
  for (auto z : values) {
    scale = std::max(scale, std::abs(z));
    centroid += z;
  }
  centroid /= static_cast<double>(values.size());

  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (auto z : values) {
    const Complex d = z - centroid;
    sxx += d.real() * d.real();
    sxy += d.real() * d.imag();
    syy += d.imag() * d.imag();
  }
  Complex dir;
  if (sxx + syy > 0.0) {
    // principal axis of the 2x2 scatter matrix
    dir = std::polar(1.0, 0.5 * std::atan2(2.0 * sxy, sxx - syy));
  } else if (std::abs(centroid) > 0.0) {
    dir = centroid / std::abs(centroid);
  } else {
    dir = 1.0;
  }
  auto perp = [&](Complex w) { return std::abs(dir.real() * w.imag() - dir.imag() * w.real()); };
  for (auto z : values) out.residual = std::max(out.residual, perp(z - centroid));
  out.offset = perp(centroid);
  out.collinear = out.residual <= 1e-10 * scale && out.offset <= 1e-10 * scale;

  double phase = -std::arg(dir);
  const double pi = std::numbers::pi;
  while (phase >= pi / 2) phase -= pi;
  while (phase < -pi / 2) phase += pi;
  out.phase = phase;
  return out;
}

ConvexityReport check_convexity_collinear(const DenseMatrix& c, const DenseMatrix& t,
                                          const SamplerConfig& cfg, int angles) {
  require_pair(c, t, "check_convexity_collinear");
  if (angles < 3) throw InvalidArgument("check_convexity_collinear: need at least 3 angles");
  const auto decomposition = normal_decomposition(c);
  const auto line = detect_collinearity(decomposition.seq.values);
  if (!line.collinear)
    throw InvalidArgument("check_convexity_collinear: eigenvalues of C are not collinear through 0");

  ConvexityReport r;
  r.phase = line.phase;
  const Complex rot = std::polar(1.0, line.phase);
  const DenseMatrix c_rot = rot * c;
  const DenseMatrix c_herm = 0.5 * (c_rot + c_rot.adjoint());
  const DenseMatrix t_rot = std::conj(rot) * t;

  std::vector<Complex> exact(static_cast<std::size_t>(angles));
  for (int j = 0; j < angles; ++j) {
    const double theta = 2.0 * std::numbers::pi * j / angles;
    r.angles.push_back(theta);
    r.exact_support.push_back(support_function_hermitian(c_herm, t_rot, theta));
    exact[static_cast<std::size_t>(j)] = support_point_hermitian(c_herm, t_rot, theta);
  }

  const auto cloud = sample_wc(c, t, cfg);
  for (double theta : r.angles) {
    const Complex dir = std::polar(1.0, -theta);
    double best = -std::numeric_limits<double>::infinity();
    for (auto z : cloud.points) best = std::max(best, (dir * z).real());
    r.sampled_support.push_back(best);
  }

  const auto exact_hull = convex_hull(exact);
  r.diameter = diameter(exact_hull);
  r.gap = hausdorff_convex(convex_hull(cloud), exact_hull);
  r.holds = r.gap <= 0.05 * r.diameter + slack(1e-10, r.diameter);
  return r;
}

}  // namespace cnr
