#include "cnr/suites.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <sstream>

#include "cnr/converge.hpp"
#include "cnr/crange.hpp"
#include "cnr/random_matrices.hpp"
#include "cnr/setgeom.hpp"

namespace cnr {

namespace {

const std::array<SchattenExponent, 5>& exponent_grid() {
  static const std::array<SchattenExponent, 5> grid{SchattenExponent(1.0), SchattenExponent(4.0 / 3.0),
                                                     SchattenExponent(2.0), SchattenExponent(4.0),
                                                     SchattenExponent::infinity()};
  return grid;
}

double violation(const InequalityReport& r) { return (r.lhs - r.rhs) / (1.0 + r.rhs); }

SuiteRow inequality_row(const std::string& suite, const std::string& check, std::size_t trials, double worst) {
  return {suite, check, trials, worst, worst <= 1e-10, ""};
}

// Deterministic grid covering {rmin <= |z| <= rmax} with spacing h.
std::vector<Complex> ring_grid(double rmin, double rmax, double h) {
  std::vector<Complex> pts;
  const int m = static_cast<int>(std::ceil(rmax / h));
  for (int i = -m; i <= m; ++i)
    for (int j = -m; j <= m; ++j) {
      const Complex z(i * h, j * h);
      if (std::abs(z) <= rmax && std::abs(z) >= rmin) pts.push_back(z);
    }
  return pts;
}

std::string format_double(double v) {
  std::ostringstream s;
  s << std::setprecision(3) << std::scientific << v;
  return s.str();
}

}  // namespace

std::vector<SuiteRow> run_norm_suite(const SuiteOptions& opt) {
  std::vector<SuiteRow> rows;
  const auto& grid = exponent_grid();

  double worst = -1.0;
  for (std::size_t i = 0; i < opt.trials; ++i) {
    Rng rng(opt.seed, i);
    const int n = 2 + static_cast<int>(i % 5);
    const auto c = gaussian_matrix(n, rng);
    const auto t = gaussian_matrix(n, rng);
    worst = std::max(worst, violation(check_holder_trace(c, t, grid[i % grid.size()])));
  }
  rows.push_back(inequality_row("norms", "holder_trace", opt.trials, worst));

  worst = -1.0;
  for (std::size_t i = 0; i < opt.trials; ++i) {
    Rng rng(opt.seed, 1'000'000 + i);
    const int n = 2 + static_cast<int>(i % 5);
    const auto s = gaussian_matrix(n, rng);
    const auto c = gaussian_matrix(n, rng);
    const auto t = gaussian_matrix(n, rng);
    worst = std::max(worst, violation(check_ideal_bound(s, c, t, grid[i % grid.size()])));
  }
  rows.push_back(inequality_row("norms", "ideal_bound", opt.trials, worst));

  worst = -1.0;
  for (std::size_t i = 0; i < opt.trials; ++i) {
    Rng rng(opt.seed, 2'000'000 + i);
    const auto a = gaussian_matrix(2 + static_cast<int>(i % 5), rng);
    const auto s = singular_values(a).values;
    for (std::size_t g = 0; g + 1 < grid.size(); ++g) {
      const double lo = schatten_norm(s, grid[g + 1]);
      const double hi = schatten_norm(s, grid[g]);
      worst = std::max(worst, (lo - hi) / (1.0 + hi));
    }
  }
  rows.push_back(inequality_row("norms", "schatten_monotone", opt.trials, worst));

  worst = -1.0;
  for (std::size_t i = 0; i < opt.trials; ++i) {
    Rng rng(opt.seed, 3'000'000 + i);
    const int n = 2 + static_cast<int>(i % 5);
    const auto t = gaussian_matrix(n, rng);
    const auto basis = haar_unitary(n, rng);
    const std::size_t m = 1 + i % static_cast<std::size_t>(n);
    worst = std::max(worst, violation(check_diagonal_domination(t, basis, m)));
  }
  rows.push_back(inequality_row("norms", "diagonal_domination", opt.trials, worst));
  return rows;
}

std::vector<SuiteRow> run_geometry_suite(const SuiteOptions& opt) {
  std::vector<SuiteRow> rows;
  const std::size_t triples = std::min<std::size_t>(opt.trials, 100);

  double sym = 0.0, tri = -1.0;
  for (std::size_t i = 0; i < triples; ++i) {
    Rng rng(opt.seed, 4'000'000 + i);
    std::array<PointCloud, 3> clouds;
    for (auto& c : clouds) {
      const std::size_t size = 1 + static_cast<std::size_t>(rng.uniform() * 200);
      for (std::size_t k = 0; k < size; ++k) c.points.push_back(rng.complex_normal());
    }
    const double ab = hausdorff(clouds[0], clouds[1]);
    sym = std::max(sym, std::abs(ab - hausdorff(clouds[1], clouds[0])));
    tri = std::max(tri, ab - hausdorff(clouds[0], clouds[2]) - hausdorff(clouds[2], clouds[1]));
  }
  rows.push_back({"geometry", "hausdorff_symmetry", triples, sym, sym == 0.0, ""});
  rows.push_back({"geometry", "hausdorff_triangle", triples, tri, tri <= 1e-12, ""});

  double outside = -1.0;
  bool idempotent = true;
  const std::size_t hull_trials = std::min<std::size_t>(opt.trials, 20);
  for (std::size_t i = 0; i < hull_trials; ++i) {
    Rng rng(opt.seed, 5'000'000 + i);
    std::vector<Complex> pts(1000);
    for (auto& z : pts) z = rng.complex_normal();
    const auto hull = convex_hull(pts);
    for (auto z : pts) outside = std::max(outside, hull_signed_distance(hull, z));
    idempotent = idempotent && convex_hull(hull.vertices).vertices == hull.vertices;
  }
  rows.push_back({"geometry", "hull_containment", hull_trials, outside, outside <= 1e-12, ""});
  rows.push_back({"geometry", "hull_idempotence", hull_trials, 0.0, idempotent, ""});

  {
    const double h = 0.05;
    PointCloud disk{ring_grid(0.0, 1.0, h), {}};
    const auto r = star_shaped_wrt(disk, 0.0, h, 64);
    rows.push_back({"geometry", "star_disk_holds", 1, r.worst_gap, r.holds, ""});
    PointCloud annulus{ring_grid(0.5, 1.0, h), {}};
    const auto a = star_shaped_wrt(annulus, 0.0, 0.1 * h, 64);
    rows.push_back({"geometry", "star_annulus_fails", 1, a.worst_gap, !a.holds, ""});
  }

  {
    const std::size_t draws = 10000;
    const int n = 4;
    double sum = 0.0, sum2 = 0.0;
    for (std::size_t k = 0; k < draws; ++k) {
      Rng rng(opt.seed, 6'000'000 + k);
      const double v = std::norm(haar_unitary(n, rng)(0, 0));
      sum += v;
      sum2 += v * v;
    }
    const double mean = sum / draws;
    const double se = std::sqrt((sum2 / draws - mean * mean) / draws);
    const double z = std::abs(mean - 1.0 / n) / se;
    rows.push_back({"geometry", "haar_second_moment", draws, z, z <= 3.0, "z-score of mean |u11|^2 vs 1/n"});
  }
  return rows;
}

std::vector<SuiteRow> run_range_suite(const SuiteOptions& opt) {
  std::vector<SuiteRow> rows;
  SamplerConfig cfg;
  cfg.seed = opt.seed;
  cfg.sample_count = 500;

  {
    const std::size_t trials = std::min<std::size_t>(opt.trials, 10);
    double witness = 0.0, outward = 0.0;
    bool pass = true;
    for (std::size_t i = 0; i < trials; ++i) {
      Rng rng(opt.seed, 7'000'000 + i);
      const int n = 3 + static_cast<int>(i % 3);
      const auto c = random_normal(n, rng);
      const auto t = random_normal(n, rng);
      cfg.seed = opt.seed + i;
      const auto r = check_inclusion_chain(c, t, cfg, 1e-9);
      witness = std::max(witness, r.witness_max_error);
      outward = std::max(outward, r.max_outward_distance);
      pass = pass && r.holds;
    }
    rows.push_back({"range", "inclusion_chain", trials, std::max(witness, outward), pass,
                    "witness " + format_double(witness) + ", outward " + format_double(outward)});
  }

  {
    SamplerConfig acfg;
    acfg.seed = opt.seed;
    acfg.sample_count = 2000;
    acfg.ascent.enabled = true;
    acfg.ascent.directions = 32;
    Rng rng(opt.seed, 8'000'000);
    std::vector<std::pair<DenseMatrix, DenseMatrix>> fixtures;
    fixtures.emplace_back(random_hermitian(4, rng), random_normal(4, rng));
    ComplexVector imaginary_axis(3);
    imaginary_axis << Complex(0, 1), Complex(0, 2), Complex(0, 0);
    fixtures.emplace_back(DenseMatrix(imaginary_axis.asDiagonal()), gaussian_matrix(3, rng));
    fixtures.emplace_back(random_hermitian(3, rng), gaussian_matrix(3, rng));
    double worst = 0.0;
    bool pass = true;
    for (const auto& [c, t] : fixtures) {
      const auto r = check_convexity_collinear(c, t, acfg);
      worst = std::max(worst, r.gap / std::max(r.diameter, 1e-300));
      pass = pass && r.holds;
    }
    rows.push_back({"range", "convexity_collinear", fixtures.size(), worst, pass, "gap / diameter"});
  }

  {
    const std::size_t trials = std::min<std::size_t>(opt.trials, 3);
    double worst = 0.0;
    bool pass = true;
    for (std::size_t i = 0; i < trials; ++i) {
      Rng rng(opt.seed, 9'000'000 + i);
      const auto c = gaussian_matrix(4, rng);
      const auto t = gaussian_matrix(4, rng);
      SamplerConfig scfg;
      scfg.seed = opt.seed + i;
      scfg.sample_count = 4000;
      const auto cloud = sample_wc(c, t, scfg);
      const double eps = covering_radius_estimate(cloud);
      const auto r = star_shaped_wrt(cloud, star_center(c, t), eps, 64);
      worst = std::max(worst, r.worst_gap / eps);
      pass = pass && r.holds;
    }
    rows.push_back({"range", "star_shaped_center", trials, worst, pass, "worst gap / epsilon"});
  }

  if (opt.c && opt.t) {
    const auto r = check_trace_functional_convergence(*opt.c, *opt.t, {8, 16, 32});
    double worst = -1.0;
    for (std::size_t i = 0; i < r.errors.size(); ++i) worst = std::max(worst, (r.errors[i] - r.bounds[i]) / (1 + r.bounds[i]));
    rows.push_back({"range", "user_trace_functional", r.sizes.size(), worst, r.holds, ""});

    const auto cn = truncate(*opt.c, "standard", 8);
    const auto tn = truncate(*opt.t, "standard", 8);
    SamplerConfig ucfg;
    ucfg.seed = opt.seed;
    ucfg.sample_count = 1000;
    const auto cloud = sample_wc(cn, tn, ucfg);
    const double bound = schatten_norm(cn, opt.c->class_p) * schatten_norm(tn, opt.c->class_p.conjugate());
    double excess = -1.0;
    for (auto z : cloud.points) excess = std::max(excess, (std::abs(z) - bound) / (1 + bound));
    rows.push_back({"range", "user_holder_bound", cloud.points.size(), excess, excess <= 1e-10, ""});
  }
  return rows;
}

std::vector<SuiteRow> run_spectrum_suite(const SuiteOptions& opt) {
  std::vector<SuiteRow> rows;

  {
    const std::size_t trials = std::min<std::size_t>(opt.trials, 50);
    double worst = 0.0;
    for (std::size_t i = 0; i < trials; ++i) {
      Rng rng(opt.seed, 10'000'000 + i);
      const int n = 3 + static_cast<int>(i % 4);
      const auto c = random_diagonal(n, rng);
      const auto t = random_diagonal(n, rng);
      const auto cs = modified_eigenseq(c);
      const auto ts = modified_eigenseq(t);
      // the sequences are c and t reordered; witnesses act in the sorted frame
      const DenseMatrix cd = DenseMatrix(Eigen::Map<const ComplexVector>(cs.values.data(), n).asDiagonal());
      const DenseMatrix td = DenseMatrix(Eigen::Map<const ComplexVector>(ts.values.data(), n).asDiagonal());
      for (const auto& p : enumerate_c_spectrum(cs, ts)) {
        const auto pm = p.sigma.matrix();
        worst = std::max(worst, std::abs(wc_point(cd, td, pm) - p.value));
      }
    }
    rows.push_back({"spectrum", "permutation_witness", trials, worst, worst <= 1e-12, ""});
  }

  {
    const std::size_t trials = std::min<std::size_t>(opt.trials, 10);
    double worst = 0.0, bound_excess = -1.0;
    for (std::size_t i = 0; i < trials; ++i) {
      Rng rng(opt.seed, 11'000'000 + i);
      const int n = 3 + static_cast<int>(i % 4);
      const auto c = random_diagonal(n, rng);
      const auto t = random_diagonal(n, rng);
      const auto cs = modified_eigenseq(c);
      const auto ts = modified_eigenseq(t);
      const auto exact = c_spectrum_exact(cs, ts);
      SamplerConfig cfg;
      cfg.seed = opt.seed + i;
      cfg.sample_count = 500;
      const auto sampled = c_spectrum_sample(cs, ts, cfg);
      worst = std::max(worst, directed_hausdorff(sampled, exact));
      for (const auto& p : exponent_grid()) {
        const double bound = schatten_norm(c, p) * schatten_norm(t, p.conjugate());
        for (auto z : sampled.points) bound_excess = std::max(bound_excess, (std::abs(z) - bound) / (1 + bound));
      }
    }
    rows.push_back({"spectrum", "sample_within_exact", trials, worst, worst <= 1e-12, ""});
    rows.push_back({"spectrum", "holder_bound", trials, bound_excess, bound_excess <= 1e-10, ""});
  }

  {
    const auto c = OperatorSpec::diagonal(GeometricLaw{0.5}, SchattenExponent(2.0));
    const auto t = OperatorSpec::diagonal(GeometricLaw{Complex(0.0, 0.6)}, SchattenExponent(2.0));
    const auto r = run_spectrum_ladder(c, t, {2, 4, 6, 8});
    bool monotone = true;
    for (std::size_t i = 0; i + 1 < r.pairwise_hausdorff.size(); ++i)
      monotone = monotone && r.pairwise_hausdorff[i + 1] <= r.pairwise_hausdorff[i];
    rows.push_back({"spectrum", "spectrum_ladder_monotone", r.sizes.size(), r.cauchy_tail, monotone, ""});
  }

  {
    PowerLaw law;
    law.alpha = 2.0;
    const auto c = OperatorSpec::diagonal(law, SchattenExponent(4.0));
    const auto r = check_center_decay(c, SchattenExponent(4.0).conjugate(), {8, 32, 128, 512, 1024}, 0.1);
    rows.push_back({"spectrum", "center_decay", r.sizes.size(), r.values.back(), r.holds && r.monotone_tail, ""});
  }

  {
    const double ratio = 0.5;
    const auto c = OperatorSpec::diagonal(GeometricLaw{ratio}, SchattenExponent(2.0));
    const std::vector<std::size_t> sizes{2, 4, 8, 16};
    const auto r = check_projection_convergence(c, SchattenExponent(2.0), sizes);
    double worst = 0.0;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
      const double r2 = ratio * ratio;
      const double closed = std::sqrt(std::pow(r2, static_cast<double>(sizes[i] + 1)) / (1.0 - r2));
      worst = std::max(worst, std::abs(r.tails[i] - closed));
    }
    rows.push_back({"spectrum", "projection_tail_closed_form", sizes.size(), worst, worst <= 1e-10 && r.holds, ""});
  }

  if (opt.c) {
    const auto r = check_projection_convergence(*opt.c, opt.c->class_p, {4, 8, 16});
    rows.push_back({"spectrum", "user_projection", r.sizes.size(), r.tails.back(), r.holds, ""});
  }
  return rows;
}

std::vector<SuiteRow> run_suite(const std::string& name, const SuiteOptions& opt) {
  if (name == "norms") return run_norm_suite(opt);
  if (name == "geometry") return run_geometry_suite(opt);
  if (name == "range") return run_range_suite(opt);
  if (name == "spectrum") return run_spectrum_suite(opt);
  if (name == "all") {
    std::vector<SuiteRow> rows;
    for (auto* fn : {run_norm_suite, run_geometry_suite, run_range_suite, run_spectrum_suite}) {
      auto part = fn(opt);
      rows.insert(rows.end(), part.begin(), part.end());
    }
    return rows;
  }
  throw InvalidArgument("unknown suite: " + name);
}

void print_suite_table(std::ostream& out, const std::vector<SuiteRow>& rows) {
  out << std::left << std::setw(10) << "suite" << std::setw(30) << "check" << std::setw(8) << "trials"
      << std::setw(12) << "worst" << "status\n";
  for (const auto& r : rows) {
    out << std::left << std::setw(10) << r.suite << std::setw(30) << r.check << std::setw(8) << r.trials
        << std::setw(12) << format_double(r.worst) << (r.pass ? "PASS" : "FAIL");
    if (!r.detail.empty()) out << "  (" << r.detail << ")";
    out << '\n';
  }
}

}  // namespace cnr
