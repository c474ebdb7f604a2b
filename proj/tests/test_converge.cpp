#include <doctest.h>

#include "cnr/converge.hpp"
#include "test_support.hpp"

using namespace cnr;

namespace {

OperatorSpec explicit_spec(std::vector<Complex> values, SchattenExponent p) {
  return OperatorSpec::diagonal(ExplicitLaw{std::move(values)}, p);
}

LadderConfig small_ladder(std::vector<std::size_t> sizes, std::size_t samples) {
  LadderConfig cfg;
  cfg.sizes = std::move(sizes);
  cfg.sampler.sample_count = samples;
  cfg.sampler.seed = 17;
  return cfg;
}

}  // namespace

TEST_CASE("ladder validation") {
  CHECK_NOTHROW(validate_ladder({2, 4}));
  CHECK_THROWS_AS(validate_ladder({8}), InvalidArgument);
  CHECK_THROWS_AS(validate_ladder({8, 15}), InvalidArgument);
  CHECK_THROWS_AS(validate_ladder({16, 8}), InvalidArgument);
  CHECK_THROWS_AS(validate_ladder({0, 2}), InvalidArgument);
}

TEST_CASE("class admission for ladders") {
  const auto harmonic = OperatorSpec::diagonal(PowerLaw{1.0, {}}, SchattenExponent(2.0));
  CHECK_NOTHROW(require_conjugate_admission(harmonic, harmonic));
  const auto trace_class_c = OperatorSpec::diagonal(GeometricLaw{0.5}, SchattenExponent(1.0));
  CHECK_NOTHROW(require_conjugate_admission(trace_class_c, harmonic));
  // C declared in B^{3/2} forces T into B^3, and 0.3 * 3 < 1
  const auto c_three_halves = OperatorSpec::diagonal(PowerLaw{1.0, {}}, SchattenExponent(1.5));
  const auto slow = OperatorSpec::diagonal(PowerLaw{0.3, {}}, SchattenExponent::infinity());
  CHECK_THROWS_AS(require_conjugate_admission(c_three_halves, slow), AdmissionError);
  CHECK_THROWS_AS(run_range_ladder(c_three_halves, slow, small_ladder({2, 4}, 10)), AdmissionError);
  // C outside its own declared class
  const auto wrong_class = OperatorSpec::diagonal(PowerLaw{0.5, {}}, SchattenExponent(1.0));
  CHECK_THROWS_AS(require_conjugate_admission(wrong_class, harmonic), AdmissionError);
}

TEST_CASE("range ladder") {
  SUBCASE("zero pair") {
    const auto zero = explicit_spec({}, SchattenExponent(2.0));
    const auto r = run_range_ladder(zero, zero, small_ladder({2, 4, 6}, 50));
    for (const auto& cl : r.clouds)
      for (auto z : cl.points) CHECK(z == Complex(0.0));
    CHECK(r.pairwise_hausdorff == std::vector<double>{0.0, 0.0});
    CHECK(r.cauchy_tail == 0.0);
    CHECK(r.center_decay == 0.0);
  }
  SUBCASE("finite-rank C stabilises once the support is covered") {
    const auto c = explicit_spec({1.0, -0.5}, SchattenExponent(1.0));
    const auto t = OperatorSpec::diagonal(GeometricLaw{Complex(0, 0.5)}, SchattenExponent::infinity());
    auto cfg = small_ladder({4, 8, 16}, 4000);
    cfg.sampler.ascent.enabled = true;
    const auto r = run_range_ladder(c, t, cfg);
    REQUIRE(r.clouds.size() == 3);
    CHECK(r.star_centers.size() == 3);
    // noise: the same rung drawn with another seed
    auto other = cfg.sampler;
    other.seed = 18;
    const auto redraw = sample_wc(truncate(c, "standard", 16), truncate(t, "standard", 16), other);
    const double noise = hausdorff(r.clouds.back(), redraw);
    CHECK(r.pairwise_hausdorff.back() <= 1.1 * noise);
  }
  SUBCASE("harmonic pair: star centres shrink") {
    const auto h = OperatorSpec::diagonal(PowerLaw{1.0, {}}, SchattenExponent(2.0));
    const auto r = run_range_ladder(h, h, small_ladder({8, 16, 32}, 20));
    for (std::size_t k = 0; k < r.sizes.size(); ++k) {
      double hn = 0.0;
      for (std::size_t j = 1; j <= r.sizes[k]; ++j) hn += 1.0 / static_cast<double>(j);
      CHECK(r.star_centers[k].real() == doctest::Approx(hn * hn / static_cast<double>(r.sizes[k])));
    }
    CHECK(r.center_decay < 0.0);
  }
  SUBCASE("power-law pair: small Cauchy tail") {
    const auto c = OperatorSpec::diagonal(PowerLaw{1.0, {}}, SchattenExponent(2.0));
    const auto t = OperatorSpec::diagonal(PowerLaw{1.0, {PhasePattern::Kind::alternating, {}}}, SchattenExponent(2.0));
    auto cfg = small_ladder({8, 16, 32, 64}, 4000);
    cfg.sampler.ascent = {true, 64, 30, 1.0};
    const auto r = run_range_ladder(c, t, cfg);
    CHECK(r.cauchy_tail < 0.05 * diameter(convex_hull(r.clouds.back())));
  }
  SUBCASE("Hermitian harmonic pair: the exact segments move too slowly for a 5% tail") {
    // W of two Hermitian diagonals is [sum l_k l_{n+1-k}, sum l_k^2]; the left end is 2 H_n / (n + 1)
    auto segment = [](std::size_t n) {
      double lo = 0.0, hi = 0.0;
      for (std::size_t k = 1; k <= n; ++k) {
        lo += 1.0 / (static_cast<double>(k) * static_cast<double>(n + 1 - k));
        hi += 1.0 / (static_cast<double>(k) * static_cast<double>(k));
      }
      return std::pair{lo, hi};
    };
    const auto [lo32, hi32] = segment(32);
    const auto [lo64, hi64] = segment(64);
    const double tail = std::max(std::abs(lo32 - lo64), std::abs(hi32 - hi64));
    CHECK(tail > 0.05 * (hi64 - lo64));
  }
}

TEST_CASE("spectrum ladder") {
  SUBCASE("finitely supported sequences are constant past the support") {
    const auto c = explicit_spec({1.0, 2.0}, SchattenExponent(1.0));
    const auto t = explicit_spec({Complex(0, 1), -1.0, 0.5}, SchattenExponent::infinity());
    const auto r = run_spectrum_ladder(c, t, {3, 5, 7});
    CHECK(r.pairwise_hausdorff.back() <= 1e-12);
  }
  SUBCASE("delta sequence selects the entries") {
    const auto c = explicit_spec({1.0}, SchattenExponent(1.0));
    const auto t = OperatorSpec::diagonal(GeometricLaw{Complex(0, 0.5)}, SchattenExponent::infinity());
    const auto r = run_spectrum_ladder(c, t, {2, 4, 6});
    for (std::size_t k = 0; k < r.sizes.size(); ++k) {
      std::vector<Complex> expected{0.0};  // padding zeros give 1 * 0
      for (std::size_t j = 1; j <= r.sizes[k]; ++j) expected.push_back(t.diagonal_value(j));
      for (auto z : r.clouds[k].points) CHECK(oracle::min_distance(z, expected) <= 1e-15);
    }
  }
  SUBCASE("geometric decay is monotone") {
    const auto c = OperatorSpec::diagonal(GeometricLaw{0.5}, SchattenExponent(1.0));
    const auto t = OperatorSpec::diagonal(GeometricLaw{0.5}, SchattenExponent::infinity());
    const auto r = run_spectrum_ladder(c, t, {2, 4, 6, 8});
    for (std::size_t k = 1; k < r.pairwise_hausdorff.size(); ++k)
      CHECK(r.pairwise_hausdorff[k] <= r.pairwise_hausdorff[k - 1]);
  }
  const auto c = OperatorSpec::diagonal(GeometricLaw{0.5}, SchattenExponent(1.0));
  CHECK_THROWS_AS(run_spectrum_ladder(c, c, {4, 10}), InvalidArgument);
  CHECK_THROWS_AS(run_spectrum_ladder(OperatorSpec::dense(DenseMatrix::Identity(4, 4)), c, {2, 4}), InvalidArgument);
}

TEST_CASE("center decay") {
  std::vector<std::size_t> sizes;
  for (std::size_t n = 4; n <= 1024; n *= 2) sizes.push_back(n);

  SUBCASE("harmonic, q = 2") {
    const auto c = OperatorSpec::diagonal(PowerLaw{1.0, {}}, SchattenExponent(2.0));
    const auto r = check_center_decay(c, SchattenExponent(2.0), sizes, 0.25);
    CHECK(r.holds);
    double hn = 0.0;
    for (std::size_t j = 1; j <= 1024; ++j) hn += 1.0 / static_cast<double>(j);
    CHECK(r.values.back() == doctest::Approx(hn / 32.0));
  }
  SUBCASE("finite support decays like n^{-1/q}") {
    const auto c = explicit_spec({3.0, -1.0}, SchattenExponent(1.5));
    const auto r = check_center_decay(c, SchattenExponent(3.0), sizes, 1.0);
    for (std::size_t k = 0; k < sizes.size(); ++k)
      CHECK(r.values[k] == doctest::Approx(2.0 * std::pow(static_cast<double>(sizes[k]), -1.0 / 3.0)));
    CHECK(r.monotone_tail);
  }
  SUBCASE("1/k^2 with q = 4/3") {
    const auto c = OperatorSpec::diagonal(PowerLaw{2.0, {}}, SchattenExponent(4.0));
    const auto r = check_center_decay(c, SchattenExponent(4.0 / 3.0), sizes, 0.1);
    CHECK(r.holds);
    CHECK(r.monotone_tail);
  }
  const auto c = OperatorSpec::diagonal(PowerLaw{2.0, {}}, SchattenExponent(1.0));
  CHECK_THROWS_AS(check_center_decay(c, SchattenExponent::infinity(), sizes, 0.1), InvalidArgument);
}

TEST_CASE("projection convergence") {
  const std::vector<std::size_t> sizes{1, 2, 4, 8, 16};
  SUBCASE("geometric, p = 2, against the closed form") {
    const double r = 0.7;
    const auto c = OperatorSpec::diagonal(GeometricLaw{r}, SchattenExponent(2.0));
    const auto rep = check_projection_convergence(c, SchattenExponent(2.0), sizes);
    CHECK(rep.master == 64);
    CHECK(rep.holds);
    for (std::size_t i = 0; i < sizes.size(); ++i) {
      const double n = static_cast<double>(sizes[i]);
      const double m = static_cast<double>(rep.master);
      const double closed = std::sqrt(std::pow(r * r, n + 1) * (1 - std::pow(r * r, m - n)) / (1 - r * r));
      CHECK(std::abs(rep.tails[i] - closed) <= 1e-10);
    }
  }
  SUBCASE("finite support is exactly zero once covered") {
    const auto c = explicit_spec({1.0, 2.0, 3.0}, SchattenExponent(1.0));
    const auto rep = check_projection_convergence(c, SchattenExponent(1.0), sizes);
    CHECK(rep.tails[2] == 0.0);
    CHECK(rep.tails[0] == doctest::Approx(5.0));
  }
  SUBCASE("power law alpha = 2, p = 1: tail close to 1/n") {
    const auto c = OperatorSpec::diagonal(PowerLaw{2.0, {}}, SchattenExponent(1.0));
    const auto rep = check_projection_convergence(c, SchattenExponent(1.0), {8, 16, 32, 64, 128, 256, 512, 1024});
    CHECK(rep.master == 4096);
    const double ratio = rep.tails[3] * 64.0;
    CHECK(ratio >= 0.9);
    CHECK(ratio <= 1.1);
  }
  SUBCASE("dense operator uses its own dimension") {
    Rng rng(3);
    const auto c = OperatorSpec::dense(gaussian_matrix(12, rng), SchattenExponent(2.0));
    const auto rep = check_projection_convergence(c, SchattenExponent(2.0), {2, 6, 12});
    CHECK(rep.master == 12);
    CHECK(rep.tails.back() == 0.0);
    // nu_2 of the complement is the Frobenius norm of what lies outside the block
    DenseMatrix outside = c.entries;
    outside.topLeftCorner(6, 6).setZero();
    CHECK(rep.tails[1] == doctest::Approx(outside.norm()));
  }
}

TEST_CASE("trace functional convergence") {
  const std::vector<std::size_t> sizes{2, 4, 8, 16};
  SUBCASE("diagonal pair equals the tail sum") {
    const auto c = OperatorSpec::diagonal(GeometricLaw{0.8}, SchattenExponent(1.0));
    const auto t = OperatorSpec::diagonal(PowerLaw{0.5, {PhasePattern::Kind::alternating, {}}}, SchattenExponent::infinity());
    const auto r = check_trace_functional_convergence(c, t, sizes);
    CHECK(r.holds);
    for (std::size_t i = 0; i < sizes.size(); ++i) {
      Complex tail = 0.0;
      for (std::size_t k = sizes[i] + 1; k <= r.master; ++k) tail += c.diagonal_value(k) * t.diagonal_value(k);
      CHECK(std::abs(r.errors[i] - std::abs(tail)) <= 1e-12);
      CHECK(r.errors[i] <= r.bounds[i] + 1e-12);
    }
  }
  SUBCASE("T = 0") {
    const auto c = OperatorSpec::diagonal(GeometricLaw{0.8}, SchattenExponent(1.0));
    const auto r = check_trace_functional_convergence(c, explicit_spec({}, SchattenExponent::infinity()), sizes);
    for (double e : r.errors) CHECK(e == 0.0);
  }
  SUBCASE("dense pair obeys the Holder bound") {
    Rng rng(5);
    const auto c = OperatorSpec::dense(gaussian_matrix(16, rng), SchattenExponent(2.0));
    const auto t = OperatorSpec::dense(gaussian_matrix(16, rng), SchattenExponent(2.0));
    const auto r = check_trace_functional_convergence(c, t, sizes);
    CHECK(r.holds);
    CHECK(r.errors.back() <= 1e-12 * (1 + r.bounds.front()));
  }
}
