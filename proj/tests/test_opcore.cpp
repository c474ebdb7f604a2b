#include <doctest.h>

#include <numeric>

#include "cnr/opcore.hpp"
#include "test_support.hpp"

using namespace cnr;
using oracle::diag;

namespace {

const std::vector<SchattenExponent> kGrid{SchattenExponent(1.0), SchattenExponent(4.0 / 3.0), SchattenExponent(2.0),
                                          SchattenExponent(4.0), SchattenExponent::infinity()};

}  // namespace

TEST_CASE("conjugate exponents") {
  CHECK(SchattenExponent(2.0).conjugate().value() == 2.0);
  CHECK(SchattenExponent(1.0).conjugate().is_infinite());
  CHECK(SchattenExponent::infinity().conjugate().value() == 1.0);
  CHECK(SchattenExponent(4.0).conjugate().value() == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
  CHECK_THROWS_AS(SchattenExponent(0.5), InvalidArgument);

  SUBCASE("involution is exact") {
    Rng rng(7);
    for (int i = 0; i < 1000; ++i) {
      const SchattenExponent p(1.0 + 20.0 * rng.uniform());
      CHECK(p.conjugate().conjugate() == p);
      CHECK(p.reciprocal() + p.conjugate().reciprocal() == doctest::Approx(1.0).epsilon(1e-15));
    }
    CHECK(SchattenExponent::infinity().conjugate().conjugate() == SchattenExponent::infinity());
  }
}

TEST_CASE("singular values") {
  const auto s = singular_values(diag({3.0, -4.0})).values;
  REQUIRE(s.size() == 2);
  CHECK(s[0] == 4.0);
  CHECK(s[1] == 3.0);

  const auto z = singular_values(DenseMatrix::Zero(4, 4)).values;
  CHECK(std::all_of(z.begin(), z.end(), [](double v) { return v == 0.0; }));

  SUBCASE("matches the Gram-eigenvalue oracle") {
    Rng rng(11);
    for (int trial = 0; trial < 20; ++trial) {
      const auto a = gaussian_matrix(5, rng);
      const auto got = singular_values(a).values;
      const auto want = oracle::singular_values_via_gram(a);
      for (std::size_t k = 0; k < got.size(); ++k) CHECK(got[k] == doctest::Approx(want[k]).epsilon(1e-10));
      CHECK(std::is_sorted(got.rbegin(), got.rend()));
    }
  }

  SUBCASE("unitary invariance") {
    Rng rng(12);
    for (int trial = 0; trial < 20; ++trial) {
      const auto a = gaussian_matrix(6, rng);
      const auto u = haar_unitary(6, rng);
      const auto v = haar_unitary(6, rng);
      const auto s1 = singular_values(a).values;
      const auto s2 = singular_values(DenseMatrix(u * a * v)).values;
      for (std::size_t k = 0; k < s1.size(); ++k) CHECK(std::abs(s1[k] - s2[k]) <= 1e-10);
    }
  }
}

TEST_CASE("schatten norms") {
  CHECK(schatten_norm(diag({1.0, 1.0, 1.0}), SchattenExponent(1.0)) == doctest::Approx(3.0));
  CHECK(schatten_norm(diag({3.0, 4.0}), SchattenExponent::infinity()) == 4.0);
  CHECK(schatten_norm(diag({3.0, 4.0}), SchattenExponent(2.0)) == doctest::Approx(5.0));
  // large exponents approach the operator norm without overflowing
  CHECK(schatten_norm(diag({3e200, 4e200}), SchattenExponent(400.0)) == doctest::Approx(4e200));

  SUBCASE("nonincreasing in p") {
    Rng rng(13);
    for (int trial = 0; trial < 50; ++trial) {
      const auto a = gaussian_matrix(6, rng);
      for (std::size_t g = 0; g + 1 < kGrid.size(); ++g)
        CHECK(schatten_norm(a, kGrid[g + 1]) <= schatten_norm(a, kGrid[g]) * (1 + 1e-12));
    }
  }
}

TEST_CASE("trace") {
  CHECK(trace(DenseMatrix::Identity(5, 5)) == Complex(5.0));
  CHECK(trace(diag({Complex(0, 1), Complex(0, -1)})) == Complex(0.0));

  Rng rng(14);
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = gaussian_matrix(4, rng);
    const auto b = gaussian_matrix(4, rng);
    // direct multiply-and-sum oracle
    Complex ab = 0.0, ba = 0.0;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        ab += a(i, j) * b(j, i);
        ba += b(i, j) * a(j, i);
      }
    CHECK(std::abs(trace_of_product(a, b) - ab) <= 1e-12);
    CHECK(std::abs(ab - ba) <= 1e-12);
    CHECK(std::abs(trace(DenseMatrix(a * b)) - trace(DenseMatrix(b * a))) <= 1e-12);
  }
}

TEST_CASE("modified eigenvalue sequence") {
  SUBCASE("diagonal reordered, kernel last") {
    const auto s = modified_eigenseq(diag({0.0, 0.5, 1.0}));
    REQUIRE(s.values.size() == 3);
    CHECK(s.values[0] == Complex(1.0));
    CHECK(s.values[1] == Complex(0.5));
    CHECK(s.values[2] == Complex(0.0));
    CHECK(s.kernel_padding == 1);
  }
  SUBCASE("nilpotent") {
    DenseMatrix a = DenseMatrix::Zero(2, 2);
    a(0, 1) = 1.0;
    const auto s = modified_eigenseq(a);
    CHECK(s.values == std::vector<Complex>{0.0, 0.0});
    CHECK(s.kernel_padding == 2);
  }
  SUBCASE("unitary conjugate of a known diagonal") {
    Rng rng(15);
    for (int trial = 0; trial < 20; ++trial) {
      const auto d = gaussian_vector(5, rng);
      const auto a = conjugated_diagonal(d, rng);
      std::vector<double> want;
      for (int k = 0; k < 5; ++k) want.push_back(std::abs(d(k)));
      std::sort(want.rbegin(), want.rend());
      const auto s = modified_eigenseq(a);
      for (int k = 0; k < 5; ++k) CHECK(std::abs(std::abs(s.values[k]) - want[k]) <= 1e-10);
    }
  }
  SUBCASE("normal: moduli equal singular values; Weyl-type bound") {
    Rng rng(16);
    for (int trial = 0; trial < 20; ++trial) {
      const auto a = random_normal(6, rng);
      const auto s = modified_eigenseq(a);
      const auto sv = singular_values(a).values;
      for (std::size_t k = 0; k < sv.size(); ++k) CHECK(std::abs(std::abs(s.values[k]) - sv[k]) <= 1e-9);
    }
    for (int trial = 0; trial < 20; ++trial) {
      const auto a = gaussian_matrix(6, rng);
      const auto s = modified_eigenseq(a);
      const auto sv = singular_values(a).values;
      for (double p : {1.0, 2.0, 3.0}) {
        double lhs = 0.0, rhs = 0.0;
        for (auto z : s.values) lhs += std::pow(std::abs(z), p);
        for (auto v : sv) rhs += std::pow(v, p);
        CHECK(lhs <= rhs + 1e-8);
      }
      for (std::size_t k = 0; k + 1 < s.values.size(); ++k)
        CHECK(std::abs(s.values[k]) >= std::abs(s.values[k + 1]));
    }
  }
  SUBCASE("repeated eigenvalue keeps its multiplicity") {
    const auto s = modified_eigenseq(diag({2.0, 2.0, 0.0, 1.0}));
    CHECK(s.values == std::vector<Complex>{2.0, 2.0, 1.0, 0.0});
  }
}

TEST_CASE("normal decomposition reproduces the matrix") {
  Rng rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    const auto a = random_normal(5, rng);
    const auto nd = normal_decomposition(a);
    const auto d = Eigen::Map<const ComplexVector>(nd.seq.values.data(), 5);
    CHECK((nd.vectors * d.asDiagonal() * nd.vectors.adjoint() - a).norm() <= 1e-10);
    CHECK(is_unitary(nd.vectors));
  }
  CHECK_THROWS_AS(normal_decomposition(gaussian_matrix(4, rng)), InvalidArgument);
}

TEST_CASE("Holder trace bound") {
  const auto id = DenseMatrix::Identity(2, 2);
  auto r = check_holder_trace(id, id, SchattenExponent(2.0));
  CHECK(r.lhs == doctest::Approx(2.0));
  CHECK(r.rhs == doctest::Approx(2.0));
  CHECK(r.holds);

  r = check_holder_trace(diag({1.0, 0.0}), diag({0.0, 1.0}), SchattenExponent(1.0));
  CHECK(r.lhs == 0.0);
  CHECK(r.rhs == doctest::Approx(1.0));
  CHECK(r.holds);

  CHECK_THROWS_AS(check_holder_trace(id, DenseMatrix::Identity(3, 3), SchattenExponent(2.0)), InvalidArgument);

  Rng rng(18);
  for (int i = 0; i < 500; ++i) {
    const int n = 2 + i % 5;
    const auto c = gaussian_matrix(n, rng);
    const auto t = gaussian_matrix(n, rng);
    CHECK(check_holder_trace(c, t, kGrid[i % kGrid.size()]).holds);
  }
}

TEST_CASE("diagonal domination") {
  auto r = check_diagonal_domination(diag({2.0, 1.0}), DenseMatrix::Identity(2, 2), 1);
  CHECK(r.lhs == 2.0);
  CHECK(r.rhs == 2.0);
  CHECK(r.holds);

  r = check_diagonal_domination(DenseMatrix::Zero(3, 3), DenseMatrix::Identity(3, 3), 3);
  CHECK(r.lhs == 0.0);
  CHECK(r.rhs == 0.0);
  CHECK(r.holds);

  Rng rng(19);
  SUBCASE("eigenbasis of T^H T") {
    for (int trial = 0; trial < 20; ++trial) {
      const auto t = gaussian_matrix(5, rng);
      Eigen::SelfAdjointEigenSolver<DenseMatrix> es(DenseMatrix(t.adjoint() * t));
      const auto basis = es.eigenvectors().rowwise().reverse().eval();
      const auto rep = check_diagonal_domination(t, basis, 5);
      CHECK(rep.holds);
      const auto sv = singular_values(t).values;
      CHECK(rep.rhs == doctest::Approx(std::accumulate(sv.begin(), sv.end(), 0.0)));
    }
  }
  SUBCASE("rejects non-orthonormal input") {
    DenseMatrix bad = DenseMatrix::Identity(3, 3);
    bad(0, 1) = 0.1;
    CHECK_THROWS_AS(check_diagonal_domination(gaussian_matrix(3, rng), bad, 2), InvalidArgument);
    CHECK_THROWS_AS(check_diagonal_domination(gaussian_matrix(3, rng), DenseMatrix::Identity(3, 3), 4),
                    InvalidArgument);
  }
}

TEST_CASE("ideal bound") {
  const auto id = DenseMatrix::Identity(3, 3);
  Rng rng(20);
  const auto c = gaussian_matrix(3, rng);
  auto r = check_ideal_bound(id, c, id, SchattenExponent(2.0));
  CHECK(r.lhs == doctest::Approx(r.rhs).epsilon(1e-12));
  CHECK(r.holds);

  SUBCASE("unitary factors give equality") {
    for (int trial = 0; trial < 20; ++trial) {
      const auto s = haar_unitary(4, rng);
      const auto t = haar_unitary(4, rng);
      const auto cc = gaussian_matrix(4, rng);
      const auto rep = check_ideal_bound(s, cc, t, SchattenExponent(2.0));
      CHECK(std::abs(rep.lhs - rep.rhs) <= slack(1e-10, rep.rhs));
    }
  }
  SUBCASE("random triples") {
    for (int i = 0; i < 200; ++i) {
      const SchattenExponent p = std::array{SchattenExponent(1.0), SchattenExponent(2.0), SchattenExponent::infinity()}[i % 3];
      CHECK(check_ideal_bound(gaussian_matrix(4, rng), gaussian_matrix(4, rng), gaussian_matrix(4, rng), p).holds);
    }
  }
  CHECK_THROWS_AS(check_ideal_bound(DenseMatrix::Identity(2, 2), c, id, SchattenExponent(1.0)), InvalidArgument);
}
