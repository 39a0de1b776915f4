#include "minangle/angles.hpp"
#include "minangle/error.hpp"

#include <doctest.h>

#include <Eigen/QR>

#include <cmath>
#include <numbers>
#include <random>

using namespace minangle;

namespace {

SubspaceBasis span_of(const DenseMatrix& q) { return SubspaceBasis::from_dense(q); }

DenseMatrix e(int p, std::initializer_list<int> axes) {
  DenseMatrix m = DenseMatrix::Zero(p, static_cast<Eigen::Index>(axes.size()));
  int c = 0;
  for (const int a : axes) m(a, c++) = 1.0;
  return m;
}

DenseMatrix random_orthonormal(int p, int d, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  DenseMatrix a(p, d);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < d; ++j) a(i, j) = g(rng);
  Eigen::HouseholderQR<DenseMatrix> qr(a);
  return qr.householderQ() * DenseMatrix::Identity(p, d);
}

DenseMatrix line_at(double alpha) {
  DenseMatrix v = DenseMatrix::Zero(3, 1);
  v(0, 0) = std::cos(alpha);
  v(1, 0) = std::sin(alpha);
  return v;
}

}  // namespace

TEST_CASE("identical subspaces have zero angles") {
  std::mt19937_64 rng(1);
  for (int d = 1; d <= 4; ++d) {
    const auto q = span_of(random_orthonormal(12, d, rng));
    const auto r = principal_angles(q, q);
    REQUIRE(r.thetas.size() == static_cast<std::size_t>(d));
    for (const double t : r.thetas) CHECK(t < 1e-7);
    CHECK(dissimilarity(q, q) < 1e-14);
  }
  const auto ax = span_of(e(4, {0, 2}));
  CHECK(dissimilarity(ax, ax) == 0.0);
}

TEST_CASE("orthogonal lines") {
  const auto r = principal_angles(span_of(e(3, {0})), span_of(e(3, {1})));
  REQUIRE(r.thetas.size() == 1);
  CHECK(r.thetas[0] == doctest::Approx(std::numbers::pi / 2).epsilon(1e-15));
  CHECK(dissimilarity(span_of(e(3, {0})), span_of(e(3, {1}))) == 1.0);
}

TEST_CASE("rotated line at 0.3") {
  const auto r = principal_angles(span_of(e(3, {0})), span_of(line_at(0.3)));
  CHECK(std::abs(r.thetas[0] - 0.3) < 1e-12);
}

TEST_CASE("line inside a plane") {
  const auto u = span_of(e(3, {0}));
  const auto v = span_of(e(3, {0, 1}));
  CHECK(std::abs(dissimilarity(u, v) - 0.5) < 1e-12);
  CHECK(std::abs(dissimilarity(v, u) - 0.5) < 1e-12);
  CHECK(principal_angles(v, u).thetas.size() == 1);
}

TEST_CASE("dissimilarity matrix") {
  const auto a = span_of(e(3, {0}));
  const auto b = span_of(e(3, {1}));
  DenseMatrix two = dissimilarity_matrix({a, a});
  CHECK(two.cwiseAbs().maxCoeff() == 0.0);

  const DenseMatrix d = dissimilarity_matrix({a, b, a});
  CHECK(d(0, 1) == 1.0);
  CHECK(d(1, 2) == 1.0);
  CHECK(d(0, 2) == 0.0);
  CHECK(d == d.transpose());

  std::mt19937_64 rng(3);
  std::vector<SubspaceBasis> bases;
  for (int i = 0; i < 3; ++i) bases.push_back(span_of(random_orthonormal(6, 2, rng)));
  const DenseMatrix m = dissimilarity_matrix(bases);
  for (int i = 0; i < 3; ++i) {
    CHECK(m(i, i) == 0.0);
    for (int j = 0; j < 3; ++j) {
      if (i != j) CHECK(m(i, j) == doctest::Approx(dissimilarity(bases[i], bases[j])).epsilon(1e-15));
    }
  }

  CHECK_THROWS_AS(dissimilarity_matrix({a}), Error);
}

TEST_CASE("ambient dimension mismatch") {
  try {
    principal_angles(span_of(e(3, {0})), span_of(e(4, {0})));
    FAIL("expected throw");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::AmbientDimensionMismatch);
  }
}

TEST_CASE("basis invariance under orthogonal right factors") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 30; ++trial) {
    const int du = 1 + trial % 3, dv = 1 + (trial / 3) % 4;
    const DenseMatrix qu = random_orthonormal(10, du, rng);
    const DenseMatrix qv = random_orthonormal(10, dv, rng);
    const double base = dissimilarity(span_of(qu), span_of(qv));
    const DenseMatrix ru = random_orthonormal(du, du, rng);
    const DenseMatrix rv = random_orthonormal(dv, dv, rng);
    CHECK(std::abs(dissimilarity(span_of(qu * ru), span_of(qv * rv)) - base) < 1e-10);
    CHECK(std::abs(dissimilarity(span_of(qv), span_of(qu)) - base) < 1e-15);
  }
}

TEST_CASE("range and order on random pairs") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    const int du = 1 + trial % 4, dv = 1 + (trial * 7) % 5;
    const auto u = span_of(random_orthonormal(8, du, rng));
    const auto v = span_of(random_orthonormal(8, dv, rng));
    const auto r = principal_angles(u, v);
    CHECK(r.thetas.size() == static_cast<std::size_t>(std::min(du, dv)));
    for (std::size_t i = 0; i < r.thetas.size(); ++i) {
      CHECK(r.thetas[i] >= 0.0);
      CHECK(r.thetas[i] <= std::numbers::pi / 2);
      CHECK(r.cosines[i] >= 0.0);
      CHECK(r.cosines[i] <= 1.0);
      if (i > 0) {
        CHECK(r.thetas[i] >= r.thetas[i - 1]);
        CHECK(r.cosines[i] <= r.cosines[i - 1]);
      }
    }
    const double dis = dissimilarity(u, v);
    CHECK(dis >= 0.0);
    CHECK(dis <= 1.0);
  }
}

TEST_CASE("rotation monotonicity") {
  const auto u = span_of(e(3, {0}));
  double previous = -1.0;
  for (int i = 0; i <= 100; ++i) {
    const double alpha = std::numbers::pi / 2 * i / 100.0;
    const double dis = dissimilarity(u, span_of(line_at(alpha)));
    CHECK(std::abs(dis - (1.0 - std::cos(alpha))) < 1e-12);
    CHECK(dis >= previous);
    previous = dis;
  }
}

TEST_CASE("cosines slightly above one are clamped") {
  DenseMatrix v = DenseMatrix::Zero(2, 1);
  v(0, 0) = 1.0 + 1e-15;
  SubspaceBasis b;
  b.ambient_dim = 2;
  b.support = {0};
  b.coords = DenseMatrix::Constant(1, 1, 1.0 + 1e-15);
  const auto r = principal_angles(b, b);
  CHECK_FALSE(std::isnan(r.thetas[0]));
  CHECK(r.thetas[0] == 0.0);
  CHECK(r.cosines[0] == 1.0);

  DenseMatrix plane(3, 2);
  plane << 1 + 1e-15, 0, 0, 1 + 1e-15, 0, 0;
  const auto p = span_of(plane);
  for (const double t : principal_angles(p, p).thetas) CHECK_FALSE(std::isnan(t));
}

TEST_CASE("disjoint supports are orthogonal") {
  const auto u = span_of(e(6, {0, 1}));
  const auto v = span_of(e(6, {3, 4, 5}));
  CHECK(cross_gram(u, v).cwiseAbs().maxCoeff() == 0.0);
  CHECK(dissimilarity(u, v) == 1.0);
}
