#include "minangle/error.hpp"
#include "minangle/graph.hpp"
#include "minangle/metrics.hpp"
#include "minangle/spectral.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

using namespace minangle;

namespace {

DenseMatrix block_affinity(const std::vector<int>& sizes) {
  const int n = std::accumulate(sizes.begin(), sizes.end(), 0);
  DenseMatrix w = DenseMatrix::Zero(n, n);
  int offset = 0;
  for (const int s : sizes) {
    w.block(offset, offset, s, s).setOnes();
    offset += s;
  }
  w.diagonal().setZero();
  return w;
}

std::vector<int> block_truth(const std::vector<int>& sizes) {
  std::vector<int> t;
  for (std::size_t b = 0; b < sizes.size(); ++b) t.insert(t.end(), sizes[b], static_cast<int>(b));
  return t;
}

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::Numerical;
}

}  // namespace

TEST_CASE("two-point affinity") {
  DenseMatrix d(2, 2);
  d << 0, 1, 1, 0;
  const auto a = local_scaling_affinity(d, 1);
  CHECK(a.scales == std::vector<double>{1.0, 1.0});
  CHECK(a.weights(0, 0) == 0.0);
  CHECK(a.weights(0, 1) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
  CHECK(a.weights(1, 0) == a.weights(0, 1));
}

TEST_CASE("all-zero dissimilarity uses the fallback scale") {
  const auto a = local_scaling_affinity(DenseMatrix::Zero(4, 4), 2);
  for (int i = 0; i < 4; ++i) {
    CHECK(a.scales[i] == 1.0);
    for (int j = 0; j < 4; ++j) CHECK(a.weights(i, j) == (i == j ? 0.0 : 1.0));
  }
}

TEST_CASE("three-point hand evaluation") {
  DenseMatrix d(3, 3);
  d << 0, 0.2, 0.9,
       0.2, 0, 0.9,
       0.9, 0.9, 0;
  const auto a = local_scaling_affinity(d, 1);
  CHECK(a.scales[0] == doctest::Approx(0.2));
  CHECK(a.scales[1] == doctest::Approx(0.2));
  CHECK(a.scales[2] == doctest::Approx(0.9));
  CHECK(a.weights(0, 1) == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
  CHECK(a.weights(0, 2) == doctest::Approx(std::exp(-0.81 / 0.18)).epsilon(1e-14));
}

TEST_CASE("zero k-th neighbour falls back to the smallest positive entry") {
  DenseMatrix d(3, 3);
  d << 0, 0, 0.5,
       0, 0, 0.5,
       0.5, 0.5, 0;
  const auto a = local_scaling_affinity(d, 1);
  CHECK(a.scales[0] == 0.5);
  CHECK(a.scales[2] == 0.5);
  CHECK(a.weights(0, 1) == 1.0);
}

TEST_CASE("affinity errors") {
  CHECK(code_of([] { local_scaling_affinity(DenseMatrix::Zero(3, 3), 3); }) == ErrorCode::TooFewPoints);
  CHECK(code_of([] { local_scaling_affinity(DenseMatrix::Zero(3, 3), 0); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("affinity is symmetric with entries in the unit interval") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 3 + trial;
    DenseMatrix d = DenseMatrix::Zero(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) d(i, j) = d(j, i) = (trial % 3 == 0 && u(rng) < 0.3) ? 0.0 : u(rng);
    const auto a = local_scaling_affinity(d, std::min(7, n - 1));
    CHECK(a.weights == a.weights.transpose());
    CHECK(a.weights.minCoeff() >= 0.0);
    CHECK(a.weights.maxCoeff() <= 1.0);
    CHECK(a.weights.diagonal().cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("kmeans examples") {
  DenseMatrix line(4, 1);
  line << 0, 0.1, 10, 10.1;
  const auto r = kmeans(line, 2, {.restarts = 5, .seed = 1});
  CHECK(r.labels == std::vector<int>{0, 0, 1, 1});
  CHECK(r.wcss == doctest::Approx(0.01));

  DenseMatrix pts(5, 2);
  pts << 0, 0, 1, 0, 0, 1, 5, 5, -3, 2;
  const auto each = kmeans(pts, 5, {.restarts = 3, .seed = 2});
  CHECK(each.wcss == 0.0);
  std::vector<int> sorted = each.labels;
  std::sort(sorted.begin(), sorted.end());
  CHECK(sorted == std::vector<int>{0, 1, 2, 3, 4});

  DenseMatrix dup(6, 1);
  dup << 1, 1, 1, 7, 7, 7;
  const auto d = kmeans(dup, 2, {.seed = 3});
  CHECK(d.labels[0] == d.labels[1]);
  CHECK(d.labels[1] == d.labels[2]);
  CHECK(d.labels[3] == d.labels[5]);
  CHECK(d.labels[0] != d.labels[3]);
}

TEST_CASE("kmeans with fewer distinct points than clusters") {
  DenseMatrix same = DenseMatrix::Ones(4, 2);
  const auto r = kmeans(same, 3, {.restarts = 2, .seed = 4});
  CHECK(r.labels.size() == 4);
  CHECK(r.wcss == 0.0);
}

TEST_CASE("kmeans errors and determinism") {
  CHECK(code_of([] { kmeans(DenseMatrix(0, 2), 1); }) == ErrorCode::EmptyInput);
  CHECK(code_of([] { kmeans(DenseMatrix::Zero(2, 2), 3); }) == ErrorCode::InvalidArgument);

  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  DenseMatrix pts(60, 3);
  for (int i = 0; i < 60; ++i)
    for (int j = 0; j < 3; ++j) pts(i, j) = g(rng);
  const auto a = kmeans(pts, 4, {.seed = 11});
  const auto b = kmeans(pts, 4, {.seed = 11});
  CHECK(a.labels == b.labels);
  CHECK(a.wcss == b.wcss);
  CHECK(a.labels[0] == 0);
}

TEST_CASE("block-diagonal affinities are recovered for any seed") {
  const std::vector<int> sizes{5, 8, 3, 6};
  const auto w = block_affinity(sizes);
  const auto truth = block_truth(sizes);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto r = spectral_cluster(w, 4, {.restarts = 5, .seed = seed});
    CHECK(ari(r.labels, truth) == 1.0);
  }
  const auto two = spectral_cluster(block_affinity({4, 4}), 2);
  CHECK(two.labels == std::vector<int>{0, 0, 0, 0, 1, 1, 1, 1});
}

TEST_CASE("single cluster") {
  const auto r = spectral_cluster(block_affinity({3, 3}), 1);
  CHECK(std::all_of(r.labels.begin(), r.labels.end(), [](int l) { return l == 0; }));
}

TEST_CASE("spectral errors") {
  CHECK(code_of([] { spectral_cluster(block_affinity({2}), 3); }) == ErrorCode::TooFewPoints);
  CHECK(code_of([] { spectral_cluster(DenseMatrix::Zero(4, 4), 2); }) == ErrorCode::DegenerateAffinity);
}

TEST_CASE("zero-degree points go to the nearest centroid") {
  DenseMatrix w = DenseMatrix::Zero(7, 7);
  w.block(0, 0, 3, 3) = block_affinity({3});
  w.block(3, 3, 3, 3) = block_affinity({3});
  const auto r = spectral_cluster(w, 2, {.seed = 1});
  CHECK(r.isolated == std::vector<int>{6});
  CHECK(r.labels.size() == 7);
  CHECK(r.labels[0] == r.labels[2]);
  CHECK(r.labels[3] == r.labels[5]);
  CHECK(r.labels[0] != r.labels[3]);
  CHECK(r.labels[6] >= 0);
  CHECK(r.labels[6] <= 1);
}

TEST_CASE("two planar Gaussian blobs") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    DenseMatrix pts(2, 80);
    std::vector<int> truth(80);
    for (int i = 0; i < 80; ++i) {
      truth[i] = i % 2;
      pts(0, i) = g(rng) + (truth[i] ? 10.0 : 0.0);
      pts(1, i) = g(rng);
    }
    const auto labels = baseline_sc_x(SparseMatrix(pts.sparseView()), 2, 7, {.seed = seed});
    CHECK(ari(labels, truth) == 1.0);
  }
}

TEST_CASE("spectral clustering is invariant to point order") {
  std::mt19937_64 rng(21);
  std::normal_distribution<double> g;
  const int n = 45;
  DenseMatrix pts(2, n);
  for (int i = 0; i < n; ++i) {
    const int c = i % 3;
    pts(0, i) = g(rng) * 0.5 + 6.0 * c;
    pts(1, i) = g(rng) * 0.5 + (c == 1 ? 6.0 : 0.0);
  }
  const auto w = local_scaling_affinity(column_distances(SparseMatrix(pts.sparseView())), 7).weights;
  const auto base = spectral_cluster(w, 3, {.seed = 5}).labels;

  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  DenseMatrix wp(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) wp(i, j) = w(perm[i], perm[j]);
  const auto permuted = spectral_cluster(wp, 3, {.seed = 5}).labels;
  std::vector<int> back(n);
  for (int i = 0; i < n; ++i) back[perm[i]] = permuted[i];
  CHECK(ari(back, base) == 1.0);
}

TEST_CASE("propagate") {
  CHECK(propagate(make_partition({0, 0, 1}), {2, 1}) == std::vector<int>{2, 2, 1});
  CHECK(propagate(make_partition({0, 0, 0, 0}), {3}) == std::vector<int>{3, 3, 3, 3});
  CHECK(propagate(make_partition({0, 1, 2}), {1, 2, 1}) == std::vector<int>{1, 2, 1});
  const auto p = make_partition({0, 1, 1});
  CHECK(propagate(p, propagate(make_partition({0, 1}), {1, 2})) == propagate(p, {1, 2}));
  CHECK(code_of([] { propagate(make_partition({0, 1, 2}), {1, 2}); }) == ErrorCode::MissingComponentLabel);
}

TEST_CASE("attach isolated points by nearest dissimilarity") {
  DenseMatrix d(4, 4);
  d << 0, 0.1, 0.9, 0.3,
       0.1, 0, 0.8, 0.95,
       0.9, 0.8, 0, 0.2,
       0.3, 0.95, 0.2, 0;
  std::vector<int> labels{1, 1, 2, -1};
  attach_isolated(d, {3}, labels);
  CHECK(labels[3] == 2);
}

TEST_CASE("column distances") {
  DenseMatrix x(2, 3);
  x << 0, 3, 0,
       0, 4, 1;
  const DenseMatrix d = column_distances(SparseMatrix(x.sparseView()));
  CHECK(d(0, 1) == doctest::Approx(5.0));
  CHECK(d(1, 2) == doctest::Approx(std::sqrt(18.0)));
  CHECK(d(0, 0) == 0.0);
  CHECK(d == d.transpose());
}

TEST_CASE("baselines on block data") {
  // two groups of repeated documents over disjoint vocabularies
  DenseMatrix x = DenseMatrix::Zero(4, 6);
  for (int j = 0; j < 3; ++j) x(0, j) = x(1, j) = std::sqrt(0.5);
  for (int j = 3; j < 6; ++j) x(2, j) = x(3, j) = std::sqrt(0.5);
  const SparseMatrix sx = x.sparseView();
  const std::vector<int> truth{0, 0, 0, 1, 1, 1};
  CHECK(ari(baseline_sc_x(sx, 2), truth) == 1.0);
  const auto one = baseline_sc_x(sx, 1);
  CHECK(std::all_of(one.begin(), one.end(), [](int l) { return l == 1; }));

  Eigen::MatrixXi a = Eigen::MatrixXi::Zero(6, 6);
  a.block(0, 0, 3, 3).setOnes();
  a.block(3, 3, 3, 3).setOnes();
  const IntSparseMatrix sa = a.sparseView();
  const auto labels = baseline_sc_a(sa, 2);
  CHECK(ari(labels, truth) == 1.0);
  CHECK(*std::min_element(labels.begin(), labels.end()) == 1);
  const auto constant = baseline_sc_a(sa, 1);
  CHECK(std::all_of(constant.begin(), constant.end(), [](int l) { return l == 1; }));
}
