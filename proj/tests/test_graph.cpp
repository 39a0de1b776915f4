#include "minangle/graph.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

using namespace minangle;

namespace {

IntSparseMatrix int_sparse(const Eigen::MatrixXi& m) { return m.sparseView(); }

bool same_partition(const ComponentPartition& a, const ComponentPartition& b) {
  if (a.num_observations() != b.num_observations()) return false;
  for (int i = 0; i < a.num_observations(); ++i) {
    for (int j = 0; j < a.num_observations(); ++j) {
      if ((a.assignment[i] == a.assignment[j]) != (b.assignment[i] == b.assignment[j])) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("indicator is the support of the reduced matrix") {
  DenseMatrix xr(2, 2);
  xr << 1, 2, 0, 0;
  const IntSparseMatrix y = indicator(SparseMatrix(xr.sparseView()));
  Eigen::MatrixXi expected(2, 2);
  expected << 1, 1, 0, 0;
  CHECK(Eigen::MatrixXi(y) == expected);

  const IntSparseMatrix eye = indicator(SparseMatrix(DenseMatrix::Identity(3, 3).sparseView()));
  CHECK(Eigen::MatrixXi(eye) == Eigen::MatrixXi::Identity(3, 3));
}

TEST_CASE("components of simple adjacency patterns") {
  Eigen::MatrixXi blocks(3, 3);
  blocks << 1, 1, 0, 1, 1, 0, 0, 0, 1;
  const auto p = components_from_adjacency(int_sparse(blocks));
  CHECK(p.num_components() == 2);
  CHECK(p.assignment == std::vector<int>{0, 0, 1});

  const auto diag = components_from_adjacency(int_sparse(Eigen::MatrixXi::Identity(4, 4)));
  CHECK(diag.num_components() == 4);
  CHECK(diag.assignment == std::vector<int>{0, 1, 2, 3});

  const auto full = components_from_adjacency(int_sparse(Eigen::MatrixXi::Ones(4, 4)));
  CHECK(full.num_components() == 1);
}

TEST_CASE("component ids follow the smallest member") {
  SubspaceGraph g;
  Eigen::MatrixXi y(2, 4);
  y << 0, 1, 0, 1,  // links 1 and 3
      1, 0, 1, 0;   // links 0 and 2
  g.indicator = int_sparse(y);
  const auto p = components(g);
  CHECK(p.assignment == std::vector<int>{0, 1, 0, 1});
  CHECK(p.members[0] == std::vector<int>{0, 2});
  CHECK(p.members[1] == std::vector<int>{1, 3});
}

TEST_CASE("size histogram") {
  CHECK(size_histogram(make_partition({0, 0, 1})) == std::map<std::size_t, std::size_t>{{1, 1}, {2, 1}});
  CHECK(size_histogram(make_partition({0, 1, 2, 3, 4})) == std::map<std::size_t, std::size_t>{{1, 5}});
  CHECK(size_histogram(make_partition({7, 7, 7})) == std::map<std::size_t, std::size_t>{{3, 1}});
}

TEST_CASE("row-support components equal the literal A = Y^T Y construction") {
  std::mt19937_64 rng(11);
  std::bernoulli_distribution on(0.08);
  for (int trial = 0; trial < 60; ++trial) {
    const int p = 5 + trial % 20, n = 4 + trial % 25;
    Eigen::MatrixXi y = Eigen::MatrixXi::Zero(p, n);
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < p; ++i) y(i, j) = on(rng) ? 1 : 0;
      if (y.col(j).sum() == 0) y(static_cast<int>(rng() % p), j) = 1;
    }
    SubspaceGraph g;
    g.indicator = int_sparse(y);
    const IntSparseMatrix a = adjacency(g.indicator);
    const Eigen::MatrixXi dense_a = y.transpose() * y;
    CHECK(Eigen::MatrixXi(a) == dense_a);
    CHECK(Eigen::MatrixXi(a) == Eigen::MatrixXi(a).transpose());
    for (int j = 0; j < n; ++j) CHECK(dense_a(j, j) == y.col(j).sum());

    const auto fast = components(g);
    const auto literal = components_from_adjacency(a);
    CHECK(fast.assignment == literal.assignment);

    // partition is exhaustive and disjoint
    std::vector<int> all;
    for (const auto& m : fast.members) all.insert(all.end(), m.begin(), m.end());
    std::sort(all.begin(), all.end());
    std::vector<int> expected(n);
    std::iota(expected.begin(), expected.end(), 0);
    CHECK(all == expected);

    std::size_t total = 0;
    for (const auto& [size, count] : size_histogram(fast)) total += size * count;
    CHECK(total == static_cast<std::size_t>(n));

    // cross-component pairs share no nonzero row
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (fast.assignment[i] != fast.assignment[j]) CHECK(dense_a(i, j) == 0);
      }
    }

    // reordering observations only relabels components
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    Eigen::MatrixXi shuffled(p, n);
    for (int j = 0; j < n; ++j) shuffled.col(j) = y.col(perm[j]);
    SubspaceGraph gs;
    gs.indicator = int_sparse(shuffled);
    const auto ps = components(gs);
    for (int a1 = 0; a1 < n; ++a1) {
      for (int b1 = 0; b1 < n; ++b1) {
        CHECK((ps.assignment[a1] == ps.assignment[b1]) ==
              (fast.assignment[perm[a1]] == fast.assignment[perm[b1]]));
      }
    }
  }
}

TEST_CASE("graph from an echelon form with a dependency") {
  DenseMatrix x(3, 4);
  x << 1, 0, 1, 0,
       0, 1, 1, 0,
       0, 0, 0, 1;
  const auto g = build_graph(rref(x), true);
  REQUIRE(g.adjacency.has_value());
  const auto p = components(g);
  CHECK(p.assignment == std::vector<int>{0, 0, 0, 1});
  CHECK(same_partition(p, components_from_adjacency(*g.adjacency)));
}
