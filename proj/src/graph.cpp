#include "minangle/graph.hpp"

#include "minangle/error.hpp"

#include <numeric>
#include <unordered_map>

namespace minangle {

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(int n) : parent_(n), size_(n, 1) { std::iota(parent_.begin(), parent_.end(), 0); }

  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
  }

 private:
  std::vector<int> parent_;
  std::vector<int> size_;
};

ComponentPartition from_sets(DisjointSets& sets, int n) {
  std::vector<int> roots(n);
  for (int j = 0; j < n; ++j) roots[j] = sets.find(j);
  return make_partition(roots);
}

}  // namespace

IntSparseMatrix indicator(const SparseMatrix& reduced) {
  IntSparseMatrix y(reduced.rows(), reduced.cols());
  std::vector<Eigen::Triplet<int, int>> triplets;
  for (int j = 0; j < reduced.outerSize(); ++j) {
    for (SparseMatrix::InnerIterator it(reduced, j); it; ++it) {
      if (it.value() != 0.0) triplets.emplace_back(it.row(), j, 1);
    }
  }
  y.setFromTriplets(triplets.begin(), triplets.end());
  y.makeCompressed();
  return y;
}

IntSparseMatrix indicator(const RrefResult& r) { return indicator(r.reduced); }

IntSparseMatrix adjacency(const IntSparseMatrix& y) {
  IntSparseMatrix a = (IntSparseMatrix(y.transpose()) * y).pruned();
  a.makeCompressed();
  return a;
}

SubspaceGraph build_graph(const RrefResult& r, bool materialize_adjacency) {
  SubspaceGraph g;
  g.indicator = indicator(r);
  if (materialize_adjacency) g.adjacency = adjacency(g.indicator);
  return g;
}

ComponentPartition components(const SubspaceGraph& g) {
  const IntSparseMatrix& y = g.indicator;
  const int n = static_cast<int>(y.cols());
  DisjointSets sets(n);
  std::vector<int> first_in_row(y.rows(), -1);
  for (int j = 0; j < n; ++j) {
    for (IntSparseMatrix::InnerIterator it(y, j); it; ++it) {
      if (it.value() == 0) continue;
      int& first = first_in_row[it.row()];
      if (first < 0) {
        first = j;
      } else {
        sets.unite(first, j);
      }
    }
  }
  return from_sets(sets, n);
}

ComponentPartition components_from_adjacency(const IntSparseMatrix& a) {
  if (a.rows() != a.cols()) throw Error(ErrorCode::InvalidArgument, "adjacency must be square");
  const int n = static_cast<int>(a.cols());
  DisjointSets sets(n);
  for (int j = 0; j < n; ++j) {
    for (IntSparseMatrix::InnerIterator it(a, j); it; ++it) {
      if (it.row() != j && it.value() > 0) sets.unite(it.row(), j);
    }
  }
  return from_sets(sets, n);
}

ComponentPartition make_partition(const std::vector<int>& assignment) {
  ComponentPartition p;
  p.assignment.resize(assignment.size());
  std::unordered_map<int, int> renumber;
  for (std::size_t j = 0; j < assignment.size(); ++j) {
    const auto [it, inserted] = renumber.emplace(assignment[j], static_cast<int>(p.members.size()));
    if (inserted) p.members.emplace_back();
    p.assignment[j] = it->second;
    p.members[it->second].push_back(static_cast<int>(j));
  }
  return p;
}

std::map<std::size_t, std::size_t> size_histogram(const ComponentPartition& p) {
  std::map<std::size_t, std::size_t> histogram;
  for (const auto& m : p.members) ++histogram[m.size()];
  return histogram;
}

}  // namespace minangle
