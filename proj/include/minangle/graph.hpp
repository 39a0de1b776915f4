#pragma once

#include "minangle/matrix.hpp"
#include "minangle/rref.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

namespace minangle {

struct SubspaceGraph {
  IntSparseMatrix indicator;                  // Y, P x N, Y(i,j) = 1(Xr(i,j) != 0)
  std::optional<IntSparseMatrix> adjacency;   // A = Y^T Y, only when requested

  int num_observations() const noexcept { return static_cast<int>(indicator.cols()); }
};

/// Support pattern of the zero-flushed reduced matrix.
IntSparseMatrix indicator(const RrefResult& r);
IntSparseMatrix indicator(const SparseMatrix& reduced);

/// Literal A = Y^T Y in integer arithmetic.
IntSparseMatrix adjacency(const IntSparseMatrix& y);

SubspaceGraph build_graph(const RrefResult& r, bool materialize_adjacency = false);

struct ComponentPartition {
  std::vector<int> assignment;            // observation -> component id
  std::vector<std::vector<int>> members;  // component id -> sorted observations

  int num_components() const noexcept { return static_cast<int>(members.size()); }
  int num_observations() const noexcept { return static_cast<int>(assignment.size()); }
};

/// Connected components of G(A). Computed from the row supports of Y (all
/// columns sharing a nonzero row are linked), so A is never formed. Component
/// ids follow the smallest member index.
ComponentPartition components(const SubspaceGraph& g);

/// Same partition from an explicit square adjacency, edges where A(i,j) > 0, i != j.
ComponentPartition components_from_adjacency(const IntSparseMatrix& a);

/// Component size -> number of components of that size.
std::map<std::size_t, std::size_t> size_histogram(const ComponentPartition& p);

/// Builds a partition from a raw assignment, renumbering ids by smallest member.
ComponentPartition make_partition(const std::vector<int>& assignment);

}  // namespace minangle
