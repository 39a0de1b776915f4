#pragma once

#include "minangle/graph.hpp"
#include "minangle/matrix.hpp"

#include <vector>

namespace minangle {

/// Column-orthonormal basis of a linear subspace of R^P, stored on its row
/// support: Q(support[r], c) = coords(r, c), every other row is zero.
struct SubspaceBasis {
  int ambient_dim = 0;
  std::vector<int> support;  // sorted row indices
  DenseMatrix coords;        // |support| x d
  int component_id = -1;

  int dim() const noexcept { return static_cast<int>(coords.cols()); }
  DenseMatrix dense() const;

  /// Build from a full P x d orthonormal matrix (rows that are exactly zero are dropped).
  static SubspaceBasis from_dense(const DenseMatrix& q, int component_id = -1);
};

constexpr double kDefaultRankTolerance = 1e-8;

/// Left singular vectors of the uncentered block whose singular values exceed
/// rank_tol * sigma_max. No mean-centering: subspaces pass through the origin.
/// Throws ZeroBlock for an all-zero block, EmptyInput for no columns.
SubspaceBasis subspace_basis(const SparseMatrix& block, double rank_tol = kDefaultRankTolerance,
                             int component_id = -1);

/// Basis of the span of the listed columns of x.
SubspaceBasis subspace_basis(const SparseMatrix& x, const std::vector<int>& columns,
                             double rank_tol = kDefaultRankTolerance, int component_id = -1);

/// One basis per component, in component id order.
std::vector<SubspaceBasis> component_bases(const SparseMatrix& x, const ComponentPartition& p,
                                           double rank_tol = kDefaultRankTolerance);

/// ||(I - Q Q^T) v|| for a dense vector v of length P.
double projection_residual(const SubspaceBasis& q, const DenseVector& v);

}  // namespace minangle
