#pragma once

#include "minangle/basis.hpp"
#include "minangle/matrix.hpp"

#include <vector>

namespace minangle {

struct PrincipalAngleResult {
  std::vector<double> thetas;   // nondecreasing, radians in [0, pi/2]
  std::vector<double> cosines;  // nonincreasing, in [0, 1]
};

/// Cosines below this are treated as numerical noise and set to zero.
constexpr double kCosineFloor = 1e-14;

/// Principal angles from the singular values of Q_U^T Q_V, clamped into
/// [0, 1] before arccos. Length min(d_U, d_V); argument order is irrelevant.
/// Throws AmbientDimensionMismatch.
PrincipalAngleResult principal_angles(const SubspaceBasis& u, const SubspaceBasis& v);

/// 1 - (1 / d_V) sum_i cos(theta_i), with the lower-dimensional subspace as U.
/// Missing dimensions of the smaller subspace count as maximally dissimilar.
double dissimilarity(const SubspaceBasis& u, const SubspaceBasis& v);

/// Symmetric matrix of pairwise dissimilarities with a zero diagonal.
/// Throws InvalidArgument for fewer than two bases.
DenseMatrix dissimilarity_matrix(const std::vector<SubspaceBasis>& bases);

/// Q_U^T Q_V evaluated on the shared row support.
DenseMatrix cross_gram(const SubspaceBasis& u, const SubspaceBasis& v);

}  // namespace minangle
