#pragma once

#include "minangle/matrix.hpp"

#include <utility>
#include <vector>

namespace minangle {

struct RrefResult {
  SparseMatrix reduced;            // Xr, same shape as the input
  std::vector<int> pivot_columns;  // strictly increasing; pivot k sits in row k
  int rank = 0;
  double zero_threshold = 0.0;     // absolute flush level used (tol * max|X|)
};

constexpr double kDefaultRrefTolerance = 1e-10;

/// Gauss-Jordan elimination with partial pivoting on a dense row-major
/// working copy. The pivot in each column is the largest-magnitude candidate
/// at or below the current row (ties: lowest row). Entries whose magnitude
/// drops to tol * max|X| or below are flushed to exact zero.
///
/// Throws NonFiniteInput for NaN/Inf entries, InvalidArgument for tol outside (0, 1).
RrefResult rref(const SparseMatrix& x, double tol = kDefaultRrefTolerance);
RrefResult rref(const DenseMatrix& x, double tol = kDefaultRrefTolerance);

/// (pivot column, coefficient) pairs expressing column j of X as a combination
/// of pivot columns; read directly off column j of Xr.
/// Throws IsPivotColumn when j is a pivot, InvalidArgument when out of range.
std::vector<std::pair<int, double>> nonpivot_coefficients(const RrefResult& r, int j);

/// Mechanical check of the four echelon conditions: leading entries equal one,
/// leading entries alone in their column, leading entries move strictly right,
/// zero rows at the bottom.
bool satisfies_rref_conditions(const SparseMatrix& reduced);

}  // namespace minangle
