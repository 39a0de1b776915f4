#include "minangle/rref.hpp"

#include "minangle/error.hpp"

#include <algorithm>
#include <cmath>

namespace minangle {

namespace {

using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

RrefResult eliminate(RowMajor m, double tol) {
  if (!(tol > 0.0 && tol < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "rref: tolerance must lie in (0, 1)");
  }
  if (!m.allFinite()) throw Error(ErrorCode::NonFiniteInput, "rref: input has non-finite entries");

  const int rows = static_cast<int>(m.rows());
  const int cols = static_cast<int>(m.cols());
  const double threshold = tol * (m.size() ? m.cwiseAbs().maxCoeff() : 0.0);
  for (Eigen::Index k = 0; k < m.size(); ++k) {
    if (std::abs(m.data()[k]) <= threshold) m.data()[k] = 0.0;
  }

  RrefResult result;
  result.zero_threshold = threshold;
  std::vector<int> support;  // nonzero columns of the current pivot row
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int best = -1;
    double best_mag = 0.0;
    for (int i = r; i < rows; ++i) {
      const double mag = std::abs(m(i, c));
      if (mag > best_mag) {
        best_mag = mag;
        best = i;
      }
    }
    if (best < 0) continue;
    if (best != r) m.row(best).swap(m.row(r));

    const double pivot = m(r, c);
    support.clear();
    for (int j = c; j < cols; ++j) {
      if (m(r, j) != 0.0) {
        m(r, j) /= pivot;
        if (std::abs(m(r, j)) <= threshold) {
          m(r, j) = 0.0;
        } else {
          support.push_back(j);
        }
      }
    }
    m(r, c) = 1.0;

    for (int i = 0; i < rows; ++i) {
      if (i == r) continue;
      const double factor = m(i, c);
      if (factor == 0.0) continue;
      for (const int j : support) {
        double v = m(i, j) - factor * m(r, j);
        if (std::abs(v) <= threshold) v = 0.0;
        m(i, j) = v;
      }
      m(i, c) = 0.0;
    }
    result.pivot_columns.push_back(c);
    ++r;
  }
  result.rank = r;

  std::vector<Eigen::Triplet<double, int>> triplets;
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      if (m(i, j) != 0.0) triplets.emplace_back(i, j, m(i, j));
    }
  }
  result.reduced.resize(rows, cols);
  result.reduced.setFromTriplets(triplets.begin(), triplets.end());
  result.reduced.makeCompressed();
  return result;
}

}  // namespace

RrefResult rref(const SparseMatrix& x, double tol) {
  if (!all_finite(x)) throw Error(ErrorCode::NonFiniteInput, "rref: input has non-finite entries");
  RowMajor dense = RowMajor::Zero(x.rows(), x.cols());
  for (int j = 0; j < x.outerSize(); ++j) {
    for (SparseMatrix::InnerIterator it(x, j); it; ++it) dense(it.row(), j) = it.value();
  }
  return eliminate(std::move(dense), tol);
}

RrefResult rref(const DenseMatrix& x, double tol) {
  return eliminate(RowMajor(x), tol);
}

std::vector<std::pair<int, double>> nonpivot_coefficients(const RrefResult& r, int j) {
  if (j < 0 || j >= r.reduced.cols()) {
    throw Error(ErrorCode::InvalidArgument, "nonpivot_coefficients: column out of range");
  }
  if (std::binary_search(r.pivot_columns.begin(), r.pivot_columns.end(), j)) {
    throw Error(ErrorCode::IsPivotColumn, "column " + std::to_string(j) + " is a pivot column");
  }
  std::vector<std::pair<int, double>> coefficients;
  for (SparseMatrix::InnerIterator it(r.reduced, j); it; ++it) {
    if (it.row() < r.rank) coefficients.emplace_back(r.pivot_columns[it.row()], it.value());
  }
  return coefficients;
}

bool satisfies_rref_conditions(const SparseMatrix& reduced) {
  const int rows = static_cast<int>(reduced.rows());
  std::vector<int> leading(rows, -1);
  std::vector<double> leading_value(rows, 0.0);
  std::vector<int> column_count(reduced.cols(), 0);
  for (int j = 0; j < reduced.outerSize(); ++j) {
    for (SparseMatrix::InnerIterator it(reduced, j); it; ++it) {
      if (it.value() == 0.0) continue;
      ++column_count[j];
      if (leading[it.row()] < 0) {
        leading[it.row()] = j;
        leading_value[it.row()] = it.value();
      }
    }
  }
  bool seen_zero_row = false;
  int previous = -1;
  for (int i = 0; i < rows; ++i) {
    if (leading[i] < 0) {
      seen_zero_row = true;
      continue;
    }
    if (seen_zero_row) return false;                  // zero rows at the bottom
    if (leading_value[i] != 1.0) return false;        // leading entry is one
    if (column_count[leading[i]] != 1) return false;  // alone in its column
    if (leading[i] <= previous) return false;         // staircase moves right
    previous = leading[i];
  }
  return true;
}

}  // namespace minangle
