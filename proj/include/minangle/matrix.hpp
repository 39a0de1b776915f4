#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include <filesystem>
#include <iosfwd>

namespace minangle {

/// Column-compressed real matrix; features are rows, observations columns.
using SparseMatrix = Eigen::SparseMatrix<double, Eigen::ColMajor, int>;
/// Column-compressed integer matrix used for supports and adjacency counts.
using IntSparseMatrix = Eigen::SparseMatrix<int, Eigen::ColMajor, int>;

using DenseMatrix = Eigen::MatrixXd;
using DenseVector = Eigen::VectorXd;

/// Matrix Market coordinate format, `real general`, 1-based indices,
/// entries in column-major order written with round-trip precision.
void write_matrix_market(std::ostream& out, const SparseMatrix& m);
void write_matrix_market(const std::filesystem::path& path, const SparseMatrix& m);

/// Accepts `coordinate real|integer|pattern general|symmetric`.
SparseMatrix read_matrix_market(std::istream& in);
SparseMatrix read_matrix_market(const std::filesystem::path& path);

/// Copy of the listed columns, in the given order.
SparseMatrix select_columns(const SparseMatrix& m, const std::vector<int>& columns);

/// Largest absolute entry; 0 for an empty matrix.
double max_abs(const SparseMatrix& m);

bool all_finite(const SparseMatrix& m);

}  // namespace minangle
