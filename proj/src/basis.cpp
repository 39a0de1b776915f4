#include "minangle/basis.hpp"

#include "minangle/error.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace minangle {

DenseMatrix SubspaceBasis::dense() const {
  DenseMatrix q = DenseMatrix::Zero(ambient_dim, dim());
  for (std::size_t r = 0; r < support.size(); ++r) q.row(support[r]) = coords.row(static_cast<Eigen::Index>(r));
  return q;
}

SubspaceBasis SubspaceBasis::from_dense(const DenseMatrix& q, int component_id) {
  SubspaceBasis b;
  b.ambient_dim = static_cast<int>(q.rows());
  b.component_id = component_id;
  for (Eigen::Index i = 0; i < q.rows(); ++i) {
    if ((q.row(i).array() != 0.0).any()) b.support.push_back(static_cast<int>(i));
  }
  b.coords.resize(static_cast<Eigen::Index>(b.support.size()), q.cols());
  for (std::size_t r = 0; r < b.support.size(); ++r) b.coords.row(static_cast<Eigen::Index>(r)) = q.row(b.support[r]);
  return b;
}

SubspaceBasis subspace_basis(const SparseMatrix& x, const std::vector<int>& columns,
                             double rank_tol, int component_id) {
  if (columns.empty()) throw Error(ErrorCode::EmptyInput, "subspace_basis: no columns");

  std::vector<int> support;
  for (const int j : columns) {
    for (SparseMatrix::InnerIterator it(x, j); it; ++it) {
      if (!std::isfinite(it.value())) throw Error(ErrorCode::NonFiniteInput, "subspace_basis: non-finite entry");
      if (it.value() != 0.0) support.push_back(it.row());
    }
  }
  std::sort(support.begin(), support.end());
  support.erase(std::unique(support.begin(), support.end()), support.end());
  if (support.empty()) throw Error(ErrorCode::ZeroBlock, "subspace_basis: block is entirely zero");

  std::unordered_map<int, int> local;
  for (std::size_t r = 0; r < support.size(); ++r) local.emplace(support[r], static_cast<int>(r));
  DenseMatrix block = DenseMatrix::Zero(static_cast<Eigen::Index>(support.size()),
                                        static_cast<Eigen::Index>(columns.size()));
  for (std::size_t c = 0; c < columns.size(); ++c) {
    for (SparseMatrix::InnerIterator it(x, columns[c]); it; ++it) {
      block(local.at(it.row()), static_cast<Eigen::Index>(c)) = it.value();
    }
  }

  SubspaceBasis b;
  b.ambient_dim = static_cast<int>(x.rows());
  b.component_id = component_id;
  b.support = std::move(support);
  if (block.cols() == 1) {
    b.coords = block / block.norm();
    return b;
  }
  Eigen::BDCSVD<DenseMatrix> svd(block, Eigen::ComputeThinU);
  const auto& sigma = svd.singularValues();
  const double cutoff = rank_tol * sigma(0);
  Eigen::Index d = 0;
  while (d < sigma.size() && sigma(d) > cutoff) ++d;
  b.coords = svd.matrixU().leftCols(std::max<Eigen::Index>(d, 1));
  return b;
}

SubspaceBasis subspace_basis(const SparseMatrix& block, double rank_tol, int component_id) {
  std::vector<int> columns(static_cast<std::size_t>(block.cols()));
  for (std::size_t j = 0; j < columns.size(); ++j) columns[j] = static_cast<int>(j);
  return subspace_basis(block, columns, rank_tol, component_id);
}

std::vector<SubspaceBasis> component_bases(const SparseMatrix& x, const ComponentPartition& p,
                                           double rank_tol) {
  std::vector<SubspaceBasis> bases;
  bases.reserve(p.members.size());
  for (int c = 0; c < p.num_components(); ++c) bases.push_back(subspace_basis(x, p.members[c], rank_tol, c));
  return bases;
}

double projection_residual(const SubspaceBasis& q, const DenseVector& v) {
  DenseVector restricted(static_cast<Eigen::Index>(q.support.size()));
  for (std::size_t r = 0; r < q.support.size(); ++r) restricted(static_cast<Eigen::Index>(r)) = v(q.support[r]);
  const DenseVector coefficients = q.coords.transpose() * restricted;
  const DenseVector in_span = q.coords * coefficients;
  // components outside the support are untouched by the projection
  DenseVector outside = v;
  for (const int i : q.support) outside(i) = 0.0;
  return std::sqrt(outside.squaredNorm() + (restricted - in_span).squaredNorm());
}

}  // namespace minangle
