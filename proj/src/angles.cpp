#include "minangle/angles.hpp"

#include "minangle/error.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

namespace minangle {

DenseMatrix cross_gram(const SubspaceBasis& u, const SubspaceBasis& v) {
  if (u.ambient_dim != v.ambient_dim) {
    throw Error(ErrorCode::AmbientDimensionMismatch,
                "principal angles: ambient dimensions " + std::to_string(u.ambient_dim) + " and " +
                    std::to_string(v.ambient_dim) + " differ");
  }
  DenseMatrix m = DenseMatrix::Zero(u.dim(), v.dim());
  std::size_t a = 0, b = 0;
  while (a < u.support.size() && b < v.support.size()) {
    if (u.support[a] < v.support[b]) {
      ++a;
    } else if (v.support[b] < u.support[a]) {
      ++b;
    } else {
      m.noalias() += u.coords.row(static_cast<Eigen::Index>(a)).transpose() *
                     v.coords.row(static_cast<Eigen::Index>(b));
      ++a;
      ++b;
    }
  }
  return m;
}

PrincipalAngleResult principal_angles(const SubspaceBasis& u, const SubspaceBasis& v) {
  const bool swap = u.dim() > v.dim();
  const DenseMatrix m = swap ? cross_gram(v, u) : cross_gram(u, v);

  PrincipalAngleResult result;
  const auto count = static_cast<std::size_t>(std::min(m.rows(), m.cols()));
  Eigen::VectorXd sigma;
  if (m.isZero(0.0)) {
    sigma = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(count));
  } else if (m.rows() == 1 && m.cols() == 1) {
    sigma = Eigen::VectorXd::Constant(1, std::abs(m(0, 0)));
  } else {
    sigma = Eigen::JacobiSVD<DenseMatrix>(m).singularValues();
  }
  result.cosines.reserve(count);
  result.thetas.reserve(count);
  for (Eigen::Index k = 0; k < sigma.size(); ++k) {
    double c = std::clamp(sigma(k), 0.0, 1.0);
    if (c < kCosineFloor) c = 0.0;
    result.cosines.push_back(c);
  }
  // singular values come out descending; keep it explicit for the contract
  std::sort(result.cosines.begin(), result.cosines.end(), std::greater<>());
  for (const double c : result.cosines) result.thetas.push_back(std::acos(c));
  return result;
}

double dissimilarity(const SubspaceBasis& u, const SubspaceBasis& v) {
  const auto angles = principal_angles(u, v);
  const int larger = std::max(u.dim(), v.dim());
  double sum = 0.0;
  for (const double c : angles.cosines) sum += c;
  return std::clamp(1.0 - sum / larger, 0.0, 1.0);
}

DenseMatrix dissimilarity_matrix(const std::vector<SubspaceBasis>& bases) {
  if (bases.size() < 2) throw Error(ErrorCode::InvalidArgument, "dissimilarity_matrix: need at least two bases");
  const auto n = static_cast<Eigen::Index>(bases.size());
  DenseMatrix d = DenseMatrix::Zero(n, n);
  for (Eigen::Index i = 1; i < n; ++i) {
    for (Eigen::Index j = 0; j < i; ++j) {
      const double value = dissimilarity(bases[i], bases[j]);
      d(i, j) = value;
      d(j, i) = value;
    }
  }
  return d;
}

}  // namespace minangle
