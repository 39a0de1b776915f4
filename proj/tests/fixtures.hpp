#pragma once

#include "minangle/matrix.hpp"

#include <random>
#include <vector>

namespace fixtures {

/// Entries in [-5, 5], sizes up to 8 x 8, a quarter zeros, sometimes a copied column.
inline std::vector<std::vector<long>> random_integer_matrix(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> size(1, 8), value(-5, 5), coin(0, 3);
  const int rows = size(rng), cols = size(rng);
  std::vector<std::vector<long>> m(rows, std::vector<long>(cols));
  for (auto& row : m) {
    for (auto& v : row) v = coin(rng) == 0 ? 0 : value(rng);
  }
  // plant exact dependencies now and then
  if (cols > 1 && coin(rng) < 2) {
    std::uniform_int_distribution<int> col(0, cols - 1);
    const int src = col(rng), dst = col(rng);
    const long sign = coin(rng) < 2 ? 1 : -1;
    for (auto& row : m) row[dst] = sign * row[src];
  }
  return m;
}

inline minangle::DenseMatrix to_dense(const std::vector<std::vector<long>>& x) {
  minangle::DenseMatrix m(static_cast<Eigen::Index>(x.size()), static_cast<Eigen::Index>(x[0].size()));
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < x[0].size(); ++j) m(i, j) = static_cast<double>(x[i][j]);
  }
  return m;
}

}  // namespace fixtures
