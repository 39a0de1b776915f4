#include "minangle/spectral.hpp"

#include "minangle/error.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

namespace minangle {

AffinityMatrix local_scaling_affinity(const DenseMatrix& d, int k) {
  if (d.rows() != d.cols()) throw Error(ErrorCode::InvalidArgument, "affinity: dissimilarity must be square");
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "affinity: neighbour index must be >= 1");
  const auto n = d.rows();
  if (n <= k) {
    throw Error(ErrorCode::TooFewPoints, "affinity: " + std::to_string(n) + " points cannot have a " +
                                             std::to_string(k) + "-th nearest neighbour");
  }

  AffinityMatrix a;
  a.scales.resize(static_cast<std::size_t>(n));
  std::vector<double> row;
  row.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    row.clear();
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j != i) row.push_back(d(i, j));
    }
    std::nth_element(row.begin(), row.begin() + (k - 1), row.end());
    double s = row[static_cast<std::size_t>(k - 1)];
    if (s <= 0.0) {
      s = std::numeric_limits<double>::infinity();
      for (const double v : row) {
        if (v > 0.0) s = std::min(s, v);
      }
      if (!std::isfinite(s)) s = 1.0;
    }
    a.scales[static_cast<std::size_t>(i)] = s;
  }

  a.weights.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    a.weights(i, i) = 0.0;
    for (Eigen::Index j = 0; j < i; ++j) {
      const double v = std::exp(-d(i, j) * d(i, j) / (a.scales[i] * a.scales[j]));
      a.weights(i, j) = v;
      a.weights(j, i) = v;
    }
  }
  return a;
}

namespace {

struct Run {
  std::vector<int> labels;
  DenseMatrix centroids;
  double wcss = 0.0;
};

int nearest(const DenseMatrix& centroids, const Eigen::RowVectorXd& x, double& best_dist) {
  int best = 0;
  best_dist = std::numeric_limits<double>::infinity();
  for (Eigen::Index c = 0; c < centroids.rows(); ++c) {
    const double dist = (centroids.row(c) - x).squaredNorm();
    if (dist < best_dist) {
      best_dist = dist;
      best = static_cast<int>(c);
    }
  }
  return best;
}

DenseMatrix plus_plus_seeds(const DenseMatrix& points, int k, std::mt19937_64& rng) {
  const auto n = points.rows();
  DenseMatrix centers(k, points.cols());
  std::uniform_int_distribution<Eigen::Index> pick(0, n - 1);
  centers.row(0) = points.row(pick(rng));
  std::vector<double> d2(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) d2[i] = (points.row(i) - centers.row(0)).squaredNorm();
  for (int c = 1; c < k; ++c) {
    const double total = std::accumulate(d2.begin(), d2.end(), 0.0);
    Eigen::Index chosen = 0;
    if (total > 0.0) {
      std::uniform_real_distribution<double> u(0.0, total);
      double target = u(rng);
      chosen = -1;
      Eigen::Index last_positive = 0;
      for (Eigen::Index i = 0; i < n; ++i) {
        if (d2[i] <= 0.0) continue;
        last_positive = i;
        target -= d2[i];
        if (target < 0.0) {
          chosen = i;
          break;
        }
      }
      if (chosen < 0) chosen = last_positive;
    } else {
      chosen = pick(rng);
    }
    centers.row(c) = points.row(chosen);
    for (Eigen::Index i = 0; i < n; ++i) d2[i] = std::min(d2[i], (points.row(i) - centers.row(c)).squaredNorm());
  }
  return centers;
}

Run lloyd(const DenseMatrix& points, DenseMatrix centers, int max_iterations) {
  const auto n = points.rows();
  const auto k = centers.rows();
  Run run;
  run.labels.assign(static_cast<std::size_t>(n), -1);
  std::vector<double> dist(static_cast<std::size_t>(n));
  for (int iter = 0; iter < max_iterations; ++iter) {
    bool changed = false;
    for (Eigen::Index i = 0; i < n; ++i) {
      const int c = nearest(centers, points.row(i), dist[i]);
      if (c != run.labels[i]) {
        run.labels[i] = c;
        changed = true;
      }
    }
    std::vector<int> counts(static_cast<std::size_t>(k), 0);
    DenseMatrix sums = DenseMatrix::Zero(k, points.cols());
    for (Eigen::Index i = 0; i < n; ++i) {
      ++counts[run.labels[i]];
      sums.row(run.labels[i]) += points.row(i);
    }
    std::vector<char> taken(static_cast<std::size_t>(n), 0);
    for (Eigen::Index c = 0; c < k; ++c) {
      if (counts[c] > 0) {
        centers.row(c) = sums.row(c) / counts[c];
        continue;
      }
      // empty cluster: restart it at the worst-fitted point not already used
      Eigen::Index far = -1;
      for (Eigen::Index i = 0; i < n; ++i) {
        if (!taken[i] && counts[run.labels[i]] > 1 && (far < 0 || dist[i] > dist[far])) far = i;
      }
      if (far < 0) continue;
      taken[far] = 1;
      --counts[run.labels[far]];
      run.labels[far] = static_cast<int>(c);
      counts[c] = 1;
      centers.row(c) = points.row(far);
      changed = true;
    }
    if (!changed) break;
  }
  run.wcss = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    double d = 0.0;
    run.labels[i] = nearest(centers, points.row(i), d);
    run.wcss += d;
  }
  run.centroids = std::move(centers);
  return run;
}

}  // namespace

KMeansResult kmeans(const DenseMatrix& points, int k, const KMeansOptions& options) {
  if (points.rows() == 0) throw Error(ErrorCode::EmptyInput, "kmeans: no points");
  if (k < 1 || k > points.rows()) {
    throw Error(ErrorCode::InvalidArgument, "kmeans: cluster count must lie in [1, n]");
  }
  const int restarts = std::max(1, options.restarts);

  Run best;
  int best_restart = -1;
  for (int r = 0; r < restarts; ++r) {
    std::seed_seq seq{static_cast<std::uint32_t>(options.seed), static_cast<std::uint32_t>(options.seed >> 32),
                      static_cast<std::uint32_t>(r)};
    std::mt19937_64 rng(seq);
    Run run = lloyd(points, plus_plus_seeds(points, k, rng), options.max_iterations);
    if (best_restart < 0 || run.wcss < best.wcss) {
      best = std::move(run);
      best_restart = r;
    }
  }

  KMeansResult result;
  result.wcss = best.wcss;
  result.best_restart = best_restart;
  std::vector<int> renumber(static_cast<std::size_t>(k), -1);
  int next = 0;
  result.labels.resize(best.labels.size());
  for (std::size_t i = 0; i < best.labels.size(); ++i) {
    int& target = renumber[best.labels[i]];
    if (target < 0) target = next++;
    result.labels[i] = target;
  }
  for (int& target : renumber) {
    if (target < 0) target = next++;
  }
  result.centroids.resize(k, points.cols());
  for (int c = 0; c < k; ++c) result.centroids.row(renumber[c]) = best.centroids.row(c);
  return result;
}

namespace {

/// Eigenvectors for the k largest eigenvalues, largest first.
DenseMatrix top_eigenvectors(DenseMatrix m, int k) {
  const auto n = static_cast<lapack_int>(m.rows());
  std::vector<double> values(static_cast<std::size_t>(n));
  DenseMatrix vectors(n, k);  // ascending order, as LAPACK returns them
  std::vector<lapack_int> support(2 * static_cast<std::size_t>(k));
  lapack_int found = 0;
  const DenseMatrix original = m;
  lapack_int info = LAPACKE_dsyevr(LAPACK_COL_MAJOR, 'V', 'I', 'L', n, m.data(), n, 0.0, 0.0, n - k + 1, n, 0.0,
                                   &found, values.data(), vectors.data(), n, support.data());
  if (info != 0 || found != k) {
    // MRRR can come up short on large clusters of equal eigenvalues; the
    // divide-and-conquer driver computes the full spectrum instead
    m = original;
    info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'L', n, m.data(), n, values.data());
    if (info != 0) {
      throw Error(ErrorCode::Numerical, "spectral: symmetric eigensolver failed (info=" + std::to_string(info) + ")");
    }
    vectors = m.rightCols(k);
  }
  DenseMatrix out(n, k);
  for (int c = 0; c < k; ++c) out.col(c) = vectors.col(k - 1 - c);
  for (int c = 0; c < k; ++c) {
    Eigen::Index arg = 0;
    out.col(c).cwiseAbs().maxCoeff(&arg);
    if (out(arg, c) < 0.0) out.col(c) = -out.col(c);
  }
  return out;
}

}  // namespace

SpectralResult spectral_cluster(const DenseMatrix& w, int k, const SpectralOptions& options) {
  if (w.rows() != w.cols()) throw Error(ErrorCode::InvalidArgument, "spectral: affinity must be square");
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "spectral: cluster count must be >= 1");
  const auto n = w.rows();
  if (n < k) {
    throw Error(ErrorCode::TooFewPoints,
                "spectral: " + std::to_string(n) + " points for " + std::to_string(k) + " clusters");
  }
  if (w.isZero(0.0)) throw Error(ErrorCode::DegenerateAffinity, "spectral: affinity matrix is entirely zero");

  const Eigen::VectorXd degree = w.rowwise().sum();
  std::vector<Eigen::Index> active;
  SpectralResult result;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (degree(i) > 0.0) {
      active.push_back(i);
    } else {
      result.isolated.push_back(static_cast<int>(i));
    }
  }
  const auto m = static_cast<Eigen::Index>(active.size());
  if (m < k) {
    throw Error(ErrorCode::TooFewPoints, "spectral: only " + std::to_string(m) +
                                             " points have positive degree for " + std::to_string(k) + " clusters");
  }

  DenseMatrix normalized(m, m);
  Eigen::VectorXd inv_sqrt(m);
  for (Eigen::Index a = 0; a < m; ++a) inv_sqrt(a) = 1.0 / std::sqrt(degree(active[a]));
  for (Eigen::Index b = 0; b < m; ++b) {
    for (Eigen::Index a = 0; a < m; ++a) {
      normalized(a, b) = inv_sqrt(a) * w(active[a], active[b]) * inv_sqrt(b);
    }
  }

  const DenseMatrix vectors = top_eigenvectors(std::move(normalized), k);
  result.embedding = DenseMatrix::Zero(n, k);
  for (Eigen::Index a = 0; a < m; ++a) {
    const double norm = vectors.row(a).norm();
    if (norm > 0.0) result.embedding.row(active[a]) = vectors.row(a) / norm;
  }

  DenseMatrix rows(m, k);
  for (Eigen::Index a = 0; a < m; ++a) rows.row(a) = result.embedding.row(active[a]);
  const auto clustering = kmeans(rows, k, {options.restarts, 300, options.seed});

  result.labels.assign(static_cast<std::size_t>(n), 0);
  for (Eigen::Index a = 0; a < m; ++a) result.labels[active[a]] = clustering.labels[a];
  for (const int i : result.isolated) {
    double unused = 0.0;
    result.labels[i] = nearest(clustering.centroids, result.embedding.row(i), unused);
  }
  return result;
}

std::vector<int> propagate(const ComponentPartition& p, const std::vector<int>& subspace_labels) {
  if (subspace_labels.size() < static_cast<std::size_t>(p.num_components())) {
    throw Error(ErrorCode::MissingComponentLabel,
                "propagate: component " + std::to_string(subspace_labels.size()) + " has no label");
  }
  std::vector<int> labels(p.assignment.size());
  for (std::size_t j = 0; j < labels.size(); ++j) labels[j] = subspace_labels[p.assignment[j]];
  return labels;
}

void attach_isolated(const DenseMatrix& d, const std::vector<int>& isolated, std::vector<int>& labels) {
  if (isolated.empty()) return;
  std::vector<char> is_isolated(labels.size(), 0);
  for (const int i : isolated) is_isolated[i] = 1;
  const auto fixed = labels;
  for (const int i : isolated) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < labels.size(); ++j) {
      if (is_isolated[j]) continue;
      if (d(i, static_cast<Eigen::Index>(j)) < best) {
        best = d(i, static_cast<Eigen::Index>(j));
        labels[i] = fixed[j];
      }
    }
  }
}

DenseMatrix column_distances(const SparseMatrix& x) {
  const DenseMatrix gram = DenseMatrix(SparseMatrix(x.transpose()) * x);
  const auto n = gram.rows();
  DenseMatrix d(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      d(i, j) = i == j ? 0.0 : std::sqrt(std::max(0.0, gram(i, i) + gram(j, j) - 2.0 * gram(i, j)));
    }
  }
  return d;
}

namespace {

std::vector<int> one_based(std::vector<int> labels) {
  for (int& l : labels) ++l;
  return labels;
}

}  // namespace

std::vector<int> baseline_sc_x(const SparseMatrix& x, int k, int scaling_k, const SpectralOptions& options) {
  if (k == 1) return std::vector<int>(static_cast<std::size_t>(x.cols()), 1);
  const DenseMatrix d = column_distances(x);
  const int neighbour = std::clamp(scaling_k, 1, std::max<int>(1, static_cast<int>(d.rows()) - 1));
  const auto affinity = local_scaling_affinity(d, neighbour);
  return one_based(spectral_cluster(affinity.weights, k, options).labels);
}

std::vector<int> baseline_sc_a(const IntSparseMatrix& a, int k, const SpectralOptions& options) {
  if (a.rows() != a.cols()) throw Error(ErrorCode::InvalidArgument, "baseline_sc_a: adjacency must be square");
  if (k == 1) return std::vector<int>(static_cast<std::size_t>(a.cols()), 1);
  DenseMatrix w = DenseMatrix(a.cast<double>());
  w.diagonal().setZero();
  return one_based(spectral_cluster(w, k, options).labels);
}

}  // namespace minangle
