#pragma once

#include "minangle/graph.hpp"
#include "minangle/matrix.hpp"

#include <cstdint>
#include <vector>

namespace minangle {

struct AffinityMatrix {
  DenseMatrix weights;         // symmetric, zero diagonal, entries in [0, 1]
  std::vector<double> scales;  // per-point bandwidth s_i
};

constexpr int kDefaultScalingNeighbour = 7;
constexpr int kDefaultRestarts = 20;

/// W(i,j) = exp(-D(i,j)^2 / (s_i s_j)) where s_i is the distance from i to its
/// k-th nearest neighbour (self excluded). A zero s_i falls back to the
/// smallest positive entry of row i, or 1 if the row has none.
/// Throws TooFewPoints when n <= k, InvalidArgument for k < 1 or a non-square D.
AffinityMatrix local_scaling_affinity(const DenseMatrix& d, int k = kDefaultScalingNeighbour);

struct KMeansOptions {
  int restarts = kDefaultRestarts;
  int max_iterations = 300;
  std::uint64_t seed = 0;
};

struct KMeansResult {
  std::vector<int> labels;  // 0-based, renumbered by first appearance
  DenseMatrix centroids;    // k x dim, rows follow the renumbered labels
  double wcss = 0.0;
  int best_restart = 0;
};

/// Lloyd iterations from k-means++ (D^2-sampling) seeds; the best restart by
/// (WCSS, restart index) wins. Empty clusters are re-seeded from the point
/// farthest from its centroid. Points are the rows of `points`.
/// Throws EmptyInput for no points, InvalidArgument when k < 1 or k > n.
KMeansResult kmeans(const DenseMatrix& points, int k, const KMeansOptions& options = {});

struct SpectralOptions {
  int restarts = kDefaultRestarts;
  std::uint64_t seed = 0;
};

struct SpectralResult {
  std::vector<int> labels;    // 0-based
  std::vector<int> isolated;  // zero-degree points, labelled by nearest centroid
  DenseMatrix embedding;      // n x k unit rows (zero rows for isolated points)
};

/// Ng-Jordan-Weiss: top-k eigenvectors of D^-1/2 W D^-1/2 over the points of
/// positive degree, sign-canonicalised (largest-magnitude entry positive), rows
/// normalised to unit length, then k-means.
/// Throws TooFewPoints when n < k (or fewer than k points have positive
/// degree), DegenerateAffinity when W is entirely zero.
SpectralResult spectral_cluster(const DenseMatrix& w, int k, const SpectralOptions& options = {});

/// Labels are 1..K on both levels.
struct ClusterAssignment {
  std::vector<int> subspace_labels;     // component id -> label
  std::vector<int> observation_labels;  // observation -> label
  int k = 0;
};

/// label(observation) = subspace_labels[assignment(observation)].
/// Throws MissingComponentLabel when a component has no label.
std::vector<int> propagate(const ComponentPartition& p, const std::vector<int>& subspace_labels);

/// Attach each isolated point to the label of its nearest non-isolated point under d.
void attach_isolated(const DenseMatrix& d, const std::vector<int>& isolated, std::vector<int>& labels);

/// Euclidean distances between the columns of x.
DenseMatrix column_distances(const SparseMatrix& x);

/// Spectral clustering of the raw columns (Euclidean distance, local scaling).
/// Returns 1-based labels.
std::vector<int> baseline_sc_x(const SparseMatrix& x, int k, int scaling_k = kDefaultScalingNeighbour,
                               const SpectralOptions& options = {});

/// Spectral clustering with the echelon adjacency (diagonal zeroed) as the
/// affinity. Returns 1-based labels.
std::vector<int> baseline_sc_a(const IntSparseMatrix& a, int k, const SpectralOptions& options = {});

}  // namespace minangle
