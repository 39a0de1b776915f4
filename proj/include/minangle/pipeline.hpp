#pragma once

#include "minangle/basis.hpp"
#include "minangle/corpus.hpp"
#include "minangle/graph.hpp"
#include "minangle/metrics.hpp"
#include "minangle/spectral.hpp"

#include <nlohmann/json.hpp>

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace minangle {

enum class Baseline { None, ScX, ScA };

std::string to_string(Baseline b);
Baseline parse_baseline(const std::string& s);

/// Every tunable of a run with its default. The JSON form is what the
/// `--config` file holds and what reports echo back.
struct PipelineConfig {
  int k = 2;
  double rref_tol = kDefaultRrefTolerance;
  double rank_tol = kDefaultRankTolerance;
  int scaling_k = kDefaultScalingNeighbour;
  int kmeans_restarts = kDefaultRestarts;
  std::uint64_t seed = 0;
  Baseline baseline = Baseline::None;

  int min_df = 1;
  bool normalize = true;
  bool lowercase = true;
  std::vector<std::string> stop_words;

  std::string input;
  std::string labels_output;
  std::string report_output;
  std::string dissimilarity_output;

  /// Throws InvalidArgument on out-of-range values.
  void validate() const;
  TfidfOptions tfidf_options() const;
};

void to_json(nlohmann::json& j, const PipelineConfig& c);
void from_json(const nlohmann::json& j, PipelineConfig& c);

struct StageTiming {
  std::string stage;
  double seconds = 0.0;
};

struct RunReport {
  static constexpr int kSchemaVersion = 1;

  std::string method = "mac";
  int num_features = 0;
  int num_observations = 0;
  int rank = 0;
  int num_components = 0;
  std::map<std::size_t, std::size_t> histogram;
  std::vector<StageTiming> timings;
  std::optional<MetricScores> metrics;
  PipelineConfig config;
};

void to_json(nlohmann::json& j, const RunReport& r);
void from_json(const nlohmann::json& j, RunReport& r);

struct MacResult {
  ClusterAssignment assignment;
  ComponentPartition partition;
  DenseMatrix dissimilarity;  // n_c x n_c; empty when K = 1 or n_c = 1
  RunReport report;
};

/// Echelon form, subspace graph, per-component bases, principal-angle
/// dissimilarities, locally scaled spectral clustering of the subspaces, and
/// label propagation to observations. Errors carry the failing stage name.
/// Throws TooFewPoints when there are fewer components than clusters.
MacResult run_mac(const SparseMatrix& x, const PipelineConfig& config);

struct PipelineResult {
  std::vector<std::string> ids;
  std::vector<int> labels;  // 1..K
  RunReport report;
  DenseMatrix dissimilarity;
};

/// Runs the configured method (MAC or a baseline) on a vectorised corpus and
/// scores it when every column carries a ground-truth label.
PipelineResult run_pipeline(const TfidfMatrix& x, const PipelineConfig& config);

/// Labels CSV: header `id,cluster`, LF endings.
void write_labels_csv(std::ostream& out, const std::vector<std::string>& ids, const std::vector<int>& labels);

/// Reads a two-column CSV with a header; returns (id, value) rows.
std::vector<std::pair<std::string, std::string>> read_two_column_csv(std::istream& in);

void write_dissimilarity_csv(std::ostream& out, const DenseMatrix& d);

}  // namespace minangle
