#include "minangle/pipeline.hpp"

#include "minangle/angles.hpp"
#include "minangle/basis.hpp"
#include "minangle/error.hpp"
#include "minangle/rref.hpp"

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

namespace minangle {

std::string to_string(Baseline b) {
  switch (b) {
    case Baseline::None: return "none";
    case Baseline::ScX: return "sc-x";
    case Baseline::ScA: return "sc-a";
  }
  return "none";
}

Baseline parse_baseline(const std::string& s) {
  if (s == "none") return Baseline::None;
  if (s == "sc-x") return Baseline::ScX;
  if (s == "sc-a") return Baseline::ScA;
  throw Error(ErrorCode::InvalidArgument, "unknown baseline '" + s + "' (expected none, sc-x or sc-a)");
}

void PipelineConfig::validate() const {
  const auto in_unit = [](double v) { return v > 0.0 && v < 1.0; };
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "config: k must be >= 1");
  if (!in_unit(rref_tol)) throw Error(ErrorCode::InvalidArgument, "config: rref_tol must lie in (0, 1)");
  if (!in_unit(rank_tol)) throw Error(ErrorCode::InvalidArgument, "config: rank_tol must lie in (0, 1)");
  if (scaling_k < 1) throw Error(ErrorCode::InvalidArgument, "config: scaling_k must be >= 1");
  if (kmeans_restarts < 1) throw Error(ErrorCode::InvalidArgument, "config: kmeans_restarts must be >= 1");
  if (min_df < 1) throw Error(ErrorCode::InvalidArgument, "config: min_df must be >= 1");
}

TfidfOptions PipelineConfig::tfidf_options() const {
  TfidfOptions options;
  options.normalize = normalize;
  options.tokenizer.lowercase = lowercase;
  options.tokenizer.stop_words.insert(stop_words.begin(), stop_words.end());
  return options;
}

void to_json(nlohmann::json& j, const PipelineConfig& c) {
  j = nlohmann::json{{"k", c.k},
                     {"rref_tol", c.rref_tol},
                     {"rank_tol", c.rank_tol},
                     {"scaling_k", c.scaling_k},
                     {"kmeans_restarts", c.kmeans_restarts},
                     {"seed", c.seed},
                     {"baseline", to_string(c.baseline)},
                     {"min_df", c.min_df},
                     {"normalize", c.normalize},
                     {"lowercase", c.lowercase},
                     {"stop_words", c.stop_words},
                     {"input", c.input},
                     {"labels_output", c.labels_output},
                     {"report_output", c.report_output},
                     {"dissimilarity_output", c.dissimilarity_output}};
}

void from_json(const nlohmann::json& j, PipelineConfig& c) {
  const auto get = [&j](const char* key, auto& field) {
    if (j.contains(key)) j.at(key).get_to(field);
  };
  get("k", c.k);
  get("rref_tol", c.rref_tol);
  get("rank_tol", c.rank_tol);
  get("scaling_k", c.scaling_k);
  get("kmeans_restarts", c.kmeans_restarts);
  get("seed", c.seed);
  if (j.contains("baseline")) c.baseline = parse_baseline(j.at("baseline").get<std::string>());
  get("min_df", c.min_df);
  get("normalize", c.normalize);
  get("lowercase", c.lowercase);
  get("stop_words", c.stop_words);
  get("input", c.input);
  get("labels_output", c.labels_output);
  get("report_output", c.report_output);
  get("dissimilarity_output", c.dissimilarity_output);
}

void to_json(nlohmann::json& j, const RunReport& r) {
  auto histogram = nlohmann::json::array();
  for (const auto& [size, count] : r.histogram) histogram.push_back({{"size", size}, {"count", count}});
  auto timings = nlohmann::json::array();
  for (const auto& t : r.timings) timings.push_back({{"stage", t.stage}, {"seconds", t.seconds}});
  j = nlohmann::json{{"schema_version", RunReport::kSchemaVersion},
                     {"method", r.method},
                     {"num_features", r.num_features},
                     {"num_observations", r.num_observations},
                     {"rank", r.rank},
                     {"num_components", r.num_components},
                     {"histogram", histogram},
                     {"timings", timings},
                     {"config", r.config}};
  if (r.metrics) j["metrics"] = {{"purity", r.metrics->purity}, {"nmi", r.metrics->nmi}, {"ari", r.metrics->ari}};
}

void from_json(const nlohmann::json& j, RunReport& r) {
  if (j.at("schema_version").get<int>() != RunReport::kSchemaVersion) {
    throw Error(ErrorCode::Parse, "report: unsupported schema_version");
  }
  j.at("method").get_to(r.method);
  j.at("num_features").get_to(r.num_features);
  j.at("num_observations").get_to(r.num_observations);
  j.at("rank").get_to(r.rank);
  j.at("num_components").get_to(r.num_components);
  r.histogram.clear();
  for (const auto& h : j.at("histogram")) r.histogram[h.at("size").get<std::size_t>()] = h.at("count").get<std::size_t>();
  r.timings.clear();
  for (const auto& t : j.at("timings")) r.timings.push_back({t.at("stage").get<std::string>(), t.at("seconds").get<double>()});
  r.metrics.reset();
  if (j.contains("metrics")) {
    const auto& m = j.at("metrics");
    r.metrics = MetricScores{m.at("purity").get<double>(), m.at("nmi").get<double>(), m.at("ari").get<double>()};
  }
  r.config = j.at("config").get<PipelineConfig>();
}

namespace {

/// Runs `body`, records its wall time, and prefixes errors with the stage name.
template <typename Body>
auto stage(RunReport& report, const char* name, Body&& body) {
  const auto start = std::chrono::steady_clock::now();
  const auto record = [&] {
    report.timings.push_back(
        {name, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()});
  };
  try {
    if constexpr (std::is_void_v<decltype(body())>) {
      body();
      record();
    } else {
      auto result = body();
      record();
      return result;
    }
  } catch (const Error& e) {
    throw Error(e.code(), std::string(name) + ": " + e.what());
  }
}

}  // namespace

MacResult run_mac(const SparseMatrix& x, const PipelineConfig& config) {
  config.validate();
  MacResult out;
  RunReport& report = out.report;
  report.config = config;
  report.num_features = static_cast<int>(x.rows());
  report.num_observations = static_cast<int>(x.cols());
  if (x.cols() == 0) throw Error(ErrorCode::EmptyMatrix, "rref: matrix has no observations");

  const RrefResult reduced = stage(report, "rref", [&] { return rref(x, config.rref_tol); });
  report.rank = reduced.rank;

  out.partition = stage(report, "components", [&] { return components(build_graph(reduced)); });
  report.num_components = out.partition.num_components();
  report.histogram = size_histogram(out.partition);
  const int n_c = out.partition.num_components();

  if (n_c < config.k) {
    throw Error(ErrorCode::TooFewPoints, "spectral: " + std::to_string(n_c) + " subspaces for " +
                                             std::to_string(config.k) + " clusters");
  }

  std::vector<int> subspace_labels(static_cast<std::size_t>(n_c), 1);
  if (config.k > 1) {
    const auto bases = stage(report, "basis", [&] { return component_bases(x, out.partition, config.rank_tol); });
    out.dissimilarity = stage(report, "dissimilarity", [&] { return dissimilarity_matrix(bases); });
    stage(report, "spectral", [&] {
      const int neighbour = std::min(config.scaling_k, n_c - 1);
      const auto affinity = local_scaling_affinity(out.dissimilarity, neighbour);
      auto clustering =
          spectral_cluster(affinity.weights, config.k, {config.kmeans_restarts, config.seed});
      attach_isolated(out.dissimilarity, clustering.isolated, clustering.labels);
      for (int c = 0; c < n_c; ++c) subspace_labels[c] = clustering.labels[c] + 1;
    });
  }

  out.assignment.k = config.k;
  out.assignment.subspace_labels = subspace_labels;
  out.assignment.observation_labels =
      stage(report, "propagate", [&] { return propagate(out.partition, subspace_labels); });
  return out;
}

PipelineResult run_pipeline(const TfidfMatrix& x, const PipelineConfig& config) {
  config.validate();
  PipelineResult result;
  result.ids = x.document_ids;

  if (config.baseline == Baseline::None) {
    auto mac = run_mac(x.matrix, config);
    result.labels = std::move(mac.assignment.observation_labels);
    result.report = std::move(mac.report);
    result.dissimilarity = std::move(mac.dissimilarity);
  } else {
    RunReport& report = result.report;
    report.method = to_string(config.baseline);
    report.config = config;
    report.num_features = x.num_terms();
    report.num_observations = x.num_documents();
    const RrefResult reduced = stage(report, "rref", [&] { return rref(x.matrix, config.rref_tol); });
    report.rank = reduced.rank;
    const SubspaceGraph graph =
        stage(report, "components", [&] { return build_graph(reduced, config.baseline == Baseline::ScA); });
    const auto partition = components(graph);
    report.num_components = partition.num_components();
    report.histogram = size_histogram(partition);
    const SpectralOptions options{config.kmeans_restarts, config.seed};
    result.labels = stage(report, "spectral", [&] {
      return config.baseline == Baseline::ScX ? baseline_sc_x(x.matrix, config.k, config.scaling_k, options)
                                              : baseline_sc_a(*graph.adjacency, config.k, options);
    });
  }

  if (x.has_labels()) {
    std::vector<std::string> truth;
    truth.reserve(x.labels.size());
    for (const auto& l : x.labels) truth.push_back(*l);
    result.report.metrics = evaluate(result.labels, encode_labels(truth));
  }
  return result;
}

void write_labels_csv(std::ostream& out, const std::vector<std::string>& ids, const std::vector<int>& labels) {
  out << "id,cluster\n";
  for (std::size_t i = 0; i < ids.size(); ++i) out << ids[i] << ',' << labels[i] << '\n';
}

std::vector<std::pair<std::string, std::string>> read_two_column_csv(std::istream& in) {
  std::vector<std::pair<std::string, std::string>> rows;
  std::string line;
  bool header = true;
  long number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (header) {
      header = false;
      continue;
    }
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw Error(ErrorCode::Parse, "csv line " + std::to_string(number) + ": expected two columns");
    }
    rows.emplace_back(line.substr(0, comma), line.substr(comma + 1));
  }
  return rows;
}

void write_dissimilarity_csv(std::ostream& out, const DenseMatrix& d) {
  out << std::setprecision(17);
  for (Eigen::Index i = 0; i < d.rows(); ++i) {
    for (Eigen::Index j = 0; j < d.cols(); ++j) {
      if (j) out << ',';
      out << d(i, j);
    }
    out << '\n';
  }
}

}  // namespace minangle
