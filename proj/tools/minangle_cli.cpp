#include "minangle/error.hpp"
#include "minangle/pipeline.hpp"
#include "minangle/synth.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

using namespace minangle;
namespace fs = std::filesystem;

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot open for writing: " + path);
  return out;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open: " + path);
  return in;
}

std::vector<std::string> read_word_list(const std::string& path) {
  auto in = open_in(path);
  std::vector<std::string> words;
  std::string w;
  while (in >> w) words.push_back(w);
  return words;
}

bool is_matrix_input(const std::string& path) {
  return fs::path(path).extension() == ".mtx" && fs::exists(sidecar_path(path));
}

/// Text (file or directory) is vectorised with the config's options; a
/// Matrix Market file with a sidecar is read as is.
TfidfMatrix load_input(const PipelineConfig& config) {
  if (config.input.empty()) throw Error(ErrorCode::InvalidArgument, "no input given");
  if (!fs::exists(config.input)) throw Error(ErrorCode::Io, "no such input: " + config.input);
  if (is_matrix_input(config.input)) return read_tfidf(config.input);
  auto ingest = read_documents(fs::path(config.input));
  if (!ingest.rejected.empty()) {
    std::cerr << "warning: skipped " << ingest.rejected.size() << " blank line(s)\n";
  }
  auto x = vectorize(ingest.documents, config.min_df, config.tfidf_options());
  if (!x.dropped.empty()) {
    std::cerr << "warning: " << x.dropped.size() << " document(s) have no vocabulary term and were dropped\n";
  }
  return x;
}

/// Pipeline flags shared by `cluster` and `baseline`. Values land in `staged`
/// and only the ones given on the command line override the config file.
struct PipelineFlags {
  std::string config_path;
  PipelineConfig staged;
  std::string baseline = "none";
  std::string stop_words_path;
  bool no_normalize = false;
  bool keep_case = false;
  std::vector<std::pair<CLI::Option*, std::function<void(PipelineConfig&)>>> setters;

  template <typename T>
  void add(CLI::App& app, const std::string& name, T PipelineConfig::*field, const std::string& help) {
    auto* opt = app.add_option(name, staged.*field, help);
    setters.emplace_back(opt, [this, field](PipelineConfig& c) { c.*field = staged.*field; });
  }

  void attach(CLI::App& app, bool with_baseline) {
    app.add_option("--config", config_path, "JSON config file; explicit flags win")->check(CLI::ExistingFile);
    add(app, "input", &PipelineConfig::input, "text file, directory of text files, or .mtx with sidecar");
    add(app, "--k", &PipelineConfig::k, "number of clusters");
    add(app, "--rref-tol", &PipelineConfig::rref_tol, "relative zero threshold for the echelon form");
    add(app, "--rank-tol", &PipelineConfig::rank_tol, "relative singular value cut for subspace bases");
    add(app, "--scaling-k", &PipelineConfig::scaling_k, "neighbour index for local scaling");
    add(app, "--restarts", &PipelineConfig::kmeans_restarts, "k-means restarts");
    add(app, "--seed", &PipelineConfig::seed, "random seed");
    add(app, "--min-df", &PipelineConfig::min_df, "drop terms in fewer documents");
    add(app, "-o,--output", &PipelineConfig::labels_output, "labels CSV (id,cluster); stdout when absent");
    add(app, "--report", &PipelineConfig::report_output, "run report JSON");
    add(app, "--dump-dissimilarity", &PipelineConfig::dissimilarity_output, "subspace dissimilarity CSV");
    auto* sw = app.add_option("--stop-words", stop_words_path, "whitespace separated stop word file")
                   ->check(CLI::ExistingFile);
    setters.emplace_back(sw, [this](PipelineConfig& c) { c.stop_words = read_word_list(stop_words_path); });
    auto* nn = app.add_flag("--no-normalize", no_normalize, "keep raw TF-IDF column norms");
    setters.emplace_back(nn, [](PipelineConfig& c) { c.normalize = false; });
    auto* kc = app.add_flag("--keep-case", keep_case, "do not lowercase tokens");
    setters.emplace_back(kc, [](PipelineConfig& c) { c.lowercase = false; });
    if (with_baseline) {
      auto* b = app.add_option("--baseline", baseline, "none, sc-x or sc-a")
                    ->check(CLI::IsMember({"none", "sc-x", "sc-a"}));
      setters.emplace_back(b, [this](PipelineConfig& c) { c.baseline = parse_baseline(baseline); });
    }
  }

  PipelineConfig resolve() const {
    PipelineConfig c;
    if (!config_path.empty()) {
      auto in = open_in(config_path);
      nlohmann::json j;
      try {
        in >> j;
        c = j.get<PipelineConfig>();
      } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::InvalidArgument, "config " + config_path + ": " + e.what());
      }
    }
    for (const auto& [opt, set] : setters) {
      if (opt->count() > 0) set(c);
    }
    c.validate();
    return c;
  }
};

void print_scores(const MetricScores& m) {
  std::cout << std::fixed << std::setprecision(3) << "purity  nmi    ari\n"
            << m.purity << "  " << m.nmi << "  " << m.ari << '\n';
}

int run_cluster(const PipelineConfig& config) {
  const auto x = load_input(config);
  const auto result = run_pipeline(x, config);
  if (config.labels_output.empty()) {
    write_labels_csv(std::cout, result.ids, result.labels);
  } else {
    auto out = open_out(config.labels_output);
    write_labels_csv(out, result.ids, result.labels);
  }
  if (!config.report_output.empty()) {
    auto out = open_out(config.report_output);
    out << nlohmann::json(result.report).dump(2) << '\n';
  }
  if (!config.dissimilarity_output.empty()) {
    auto out = open_out(config.dissimilarity_output);
    write_dissimilarity_csv(out, result.dissimilarity);
  }
  if (result.report.metrics && !config.labels_output.empty()) print_scores(*result.report.metrics);
  std::cerr << result.report.method << ": " << result.report.num_observations << " observations, "
            << result.report.num_components << " components\n";
  return 0;
}

std::map<std::string, std::string> read_label_map(const std::string& path) {
  auto in = open_in(path);
  std::map<std::string, std::string> m;
  for (auto& [id, value] : read_two_column_csv(in)) {
    if (!m.emplace(id, value).second) throw Error(ErrorCode::Parse, path + ": duplicate id " + id);
  }
  return m;
}

int run_evaluate(const std::string& predicted_path, const std::string& truth_path) {
  const auto predicted = read_label_map(predicted_path);
  const auto truth = read_label_map(truth_path);
  std::vector<std::string> pred_labels, true_labels;
  for (const auto& [id, label] : predicted) {
    const auto it = truth.find(id);
    if (it == truth.end()) throw Error(ErrorCode::LengthMismatch, "id " + id + " has no truth label");
    pred_labels.push_back(label);
    true_labels.push_back(it->second);
  }
  if (predicted.size() < truth.size()) {
    std::cerr << "warning: " << truth.size() - predicted.size() << " truth id(s) have no prediction\n";
  }
  print_scores(evaluate(encode_labels(pred_labels), encode_labels(true_labels)));
  return 0;
}

void write_svg(std::ostream& out, const std::map<std::size_t, std::size_t>& hist) {
  const double width = 640, height = 360, margin = 40;
  std::size_t peak = 0;
  for (const auto& [size, count] : hist) peak = std::max(peak, count);
  const double bar = (width - 2 * margin) / static_cast<double>(hist.size());
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\">\n"
      << "<text x=\"" << width / 2 << "\" y=\"" << height - 8
      << "\" text-anchor=\"middle\" font-size=\"12\">component size</text>\n";
  int i = 0;
  for (const auto& [size, count] : hist) {
    const double h = (height - 2 * margin) * static_cast<double>(count) / static_cast<double>(peak);
    const double x = margin + i * bar;
    out << "<rect x=\"" << x << "\" y=\"" << height - margin - h << "\" width=\"" << bar * 0.9
        << "\" height=\"" << h << "\" fill=\"steelblue\"><title>" << size << ": " << count << "</title></rect>\n"
        << "<text x=\"" << x + bar * 0.45 << "\" y=\"" << height - margin + 14
        << "\" text-anchor=\"middle\" font-size=\"10\">" << size << "</text>\n";
    ++i;
  }
  out << "</svg>\n";
}

int run_histogram(const PipelineConfig& config, const std::string& output, bool ascii, const std::string& svg) {
  const auto x = load_input(config);
  const auto partition = components(build_graph(rref(x.matrix, config.rref_tol)));
  const auto hist = size_histogram(partition);
  std::ostringstream csv;
  csv << "size,count\n";
  for (const auto& [size, count] : hist) csv << size << ',' << count << '\n';
  if (output.empty()) {
    std::cout << csv.str();
  } else {
    open_out(output) << csv.str();
  }
  if (ascii) {
    std::size_t peak = 0;
    for (const auto& [size, count] : hist) peak = std::max(peak, count);
    for (const auto& [size, count] : hist) {
      const auto len = std::max<std::size_t>(count > 0, 60 * count / peak);
      std::cerr << std::setw(6) << size << " | " << std::string(len, '#') << ' ' << count << '\n';
    }
  }
  if (!svg.empty()) {
    auto out = open_out(svg);
    write_svg(out, hist);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minimum angle clustering of short texts"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "minangle 0.1.0");

  // vectorize
  auto* vec = app.add_subcommand("vectorize", "text to TF-IDF Matrix Market with a JSON sidecar");
  std::string vec_in, vec_out, vec_stop;
  int vec_min_df = 1;
  bool vec_raw = false, vec_case = false;
  vec->add_option("input", vec_in, "text file or directory")->required();
  vec->add_option("-o,--output", vec_out, "output .mtx path (sidecar goes to <output>.json)")->required();
  vec->add_option("--min-df", vec_min_df, "drop terms in fewer documents")->check(CLI::PositiveNumber);
  vec->add_option("--stop-words", vec_stop, "whitespace separated stop word file")->check(CLI::ExistingFile);
  vec->add_flag("--no-normalize", vec_raw, "keep raw TF-IDF column norms");
  vec->add_flag("--keep-case", vec_case, "do not lowercase tokens");

  // cluster / baseline
  auto* cluster = app.add_subcommand("cluster", "run MAC (or a baseline) and write labels");
  PipelineFlags cluster_flags;
  cluster_flags.attach(*cluster, true);
  auto* baseline = app.add_subcommand("baseline", "run a spectral clustering baseline");
  PipelineFlags baseline_flags;
  baseline_flags.attach(*baseline, false);
  std::string baseline_method;
  baseline->add_option("--method", baseline_method, "sc-x or sc-a")
      ->required()
      ->check(CLI::IsMember({"sc-x", "sc-a"}));

  // evaluate
  auto* eval = app.add_subcommand("evaluate", "purity, NMI and ARI of a labels CSV against truth");
  std::string eval_pred, eval_truth;
  eval->add_option("predicted", eval_pred, "labels CSV (id,cluster)")->required()->check(CLI::ExistingFile);
  eval->add_option("truth", eval_truth, "truth CSV (id,label)")->required()->check(CLI::ExistingFile);

  // histogram
  auto* histo = app.add_subcommand("histogram", "component size histogram as CSV (size,count)");
  std::string histo_in, histo_out, histo_svg, histo_config;
  double histo_tol = kDefaultRrefTolerance;
  int histo_min_df = 1;
  bool histo_ascii = false;
  histo->add_option("input", histo_in, "text file, directory, or .mtx with sidecar")->required();
  histo->add_option("-o,--output", histo_out, "CSV output; stdout when absent");
  histo->add_option("--rref-tol", histo_tol, "relative zero threshold for the echelon form");
  histo->add_option("--min-df", histo_min_df, "drop terms in fewer documents");
  histo->add_flag("--chart", histo_ascii, "ASCII bar chart on stderr");
  histo->add_option("--svg", histo_svg, "SVG bar chart path");

  // synth
  auto* synth = app.add_subcommand("synth", "generate a labelled corpus or subspace mixture");
  std::string synth_kind, synth_out, synth_truth;
  ShortTextSpec text_spec;
  SubspaceMixtureSpec sub_spec;
  std::uint64_t synth_seed = 0;
  synth->add_option("kind", synth_kind, "text or subspace")->required()->check(CLI::IsMember({"text", "subspace"}));
  synth->add_option("-o,--output", synth_out, "text corpus, or .mtx for subspace data")->required();
  synth->add_option("--truth", synth_truth, "truth CSV (id,label)");
  synth->add_option("--seed", synth_seed, "random seed");
  synth->add_option("--categories", text_spec.categories, "text: number of categories");
  synth->add_option("--docs-per-category", text_spec.docs_per_category, "text: documents per category");
  synth->add_option("--vocab-per-category", text_spec.vocab_per_category, "text: category vocabulary size");
  synth->add_option("--shared-vocab", text_spec.shared_vocab, "text: shared vocabulary size");
  synth->add_option("--min-words", text_spec.min_words, "text: fewest words per document");
  synth->add_option("--max-words", text_spec.max_words, "text: most words per document");
  synth->add_option("--leak-rate", text_spec.leak_rate, "text: chance a word comes from the shared vocabulary");
  synth->add_option("--family-rate", text_spec.family_rate, "text: share of documents in product families");
  synth->add_option("--duplicate-rate", text_spec.duplicate_rate, "text: share of repeated documents");
  synth->add_option("--ambient-dim", sub_spec.ambient_dim, "subspace: ambient dimension P");
  synth->add_option("--subspaces", sub_spec.num_subspaces, "subspace: number of subspaces K");
  synth->add_option("--dim", sub_spec.subspace_dim, "subspace: dimension d");
  synth->add_option("--points", sub_spec.points_per_subspace, "subspace: points per subspace");
  synth->add_option("--noise", sub_spec.noise_sigma, "subspace: Gaussian noise scale");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*vec) {
      TfidfOptions options;
      options.normalize = !vec_raw;
      options.tokenizer.lowercase = !vec_case;
      if (!vec_stop.empty()) {
        const auto words = read_word_list(vec_stop);
        options.tokenizer.stop_words.insert(words.begin(), words.end());
      }
      auto ingest = read_documents(fs::path(vec_in));
      const auto x = vectorize(ingest.documents, vec_min_df, options);
      write_tfidf(vec_out, x);
      std::cerr << x.num_terms() << " terms x " << x.num_documents() << " documents, " << x.matrix.nonZeros()
                << " nonzeros\n";
      return 0;
    }
    if (*cluster) return run_cluster(cluster_flags.resolve());
    if (*baseline) {
      auto config = baseline_flags.resolve();
      config.baseline = parse_baseline(baseline_method);
      return run_cluster(config);
    }
    if (*eval) return run_evaluate(eval_pred, eval_truth);
    if (*histo) {
      PipelineConfig config;
      config.input = histo_in;
      config.rref_tol = histo_tol;
      config.min_df = histo_min_df;
      config.validate();
      return run_histogram(config, histo_out, histo_ascii, histo_svg);
    }
    if (*synth) {
      std::ostringstream truth;
      truth << "id,label\n";
      if (synth_kind == "text") {
        text_spec.seed = synth_seed;
        const auto docs = gen_short_texts(text_spec);
        auto out = open_out(synth_out);
        write_documents(out, docs);
        // ids as the reader assigns them: line numbers
        for (std::size_t i = 0; i < docs.size(); ++i) truth << i + 1 << ',' << *docs[i].label << '\n';
      } else {
        sub_spec.seed = synth_seed;
        const auto mix = gen_subspace_mixture(sub_spec);
        TfidfMatrix m;
        m.matrix = mix.points.sparseView();
        for (int i = 0; i < sub_spec.ambient_dim; ++i) m.terms.push_back("f" + std::to_string(i + 1));
        for (std::size_t j = 0; j < mix.labels.size(); ++j) {
          m.document_ids.push_back("p" + std::to_string(j + 1));
          m.labels.emplace_back("s" + std::to_string(mix.labels[j] + 1));
          truth << m.document_ids.back() << ',' << *m.labels.back() << '\n';
        }
        write_tfidf(synth_out, m);
      }
      if (!synth_truth.empty()) open_out(synth_truth) << truth.str();
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error [" << to_string(e.code()) << "]: " << e.what() << '\n';
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
