#include "minangle/angles.hpp"
#include "minangle/error.hpp"
#include "minangle/pipeline.hpp"
#include "minangle/synth.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace minangle;

namespace {

std::vector<SubspaceBasis> to_bases(const std::vector<DenseMatrix>& qs) {
  std::vector<SubspaceBasis> out;
  out.reserve(qs.size());
  for (std::size_t i = 0; i < qs.size(); ++i) out.push_back(SubspaceBasis::from_dense(qs[i], static_cast<int>(i)));
  return out;
}

std::vector<Document> to_documents(const std::vector<std::string>& texts,
                                   const std::optional<std::vector<std::string>>& labels,
                                   const std::optional<std::vector<std::string>>& ids) {
  if (labels && labels->size() != texts.size()) throw Error(ErrorCode::LengthMismatch, "labels and texts differ in length");
  if (ids && ids->size() != texts.size()) throw Error(ErrorCode::LengthMismatch, "ids and texts differ in length");
  std::vector<Document> docs(texts.size());
  for (std::size_t i = 0; i < texts.size(); ++i) {
    docs[i].id = ids ? (*ids)[i] : std::to_string(i + 1);
    docs[i].text = texts[i];
    if (labels) docs[i].label = (*labels)[i];
  }
  return docs;
}

PipelineConfig make_config(int k, std::uint64_t seed, int scaling_k, int restarts, double rref_tol, double rank_tol) {
  PipelineConfig c;
  c.k = k;
  c.seed = seed;
  c.scaling_k = scaling_k;
  c.kmeans_restarts = restarts;
  c.rref_tol = rref_tol;
  c.rank_tol = rank_tol;
  c.validate();
  return c;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Minimum angle clustering core";

  static py::exception<Error> error(m, "Error", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object instance = py::reinterpret_borrow<py::object>(error)(e.what());
      instance.attr("code") = to_string(e.code());
      PyErr_SetObject(error.ptr(), instance.ptr());
    }
  });

  m.def(
      "tokenize",
      [](const std::string& text, bool lowercase, const std::vector<std::string>& stop_words) {
        TokenizerOptions o;
        o.lowercase = lowercase;
        o.stop_words.insert(stop_words.begin(), stop_words.end());
        return tokenize(text, o);
      },
      py::arg("text"), py::arg("lowercase") = true, py::arg("stop_words") = std::vector<std::string>{});

  py::class_<TfidfMatrix>(m, "TfidfMatrix")
      .def_readonly("matrix", &TfidfMatrix::matrix)
      .def_readonly("terms", &TfidfMatrix::terms)
      .def_readonly("document_ids", &TfidfMatrix::document_ids)
      .def_readonly("labels", &TfidfMatrix::labels)
      .def_readonly("dropped", &TfidfMatrix::dropped)
      .def_property_readonly("shape", [](const TfidfMatrix& t) { return py::make_tuple(t.num_terms(), t.num_documents()); });

  m.def(
      "vectorize",
      [](const std::vector<std::string>& texts, std::optional<std::vector<std::string>> labels,
         std::optional<std::vector<std::string>> ids, int min_df, bool normalize, bool lowercase) {
        TfidfOptions o;
        o.normalize = normalize;
        o.tokenizer.lowercase = lowercase;
        return vectorize(to_documents(texts, labels, ids), min_df, o);
      },
      py::arg("texts"), py::arg("labels") = py::none(), py::arg("ids") = py::none(), py::arg("min_df") = 1,
      py::arg("normalize") = true, py::arg("lowercase") = true,
      "TF-IDF term x document matrix of the given texts.");
  m.def("read_tfidf", [](const std::string& base) { return read_tfidf(base); }, py::arg("path"));
  m.def("write_tfidf", [](const std::string& base, const TfidfMatrix& t) { write_tfidf(base, t); }, py::arg("path"),
        py::arg("matrix"));

  m.def(
      "rref",
      [](const SparseMatrix& x, double tol) {
        const auto r = rref(x, tol);
        return py::make_tuple(r.reduced, r.pivot_columns, r.rank);
      },
      py::arg("x"), py::arg("tol") = kDefaultRrefTolerance, "(reduced, pivot_columns, rank) of the echelon form.");

  m.def(
      "components",
      [](const SparseMatrix& x, double tol) { return components(build_graph(rref(x, tol))).assignment; },
      py::arg("x"), py::arg("tol") = kDefaultRrefTolerance, "Component id of every column of x.");
  m.def(
      "adjacency",
      [](const SparseMatrix& x, double tol) { return adjacency(indicator(rref(x, tol))); }, py::arg("x"),
      py::arg("tol") = kDefaultRrefTolerance);

  m.def(
      "subspace_basis",
      [](const SparseMatrix& block, double rank_tol) { return subspace_basis(block, rank_tol).dense(); },
      py::arg("block"), py::arg("rank_tol") = kDefaultRankTolerance, "Orthonormal basis (P x d) of the column span.");
  m.def(
      "principal_angles",
      [](const DenseMatrix& qu, const DenseMatrix& qv) {
        return principal_angles(SubspaceBasis::from_dense(qu), SubspaceBasis::from_dense(qv)).thetas;
      },
      py::arg("qu"), py::arg("qv"));
  m.def(
      "dissimilarity",
      [](const DenseMatrix& qu, const DenseMatrix& qv) {
        return dissimilarity(SubspaceBasis::from_dense(qu), SubspaceBasis::from_dense(qv));
      },
      py::arg("qu"), py::arg("qv"));
  m.def(
      "dissimilarity_matrix", [](const std::vector<DenseMatrix>& qs) { return dissimilarity_matrix(to_bases(qs)); },
      py::arg("bases"));

  m.def(
      "local_scaling_affinity",
      [](const DenseMatrix& d, int k) {
        auto a = local_scaling_affinity(d, k);
        return py::make_tuple(a.weights, a.scales);
      },
      py::arg("d"), py::arg("k") = kDefaultScalingNeighbour, "(W, scales) of the locally scaled affinity.");
  m.def(
      "spectral_cluster",
      [](const DenseMatrix& w, int k, std::uint64_t seed, int restarts) {
        return spectral_cluster(w, k, {restarts, seed}).labels;
      },
      py::arg("w"), py::arg("k"), py::arg("seed") = 0, py::arg("restarts") = kDefaultRestarts);
  m.def(
      "kmeans",
      [](const DenseMatrix& points, int k, std::uint64_t seed, int restarts) {
        KMeansOptions o;
        o.seed = seed;
        o.restarts = restarts;
        auto r = kmeans(points, k, o);
        return py::make_tuple(r.labels, r.wcss);
      },
      py::arg("points"), py::arg("k"), py::arg("seed") = 0, py::arg("restarts") = kDefaultRestarts,
      "(labels, wcss) for the rows of points.");

  m.def(
      "mac",
      [](const SparseMatrix& x, int k, std::uint64_t seed, int scaling_k, int restarts, double rref_tol,
         double rank_tol) {
        const auto r = run_mac(x, make_config(k, seed, scaling_k, restarts, rref_tol, rank_tol));
        const nlohmann::json report = r.report;
        return py::make_tuple(r.assignment.observation_labels, py::module_::import("json").attr("loads")(report.dump()));
      },
      py::arg("x"), py::arg("k"), py::arg("seed") = 0, py::arg("scaling_k") = kDefaultScalingNeighbour,
      py::arg("restarts") = kDefaultRestarts, py::arg("rref_tol") = kDefaultRrefTolerance,
      py::arg("rank_tol") = kDefaultRankTolerance, "(labels 1..K, report dict) of minimum angle clustering.");
  m.def(
      "baseline_sc_x",
      [](const SparseMatrix& x, int k, std::uint64_t seed, int scaling_k, int restarts) {
        return baseline_sc_x(x, k, scaling_k, {restarts, seed});
      },
      py::arg("x"), py::arg("k"), py::arg("seed") = 0, py::arg("scaling_k") = kDefaultScalingNeighbour,
      py::arg("restarts") = kDefaultRestarts);
  m.def(
      "baseline_sc_a",
      [](const SparseMatrix& x, int k, std::uint64_t seed, int restarts, double rref_tol) {
        return baseline_sc_a(adjacency(indicator(rref(x, rref_tol))), k, {restarts, seed});
      },
      py::arg("x"), py::arg("k"), py::arg("seed") = 0, py::arg("restarts") = kDefaultRestarts,
      py::arg("rref_tol") = kDefaultRrefTolerance);

  m.def("purity", [](const std::vector<int>& p, const std::vector<int>& t) { return purity(p, t); },
        py::arg("predicted"), py::arg("truth"));
  m.def("nmi", [](const std::vector<int>& p, const std::vector<int>& t) { return nmi(p, t); }, py::arg("predicted"),
        py::arg("truth"));
  m.def("ari", [](const std::vector<int>& p, const std::vector<int>& t) { return ari(p, t); }, py::arg("predicted"),
        py::arg("truth"));

  m.def(
      "gen_subspace_mixture",
      [](int ambient_dim, int num_subspaces, int subspace_dim, int points_per_subspace, double noise_sigma,
         std::uint64_t seed) {
        SubspaceMixtureSpec s;
        s.ambient_dim = ambient_dim;
        s.num_subspaces = num_subspaces;
        s.subspace_dim = subspace_dim;
        s.points_per_subspace = points_per_subspace;
        s.noise_sigma = noise_sigma;
        s.seed = seed;
        auto mix = gen_subspace_mixture(s);
        return py::make_tuple(mix.points, mix.labels);
      },
      py::arg("ambient_dim") = 100, py::arg("num_subspaces") = 5, py::arg("subspace_dim") = 2,
      py::arg("points_per_subspace") = 50, py::arg("noise_sigma") = 0.0, py::arg("seed") = 0,
      "(points P x N, labels) sampled from a union of subspaces.");
  m.def(
      "gen_short_texts",
      [](int categories, int docs_per_category, int vocab_per_category, int min_words, int max_words,
         double leak_rate, double duplicate_rate, std::uint64_t seed) {
        ShortTextSpec s;
        s.categories = categories;
        s.docs_per_category = docs_per_category;
        s.vocab_per_category = vocab_per_category;
        s.min_words = min_words;
        s.max_words = max_words;
        s.leak_rate = leak_rate;
        s.duplicate_rate = duplicate_rate;
        s.seed = seed;
        std::vector<std::string> texts, labels;
        for (auto& d : gen_short_texts(s)) {
          texts.push_back(std::move(d.text));
          labels.push_back(*d.label);
        }
        return py::make_tuple(texts, labels);
      },
      py::arg("categories") = ShortTextSpec{}.categories, py::arg("docs_per_category") = ShortTextSpec{}.docs_per_category,
      py::arg("vocab_per_category") = ShortTextSpec{}.vocab_per_category,
      py::arg("min_words") = ShortTextSpec{}.min_words, py::arg("max_words") = ShortTextSpec{}.max_words,
      py::arg("leak_rate") = ShortTextSpec{}.leak_rate, py::arg("duplicate_rate") = ShortTextSpec{}.duplicate_rate,
      py::arg("seed") = 0, "(texts, labels) of a synthetic short-text corpus.");
}
