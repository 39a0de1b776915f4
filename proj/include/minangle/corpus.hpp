#pragma once

#include "minangle/matrix.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace minangle {

struct Document {
  std::string id;
  std::string text;
  std::optional<std::string> label;
};

struct TokenizerOptions {
  bool lowercase = true;
  std::unordered_set<std::string> stop_words;
};

/// Splits on every non-alphanumeric code point after (Unicode) lowercasing.
/// Invalid UTF-8 bytes act as separators.
std::vector<std::string> tokenize(std::string_view text, const TokenizerOptions& options = {});

struct Vocabulary {
  std::vector<std::string> terms;  // index -> term
  std::unordered_map<std::string, int> index;
  std::vector<int> df;             // document frequency per index
  int num_documents = 0;           // corpus size df was counted over

  int size() const noexcept { return static_cast<int>(terms.size()); }
  std::optional<int> find(const std::string& term) const;
};

/// Keeps terms with df >= min_df; indices follow first appearance.
/// Throws AllTermsFiltered when nothing survives, EmptyInput for no documents.
Vocabulary build_vocabulary(const std::vector<Document>& docs, int min_df = 1,
                            const TokenizerOptions& options = {});

struct TfidfOptions {
  bool normalize = true;
  TokenizerOptions tokenizer;
};

struct TfidfMatrix {
  SparseMatrix matrix;                            // terms x documents
  std::vector<std::string> terms;                 // row -> term
  std::vector<std::string> document_ids;          // column -> document id
  std::vector<std::optional<std::string>> labels; // column -> ground truth
  std::vector<std::string> dropped;               // ids with no in-vocabulary term

  int num_terms() const noexcept { return static_cast<int>(matrix.rows()); }
  int num_documents() const noexcept { return static_cast<int>(matrix.cols()); }
  bool has_labels() const;
};

/// entry(t, d) = count(t, d) * (ln(N / df(t)) + 1) with N = vocab.num_documents,
/// followed by optional L2 column normalization.
TfidfMatrix tfidf(const std::vector<Document>& docs, const Vocabulary& vocab,
                  const TfidfOptions& options = {});

/// Vocabulary and TF-IDF in one step, with the vocabulary built from `docs`.
TfidfMatrix vectorize(const std::vector<Document>& docs, int min_df = 1, const TfidfOptions& options = {});

struct IngestResult {
  std::vector<Document> documents;
  std::vector<std::string> rejected;  // ids of blank documents
};

/// One document per line: `text[\tlabel]`. The id is the 1-based line number.
/// Blank lines are rejected (reported, not returned).
IngestResult read_documents(std::istream& in, const std::string& id_prefix = "");

/// A regular file, or a directory whose regular files are read in lexicographic
/// order with ids `<filename>:<line>`.
IngestResult read_documents(const std::filesystem::path& path);

void write_documents(std::ostream& out, const std::vector<Document>& docs);

/// Writes `<base>` as Matrix Market and `<base>.json` as the row/column sidecar.
void write_tfidf(const std::filesystem::path& base, const TfidfMatrix& m);
TfidfMatrix read_tfidf(const std::filesystem::path& base);

std::filesystem::path sidecar_path(const std::filesystem::path& base);

}  // namespace minangle
