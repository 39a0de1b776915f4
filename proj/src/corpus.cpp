#include "minangle/corpus.hpp"

#include "minangle/error.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <locale>
#include <memory>

namespace minangle {

namespace {

/// Wide-character classification from the C.UTF-8 locale when available.
const std::ctype<wchar_t>* unicode_ctype() {
  static const std::unique_ptr<std::locale> loc = []() -> std::unique_ptr<std::locale> {
    for (const char* name : {"C.UTF-8", "C.utf8", "en_US.UTF-8"}) {
      try {
        return std::make_unique<std::locale>(name);
      } catch (const std::runtime_error&) {
      }
    }
    return nullptr;
  }();
  return loc ? &std::use_facet<std::ctype<wchar_t>>(*loc) : nullptr;
}

constexpr char32_t kInvalid = 0xFFFFFFFF;

char32_t decode_utf8(std::string_view s, std::size_t& pos) {
  const auto byte = [&](std::size_t i) { return static_cast<unsigned char>(s[i]); };
  const unsigned char lead = byte(pos);
  int extra = 0;
  char32_t cp = 0;
  if (lead < 0x80) {
    ++pos;
    return lead;
  } else if ((lead & 0xE0) == 0xC0) {
    extra = 1;
    cp = lead & 0x1F;
  } else if ((lead & 0xF0) == 0xE0) {
    extra = 2;
    cp = lead & 0x0F;
  } else if ((lead & 0xF8) == 0xF0) {
    extra = 3;
    cp = lead & 0x07;
  } else {
    ++pos;
    return kInvalid;
  }
  if (pos + extra >= s.size()) {
    ++pos;
    return kInvalid;
  }
  for (int k = 1; k <= extra; ++k) {
    const unsigned char b = byte(pos + k);
    if ((b & 0xC0) != 0x80) {
      ++pos;
      return kInvalid;
    }
    cp = (cp << 6) | (b & 0x3F);
  }
  pos += extra + 1;
  return cp;
}

void encode_utf8(char32_t cp, std::string& out) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

bool is_alnum(char32_t cp, const std::ctype<wchar_t>* ct) {
  if (cp < 0x80) return std::isalnum(static_cast<int>(cp)) != 0;
  if (ct) return ct->is(std::ctype_base::alnum, static_cast<wchar_t>(cp));
  return true;
}

char32_t to_lower(char32_t cp, const std::ctype<wchar_t>* ct) {
  if (cp < 0x80) return static_cast<char32_t>(std::tolower(static_cast<int>(cp)));
  if (ct) return static_cast<char32_t>(ct->tolower(static_cast<wchar_t>(cp)));
  return cp;
}

std::string_view trim(std::string_view s) {
  const auto ws = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v'; };
  while (!s.empty() && ws(s.front())) s.remove_prefix(1);
  while (!s.empty() && ws(s.back())) s.remove_suffix(1);
  return s;
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text, const TokenizerOptions& options) {
  const auto* ct = unicode_ctype();
  std::vector<std::string> tokens;
  std::string current;
  const auto flush = [&] {
    if (!current.empty() && !options.stop_words.contains(current)) tokens.push_back(current);
    current.clear();
  };
  std::size_t pos = 0;
  while (pos < text.size()) {
    char32_t cp = decode_utf8(text, pos);
    if (cp == kInvalid || !is_alnum(cp, ct)) {
      flush();
      continue;
    }
    if (options.lowercase) cp = to_lower(cp, ct);
    encode_utf8(cp, current);
  }
  flush();
  return tokens;
}

std::optional<int> Vocabulary::find(const std::string& term) const {
  const auto it = index.find(term);
  if (it == index.end()) return std::nullopt;
  return it->second;
}

Vocabulary build_vocabulary(const std::vector<Document>& docs, int min_df,
                            const TokenizerOptions& options) {
  if (docs.empty()) throw Error(ErrorCode::EmptyInput, "build_vocabulary: no documents");
  std::vector<std::string> order;
  std::unordered_map<std::string, int> counts;
  for (const auto& doc : docs) {
    auto tokens = tokenize(doc.text, options);
    for (const auto& t : tokens) {
      if (counts.emplace(t, 0).second) order.push_back(t);
    }
    std::sort(tokens.begin(), tokens.end());
    tokens.erase(std::unique(tokens.begin(), tokens.end()), tokens.end());
    for (const auto& t : tokens) ++counts[t];
  }

  Vocabulary vocab;
  vocab.num_documents = static_cast<int>(docs.size());
  for (const auto& t : order) {
    const int df = counts.at(t);
    if (df < min_df) continue;
    vocab.index.emplace(t, vocab.size());
    vocab.terms.push_back(t);
    vocab.df.push_back(df);
  }
  if (vocab.terms.empty()) {
    throw Error(ErrorCode::AllTermsFiltered,
                "build_vocabulary: no term reaches min_df=" + std::to_string(min_df));
  }
  return vocab;
}

bool TfidfMatrix::has_labels() const {
  return !labels.empty() && std::all_of(labels.begin(), labels.end(), [](const auto& l) { return l.has_value(); });
}

TfidfMatrix tfidf(const std::vector<Document>& docs, const Vocabulary& vocab,
                  const TfidfOptions& options) {
  std::vector<double> idf(vocab.terms.size());
  for (std::size_t t = 0; t < idf.size(); ++t) {
    idf[t] = std::log(static_cast<double>(vocab.num_documents) / vocab.df[t]) + 1.0;
  }

  TfidfMatrix out;
  out.terms = vocab.terms;
  std::vector<Eigen::Triplet<double, int>> triplets;
  std::vector<std::pair<int, int>> column;  // (term, count)
  for (const auto& doc : docs) {
    column.clear();
    for (const auto& token : tokenize(doc.text, options.tokenizer)) {
      if (const auto t = vocab.find(token)) column.emplace_back(*t, 1);
    }
    if (column.empty()) {
      out.dropped.push_back(doc.id);
      continue;
    }
    std::sort(column.begin(), column.end());
    std::vector<std::pair<int, double>> entries;
    for (const auto& [t, c] : column) {
      if (!entries.empty() && entries.back().first == t) {
        entries.back().second += 1.0;
      } else {
        entries.emplace_back(t, 1.0);
      }
    }
    double norm2 = 0.0;
    for (auto& [t, v] : entries) {
      v *= idf[t];
      norm2 += v * v;
    }
    const double scale = options.normalize ? 1.0 / std::sqrt(norm2) : 1.0;
    const int col = static_cast<int>(out.document_ids.size());
    for (const auto& [t, v] : entries) triplets.emplace_back(t, col, v * scale);
    out.document_ids.push_back(doc.id);
    out.labels.push_back(doc.label);
  }
  if (out.document_ids.empty()) {
    throw Error(ErrorCode::EmptyMatrix, "tfidf: every document was dropped (no in-vocabulary terms)");
  }
  out.matrix.resize(vocab.size(), static_cast<int>(out.document_ids.size()));
  out.matrix.setFromTriplets(triplets.begin(), triplets.end());
  out.matrix.makeCompressed();
  return out;
}

TfidfMatrix vectorize(const std::vector<Document>& docs, int min_df, const TfidfOptions& options) {
  return tfidf(docs, build_vocabulary(docs, min_df, options.tokenizer), options);
}

IngestResult read_documents(std::istream& in, const std::string& id_prefix) {
  IngestResult result;
  std::string line;
  long number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    Document doc;
    doc.id = id_prefix + std::to_string(number);
    const auto tab = line.rfind('\t');
    if (tab != std::string::npos) {
      doc.text = std::string(line.substr(0, tab));
      const auto label = trim(std::string_view(line).substr(tab + 1));
      if (!label.empty()) doc.label = std::string(label);
    } else {
      doc.text = line;
    }
    if (trim(doc.text).empty()) {
      if (!line.empty()) result.rejected.push_back(doc.id);
      continue;
    }
    result.documents.push_back(std::move(doc));
  }
  return result;
}

IngestResult read_documents(const std::filesystem::path& path) {
  namespace fs = std::filesystem;
  if (fs::is_directory(path)) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(path)) {
      if (entry.is_regular_file()) files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    IngestResult all;
    for (const auto& file : files) {
      std::ifstream in(file, std::ios::binary);
      if (!in) throw Error(ErrorCode::Io, "cannot open: " + file.string());
      auto part = read_documents(in, file.filename().string() + ":");
      std::move(part.documents.begin(), part.documents.end(), std::back_inserter(all.documents));
      std::move(part.rejected.begin(), part.rejected.end(), std::back_inserter(all.rejected));
    }
    return all;
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open: " + path.string());
  return read_documents(in);
}

void write_documents(std::ostream& out, const std::vector<Document>& docs) {
  for (const auto& doc : docs) {
    out << doc.text;
    if (doc.label) out << '\t' << *doc.label;
    out << '\n';
  }
}

std::filesystem::path sidecar_path(const std::filesystem::path& base) {
  auto p = base;
  p += ".json";
  return p;
}

void write_tfidf(const std::filesystem::path& base, const TfidfMatrix& m) {
  write_matrix_market(base, m.matrix);
  nlohmann::json j;
  j["schema_version"] = 1;
  j["rows"] = m.terms;
  j["columns"] = m.document_ids;
  if (m.has_labels()) {
    auto& labels = j["labels"] = nlohmann::json::array();
    for (const auto& l : m.labels) labels.push_back(*l);
  }
  j["dropped"] = m.dropped;
  std::ofstream out(sidecar_path(base), std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot open for writing: " + sidecar_path(base).string());
  out << j.dump(2) << '\n';
}

TfidfMatrix read_tfidf(const std::filesystem::path& base) {
  TfidfMatrix m;
  m.matrix = read_matrix_market(base);
  std::ifstream in(sidecar_path(base), std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "missing sidecar: " + sidecar_path(base).string());
  nlohmann::json j;
  try {
    in >> j;
    m.terms = j.at("rows").get<std::vector<std::string>>();
    m.document_ids = j.at("columns").get<std::vector<std::string>>();
    if (j.contains("labels")) {
      for (const auto& l : j["labels"]) m.labels.emplace_back(l.get<std::string>());
    } else {
      m.labels.assign(m.document_ids.size(), std::nullopt);
    }
    if (j.contains("dropped")) m.dropped = j["dropped"].get<std::vector<std::string>>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("tfidf sidecar: ") + e.what());
  }
  if (static_cast<int>(m.terms.size()) != m.matrix.rows() ||
      static_cast<int>(m.document_ids.size()) != m.matrix.cols() ||
      m.labels.size() != m.document_ids.size()) {
    throw Error(ErrorCode::Parse, "tfidf sidecar does not match matrix shape");
  }
  return m;
}

}  // namespace minangle
