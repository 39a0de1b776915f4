#include "minangle/synth.hpp"

#include "minangle/error.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <unordered_set>

namespace minangle {

namespace {

DenseMatrix gaussian(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  DenseMatrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = normal(rng);
  }
  return m;
}

DenseMatrix orthonormal(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
  Eigen::HouseholderQR<DenseMatrix> qr(gaussian(rows, cols, rng));
  return qr.householderQ() * DenseMatrix::Identity(rows, cols);
}

}  // namespace

SubspaceMixture gen_subspace_mixture(const SubspaceMixtureSpec& spec) {
  if (spec.ambient_dim < 1 || spec.num_subspaces < 1 || spec.subspace_dim < 1 || spec.points_per_subspace < 1) {
    throw Error(ErrorCode::InvalidSpec, "subspace mixture: all counts must be >= 1");
  }
  if (spec.subspace_dim >= spec.ambient_dim) {
    throw Error(ErrorCode::InvalidSpec, "subspace mixture: subspace dimension must be below the ambient dimension");
  }
  if (!(spec.noise_sigma >= 0.0)) throw Error(ErrorCode::InvalidSpec, "subspace mixture: noise_sigma must be >= 0");
  if (spec.orthogonal_bases && spec.num_subspaces * spec.subspace_dim > spec.ambient_dim) {
    throw Error(ErrorCode::InvalidSpec, "subspace mixture: K * d exceeds P for orthogonal bases");
  }

  std::mt19937_64 rng(spec.seed);
  SubspaceMixture out;
  const int k = spec.num_subspaces;
  const int d = spec.subspace_dim;
  if (spec.orthogonal_bases) {
    const DenseMatrix all = orthonormal(spec.ambient_dim, static_cast<Eigen::Index>(k) * d, rng);
    for (int s = 0; s < k; ++s) out.bases.push_back(all.middleCols(static_cast<Eigen::Index>(s) * d, d));
  } else {
    for (int s = 0; s < k; ++s) out.bases.push_back(orthonormal(spec.ambient_dim, d, rng));
  }

  const int n = k * spec.points_per_subspace;
  DenseMatrix grouped(spec.ambient_dim, n);
  std::vector<int> grouped_labels(static_cast<std::size_t>(n));
  for (int s = 0; s < k; ++s) {
    const DenseMatrix coords = gaussian(d, spec.points_per_subspace, rng);
    DenseMatrix block = out.bases[s] * coords;
    if (spec.noise_sigma > 0.0) block += spec.noise_sigma * gaussian(spec.ambient_dim, spec.points_per_subspace, rng);
    grouped.middleCols(static_cast<Eigen::Index>(s) * spec.points_per_subspace, spec.points_per_subspace) = block;
    std::fill_n(grouped_labels.begin() + static_cast<std::ptrdiff_t>(s) * spec.points_per_subspace,
                spec.points_per_subspace, s);
  }

  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  if (spec.shuffle) std::shuffle(order.begin(), order.end(), rng);
  out.points.resize(spec.ambient_dim, n);
  out.labels.resize(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    out.points.col(j) = grouped.col(order[j]);
    out.labels[j] = grouped_labels[order[j]];
  }
  return out;
}

namespace {

class CategoryWords {
 public:
  CategoryWords(int category, const ShortTextSpec& spec)
      : category_(category), spec_(spec) {
    std::vector<double> weights(static_cast<std::size_t>(spec.vocab_per_category));
    for (std::size_t i = 0; i < weights.size(); ++i) {
      weights[i] = 1.0 / std::pow(static_cast<double>(i + 1), spec.zipf_exponent);
    }
    zipf_ = std::discrete_distribution<int>(weights.begin(), weights.end());
  }

  std::string category_word(int index) const {
    return "c" + std::to_string(category_ + 1) + "w" + std::to_string(index + 1);
  }

  /// One word by the Zipf law, or a shared term with the leak probability.
  std::string draw(std::mt19937_64& rng) {
    if (spec_.shared_vocab > 0 && leak_(rng) < spec_.leak_rate) {
      std::uniform_int_distribution<int> shared(0, spec_.shared_vocab - 1);
      return "s" + std::to_string(shared(rng) + 1);
    }
    return category_word(zipf_(rng));
  }

  std::string draw_rare(std::mt19937_64& rng) const {
    std::uniform_int_distribution<int> any(0, spec_.vocab_per_category - 1);
    return category_word(any(rng));
  }

  /// `count` distinct words, none of them in `exclude`.
  std::vector<std::string> draw_distinct(int count, std::mt19937_64& rng,
                                         const std::unordered_set<std::string>& exclude = {}) {
    std::vector<std::string> words;
    std::unordered_set<std::string> seen(exclude);
    for (int attempts = 0; static_cast<int>(words.size()) < count && attempts < 1000 * count; ++attempts) {
      auto w = draw(rng);
      if (seen.insert(w).second) words.push_back(std::move(w));
    }
    return words;
  }

 private:
  int category_;
  const ShortTextSpec& spec_;
  std::discrete_distribution<int> zipf_;
  std::uniform_real_distribution<double> leak_{0.0, 1.0};
};

std::string join(std::vector<std::string> words, std::mt19937_64& rng) {
  std::shuffle(words.begin(), words.end(), rng);
  std::string text;
  for (const auto& w : words) {
    if (!text.empty()) text.push_back(' ');
    text += w;
  }
  return text;
}

}  // namespace

std::vector<Document> gen_short_texts(const ShortTextSpec& spec) {
  if (spec.categories < 1 || spec.vocab_per_category < 1 || spec.docs_per_category < 1 || spec.shared_vocab < 0) {
    throw Error(ErrorCode::InvalidSpec, "short texts: counts must be >= 1 (shared_vocab >= 0)");
  }
  if (spec.min_words < 1 || spec.max_words < spec.min_words) {
    throw Error(ErrorCode::InvalidSpec, "short texts: need 1 <= min_words <= max_words");
  }
  if (spec.max_words > spec.vocab_per_category) {
    throw Error(ErrorCode::InvalidSpec, "short texts: max_words exceeds the category vocabulary");
  }
  const auto rate_ok = [](double r) { return r >= 0.0 && r <= 1.0; };
  if (!rate_ok(spec.leak_rate) || !rate_ok(spec.family_rate) || !rate_ok(spec.duplicate_rate) ||
      spec.family_rate + spec.duplicate_rate > 1.0 || spec.zipf_exponent < 0.0) {
    throw Error(ErrorCode::InvalidSpec, "short texts: rates must lie in [0, 1] and sum to at most 1");
  }

  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> length(spec.min_words, spec.max_words);
  std::uniform_int_distribution<int> grid_side(2, 3);
  constexpr double kMeanFamilySize = 6.25;
  // per-slot probability that turns the document share into a family start rate
  const double family_start =
      spec.family_rate / (kMeanFamilySize - (kMeanFamilySize - 1.0) * spec.family_rate);
  const double duplicate_start = spec.duplicate_rate * (1.0 - family_start) / std::max(1e-12, 1.0 - spec.family_rate);

  std::vector<std::pair<std::vector<std::string>, int>> generated;
  for (int c = 0; c < spec.categories; ++c) {
    CategoryWords words(c, spec);
    std::vector<std::vector<std::string>> produced;
    while (static_cast<int>(produced.size()) < spec.docs_per_category) {
      const double r = unit(rng);
      if (r < family_start && spec.min_words >= 3 && spec.vocab_per_category >= spec.max_words + 6) {
        const int base_size = std::max(1, length(rng) - 2);
        const auto base = words.draw_distinct(base_size, rng);
        std::unordered_set<std::string> used(base.begin(), base.end());
        std::vector<std::vector<std::string>> axes(2);
        for (auto& axis : axes) {
          const int size = grid_side(rng);
          for (int attempts = 0; static_cast<int>(axis.size()) < size && attempts < 1000; ++attempts) {
            auto w = words.draw_rare(rng);
            if (used.insert(w).second) axis.push_back(std::move(w));
          }
        }
        for (const auto& a : axes[0]) {
          for (const auto& b : axes[1]) {
            if (static_cast<int>(produced.size()) >= spec.docs_per_category) break;
            auto doc = base;
            doc.push_back(a);
            doc.push_back(b);
            produced.push_back(std::move(doc));
          }
        }
      } else if (r < family_start + duplicate_start && !produced.empty()) {
        std::uniform_int_distribution<std::size_t> earlier(0, produced.size() - 1);
        produced.push_back(produced[earlier(rng)]);
      } else {
        produced.push_back(words.draw_distinct(length(rng), rng));
      }
    }
    for (auto& doc : produced) generated.emplace_back(std::move(doc), c);
  }

  std::shuffle(generated.begin(), generated.end(), rng);
  std::vector<Document> docs;
  docs.reserve(generated.size());
  for (auto& [words, c] : generated) {
    Document doc;
    doc.id = "doc" + std::to_string(docs.size() + 1);
    doc.text = join(std::move(words), rng);
    doc.label = "cat" + std::to_string(c + 1);
    docs.push_back(std::move(doc));
  }
  return docs;
}

}  // namespace minangle
