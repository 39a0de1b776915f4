#pragma once

#include "minangle/corpus.hpp"
#include "minangle/matrix.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace minangle {

/// K linear subspaces of dimension d in R^P with n_per points each.
struct SubspaceMixtureSpec {
  int ambient_dim = 100;
  int num_subspaces = 5;
  int subspace_dim = 2;
  int points_per_subspace = 50;
  double noise_sigma = 0.0;
  bool orthogonal_bases = false;  // all bases drawn from one QR, mutually orthogonal
  bool shuffle = true;            // interleave points of different subspaces
  std::uint64_t seed = 0;
};

struct SubspaceMixture {
  DenseMatrix points;               // P x N
  std::vector<int> labels;          // ground-truth subspace per column
  std::vector<DenseMatrix> bases;   // P x d orthonormal, one per subspace
};

/// Throws InvalidSpec unless d < P, all counts >= 1, noise_sigma >= 0 and (for
/// orthogonal bases) K * d <= P.
SubspaceMixture gen_subspace_mixture(const SubspaceMixtureSpec& spec);

/// Category-structured product-name style corpus.
///
/// Word choice inside a category follows a Zipf law over its vocabulary; each
/// word is swapped for a uniformly drawn shared term with probability
/// `leak_rate`. A fraction of the documents come in product families: a fixed
/// base plus one option from each of two small option lists, listed over the
/// full option grid (the echelon form links such variants). Another fraction
/// repeats an earlier document of the same category verbatim.
struct ShortTextSpec {
  int categories = 5;
  int vocab_per_category = 3000;
  int shared_vocab = 40;
  int min_words = 3;
  int max_words = 8;
  int docs_per_category = 600;
  double leak_rate = 0.05;
  double zipf_exponent = 1.0;
  double family_rate = 0.0;      // share of documents that belong to a family
  double duplicate_rate = 0.3;   // share of documents that repeat an earlier one
  std::uint64_t seed = 0;
};

/// Documents carry ids `doc<k>` and their category label `cat<c>`. Words within
/// a document are distinct. Order is shuffled across categories.
/// Throws InvalidSpec on invalid counts or rates.
std::vector<Document> gen_short_texts(const ShortTextSpec& spec);

}  // namespace minangle
