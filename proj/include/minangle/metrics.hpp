#pragma once

#include <span>
#include <string>
#include <vector>

namespace minangle {

/// Counts of predicted cluster (rows) against true class (columns).
struct ContingencyTable {
  std::vector<std::vector<long>> counts;
  std::vector<long> row_sums;
  std::vector<long> column_sums;
  long total = 0;
};

/// Labels may be arbitrary integers; they are densified internally.
/// Throws LengthMismatch or Empty.
ContingencyTable contingency(std::span<const int> predicted, std::span<const int> truth);

double purity(std::span<const int> predicted, std::span<const int> truth);

/// Mutual information over sqrt(H(pred) H(truth)), natural logs. 1 when both
/// partitions are a single cluster; 0 when exactly one entropy vanishes.
double nmi(std::span<const int> predicted, std::span<const int> truth);

/// Hubert-Arabie adjusted Rand index; 1 when numerator and denominator both vanish.
double ari(std::span<const int> predicted, std::span<const int> truth);

struct MetricScores {
  double purity = 0.0;
  double nmi = 0.0;
  double ari = 0.0;
};

MetricScores evaluate(std::span<const int> predicted, std::span<const int> truth);

/// Maps each distinct string to an integer code by first appearance.
std::vector<int> encode_labels(const std::vector<std::string>& labels);

}  // namespace minangle
