#include "minangle/metrics.hpp"

#include "minangle/error.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace minangle {

namespace {

std::vector<int> densify(std::span<const int> labels, int& count) {
  std::unordered_map<int, int> codes;
  std::vector<int> out(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    out[i] = codes.emplace(labels[i], static_cast<int>(codes.size())).first->second;
  }
  count = static_cast<int>(codes.size());
  return out;
}

double choose2(long n) { return 0.5 * static_cast<double>(n) * static_cast<double>(n - 1); }

double entropy(const std::vector<long>& sums, long total) {
  double h = 0.0;
  for (const long s : sums) {
    if (s == 0) continue;
    const double p = static_cast<double>(s) / static_cast<double>(total);
    h -= p * std::log(p);
  }
  return h;
}

}  // namespace

ContingencyTable contingency(std::span<const int> predicted, std::span<const int> truth) {
  if (predicted.size() != truth.size()) {
    throw Error(ErrorCode::LengthMismatch, "metrics: " + std::to_string(predicted.size()) +
                                               " predicted labels vs " + std::to_string(truth.size()) + " true labels");
  }
  if (predicted.empty()) throw Error(ErrorCode::Empty, "metrics: no labels");
  int rows = 0, cols = 0;
  const auto p = densify(predicted, rows);
  const auto t = densify(truth, cols);
  ContingencyTable table;
  table.counts.assign(static_cast<std::size_t>(rows), std::vector<long>(static_cast<std::size_t>(cols), 0));
  table.row_sums.assign(static_cast<std::size_t>(rows), 0);
  table.column_sums.assign(static_cast<std::size_t>(cols), 0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    ++table.counts[p[i]][t[i]];
    ++table.row_sums[p[i]];
    ++table.column_sums[t[i]];
  }
  table.total = static_cast<long>(p.size());
  return table;
}

double purity(std::span<const int> predicted, std::span<const int> truth) {
  const auto table = contingency(predicted, truth);
  long majority = 0;
  for (const auto& row : table.counts) majority += *std::max_element(row.begin(), row.end());
  return static_cast<double>(majority) / static_cast<double>(table.total);
}

double nmi(std::span<const int> predicted, std::span<const int> truth) {
  const auto table = contingency(predicted, truth);
  const double hp = entropy(table.row_sums, table.total);
  const double ht = entropy(table.column_sums, table.total);
  if (hp == 0.0 && ht == 0.0) return 1.0;
  if (hp == 0.0 || ht == 0.0) return 0.0;
  const double n = static_cast<double>(table.total);
  double mi = 0.0;
  for (std::size_t k = 0; k < table.counts.size(); ++k) {
    for (std::size_t l = 0; l < table.column_sums.size(); ++l) {
      const long c = table.counts[k][l];
      if (c == 0) continue;
      mi += (c / n) * std::log(c * n / (static_cast<double>(table.row_sums[k]) * table.column_sums[l]));
    }
  }
  return std::clamp(mi / std::sqrt(hp * ht), 0.0, 1.0);
}

double ari(std::span<const int> predicted, std::span<const int> truth) {
  const auto table = contingency(predicted, truth);
  double index = 0.0, rows = 0.0, cols = 0.0;
  for (const auto& row : table.counts) {
    for (const long c : row) index += choose2(c);
  }
  for (const long a : table.row_sums) rows += choose2(a);
  for (const long b : table.column_sums) cols += choose2(b);
  const double pairs = choose2(table.total);
  const double expected = pairs > 0.0 ? rows * cols / pairs : 0.0;
  const double maximum = 0.5 * (rows + cols);
  const double numerator = index - expected;
  const double denominator = maximum - expected;
  if (denominator == 0.0) return numerator == 0.0 ? 1.0 : 0.0;
  return numerator / denominator;
}

MetricScores evaluate(std::span<const int> predicted, std::span<const int> truth) {
  return {purity(predicted, truth), nmi(predicted, truth), ari(predicted, truth)};
}

std::vector<int> encode_labels(const std::vector<std::string>& labels) {
  std::unordered_map<std::string, int> codes;
  std::vector<int> out(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    out[i] = codes.emplace(labels[i], static_cast<int>(codes.size())).first->second;
  }
  return out;
}

}  // namespace minangle
