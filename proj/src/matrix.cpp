#include "minangle/matrix.hpp"

#include "minangle/error.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

namespace minangle {

void write_matrix_market(std::ostream& out, const SparseMatrix& m) {
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << m.rows() << ' ' << m.cols() << ' ' << m.nonZeros() << '\n';
  out << std::setprecision(17);
  for (int j = 0; j < m.outerSize(); ++j) {
    for (SparseMatrix::InnerIterator it(m, j); it; ++it) {
      out << it.row() + 1 << ' ' << j + 1 << ' ' << it.value() << '\n';
    }
  }
}

void write_matrix_market(const std::filesystem::path& path, const SparseMatrix& m) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot open for writing: " + path.string());
  write_matrix_market(out, m);
  if (!out) throw Error(ErrorCode::Io, "write failed: " + path.string());
}

namespace {

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

}  // namespace

SparseMatrix read_matrix_market(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::Parse, "matrix market: empty input");
  std::istringstream banner(lower(line));
  std::string tag, object, format, field, symmetry;
  banner >> tag >> object >> format >> field >> symmetry;
  if (tag != "%%matrixmarket" || object != "matrix" || format != "coordinate") {
    throw Error(ErrorCode::Parse, "matrix market: unsupported banner: " + line);
  }
  const bool pattern = field == "pattern";
  if (!pattern && field != "real" && field != "integer" && field != "double") {
    throw Error(ErrorCode::Parse, "matrix market: unsupported field: " + field);
  }
  const bool symmetric = symmetry == "symmetric";
  if (!symmetric && symmetry != "general") {
    throw Error(ErrorCode::Parse, "matrix market: unsupported symmetry: " + symmetry);
  }

  while (std::getline(in, line)) {
    if (!line.empty() && line[0] != '%') break;
  }
  long rows = 0, cols = 0, nnz = 0;
  {
    std::istringstream header(line);
    if (!(header >> rows >> cols >> nnz) || rows < 0 || cols < 0 || nnz < 0) {
      throw Error(ErrorCode::Parse, "matrix market: bad size line: " + line);
    }
  }

  std::vector<Eigen::Triplet<double, int>> triplets;
  triplets.reserve(static_cast<std::size_t>(symmetric ? 2 * nnz : nnz));
  for (long k = 0; k < nnz; ++k) {
    if (!std::getline(in, line)) throw Error(ErrorCode::Parse, "matrix market: truncated entries");
    if (line.empty() || line[0] == '%') {
      --k;
      continue;
    }
    std::istringstream entry(line);
    long i = 0, j = 0;
    double v = 1.0;
    if (!(entry >> i >> j) || (!pattern && !(entry >> v))) {
      throw Error(ErrorCode::Parse, "matrix market: bad entry: " + line);
    }
    if (i < 1 || i > rows || j < 1 || j > cols) {
      throw Error(ErrorCode::Parse, "matrix market: index out of range: " + line);
    }
    triplets.emplace_back(static_cast<int>(i - 1), static_cast<int>(j - 1), v);
    if (symmetric && i != j) triplets.emplace_back(static_cast<int>(j - 1), static_cast<int>(i - 1), v);
  }

  SparseMatrix m(static_cast<int>(rows), static_cast<int>(cols));
  m.setFromTriplets(triplets.begin(), triplets.end());
  m.makeCompressed();
  return m;
}

SparseMatrix read_matrix_market(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open: " + path.string());
  return read_matrix_market(in);
}

SparseMatrix select_columns(const SparseMatrix& m, const std::vector<int>& columns) {
  SparseMatrix out(m.rows(), static_cast<int>(columns.size()));
  std::vector<Eigen::Triplet<double, int>> triplets;
  for (std::size_t k = 0; k < columns.size(); ++k) {
    for (SparseMatrix::InnerIterator it(m, columns[k]); it; ++it) {
      triplets.emplace_back(it.row(), static_cast<int>(k), it.value());
    }
  }
  out.setFromTriplets(triplets.begin(), triplets.end());
  out.makeCompressed();
  return out;
}

double max_abs(const SparseMatrix& m) {
  double best = 0.0;
  for (int j = 0; j < m.outerSize(); ++j) {
    for (SparseMatrix::InnerIterator it(m, j); it; ++it) best = std::max(best, std::abs(it.value()));
  }
  return best;
}

bool all_finite(const SparseMatrix& m) {
  for (int j = 0; j < m.outerSize(); ++j) {
    for (SparseMatrix::InnerIterator it(m, j); it; ++it) {
      if (!std::isfinite(it.value())) return false;
    }
  }
  return true;
}

}  // namespace minangle
