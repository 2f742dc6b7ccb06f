#include "saddle/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <string>

#include "saddle/errors.hpp"

namespace saddle {

namespace {

struct Banner {
  std::string object, format, field, symmetry;
};

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

Banner read_banner(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("matrix market: empty input");
  std::istringstream ss(line);
  std::string tag;
  Banner b;
  ss >> tag >> b.object >> b.format >> b.field >> b.symmetry;
  if (tag != "%%MatrixMarket") throw std::runtime_error("matrix market: missing banner");
  b.object = lower(b.object);
  b.format = lower(b.format);
  b.field = lower(b.field);
  b.symmetry = lower(b.symmetry);
  if (b.object != "matrix") throw std::runtime_error("matrix market: unsupported object " + b.object);
  if (b.field != "real" && b.field != "integer" && b.field != "double") {
    throw std::runtime_error("matrix market: unsupported field " + b.field);
  }
  if (b.symmetry != "general" && b.symmetry != "symmetric") {
    throw std::runtime_error("matrix market: unsupported symmetry " + b.symmetry);
  }
  return b;
}

// Next line that is neither blank nor a comment.
std::string data_line(std::istream& in) {
  std::string line;
  while (std::getline(in, line)) {
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '%') continue;
    return line;
  }
  throw std::runtime_error("matrix market: unexpected end of input");
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("matrix market: cannot open " + path.string() + " for writing");
  return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("matrix market: cannot open " + path.string());
  return in;
}

}  // namespace

CsrMatrix read_matrix_market(std::istream& in) {
  Banner b = read_banner(in);
  if (b.format != "coordinate") throw std::runtime_error("matrix market: expected coordinate format");
  std::istringstream header(data_line(in));
  long long nrows = 0, ncols = 0, nnz = 0;
  if (!(header >> nrows >> ncols >> nnz)) throw std::runtime_error("matrix market: bad size line");
  std::vector<Triplet> entries;
  entries.reserve(static_cast<std::size_t>(b.symmetry == "symmetric" ? 2 * nnz : nnz));
  for (long long k = 0; k < nnz; ++k) {
    std::istringstream ss(data_line(in));
    long long i = 0, j = 0;
    double v = 0.0;
    if (!(ss >> i >> j >> v)) throw std::runtime_error("matrix market: bad entry line");
    if (i < 1 || i > nrows || j < 1 || j > ncols) throw std::runtime_error("matrix market: entry out of range");
    auto r = static_cast<Index>(i - 1);
    auto c = static_cast<Index>(j - 1);
    entries.push_back({r, c, v});
    if (b.symmetry == "symmetric" && r != c) entries.push_back({c, r, v});
  }
  return CsrMatrix::from_triplets(static_cast<Index>(nrows), static_cast<Index>(ncols), std::move(entries));
}

CsrMatrix read_matrix_market(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_matrix_market(in);
}

void write_matrix_market(std::ostream& out, const CsrMatrix& m, MatrixMarketSymmetry symmetry) {
  const bool sym = symmetry == MatrixMarketSymmetry::Symmetric;
  if (sym && !m.is_symmetric(1e-12)) {
    throw NotSymmetricError("matrix market: symmetric output requested for a nonsymmetric matrix");
  }
  auto o = m.row_offsets();
  auto c = m.col_indices();
  auto v = m.values();
  std::size_t count = 0;
  for (Index i = 0; i < m.rows(); ++i)
    for (Index p = o[i]; p < o[i + 1]; ++p)
      if (!sym || c[p] <= i) ++count;
  out << "%%MatrixMarket matrix coordinate real " << (sym ? "symmetric" : "general") << '\n';
  out << m.rows() << ' ' << m.cols() << ' ' << count << '\n';
  out << std::setprecision(17);
  for (Index i = 0; i < m.rows(); ++i)
    for (Index p = o[i]; p < o[i + 1]; ++p)
      if (!sym || c[p] <= i) out << i + 1 << ' ' << c[p] + 1 << ' ' << v[p] << '\n';
}

void write_matrix_market(const std::filesystem::path& path, const CsrMatrix& m,
                         MatrixMarketSymmetry symmetry) {
  auto out = open_out(path);
  write_matrix_market(out, m, symmetry);
}

std::vector<double> read_matrix_market_vector(std::istream& in) {
  Banner b = read_banner(in);
  if (b.format != "array") throw std::runtime_error("matrix market: expected array format for a vector");
  std::istringstream header(data_line(in));
  long long nrows = 0, ncols = 0;
  if (!(header >> nrows >> ncols) || ncols != 1) {
    throw std::runtime_error("matrix market: vector must have exactly one column");
  }
  std::vector<double> v(static_cast<std::size_t>(nrows));
  for (auto& x : v) {
    std::istringstream ss(data_line(in));
    if (!(ss >> x)) throw std::runtime_error("matrix market: bad vector entry");
  }
  return v;
}

std::vector<double> read_matrix_market_vector(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_matrix_market_vector(in);
}

void write_matrix_market_vector(std::ostream& out, std::span<const double> v) {
  out << "%%MatrixMarket matrix array real general\n" << v.size() << " 1\n";
  out << std::setprecision(17);
  for (double x : v) out << x << '\n';
}

void write_matrix_market_vector(const std::filesystem::path& path, std::span<const double> v) {
  auto out = open_out(path);
  write_matrix_market_vector(out, v);
}

}  // namespace saddle
