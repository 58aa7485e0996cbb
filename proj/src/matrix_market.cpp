#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "dsk/io.hpp"

namespace dsk {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  return in;
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

SparseMatrix read_matrix_market(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(in, line)) throw ParseError(1, "empty file");
  ++lineno;
  std::istringstream header(line);
  std::string banner, object, format, field, symmetry;
  header >> banner >> object >> format >> field >> symmetry;
  if (banner != "%%MatrixMarket" || lower(object) != "matrix" || lower(format) != "coordinate")
    throw ParseError(lineno, "expected '%%MatrixMarket matrix coordinate' header");
  field = lower(field);
  symmetry = lower(symmetry);
  if (field != "real" && field != "integer" && field != "pattern")
    throw ParseError(lineno, "unsupported field '" + field + "'");
  if (symmetry != "general" && symmetry != "symmetric" && symmetry != "skew-symmetric")
    throw ParseError(lineno, "unsupported symmetry '" + symmetry + "'");

  long long rows = -1, cols = -1, entries = -1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '%') continue;
    std::istringstream size_line(line);
    std::string extra;
    if (!(size_line >> rows >> cols >> entries) || (size_line >> extra))
      throw ParseError(lineno, "malformed size line");
    break;
  }
  if (rows < 0) throw ParseError(lineno, "missing size line");
  if (rows != cols) throw ParseError(lineno, "matrix is not square");

  std::vector<Triplet> triplets;
  triplets.reserve(static_cast<std::size_t>(entries));
  long long read = 0;
  while (read < entries && std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '%') continue;
    std::istringstream entry(line);
    long long i = 0, j = 0;
    double v = 1.0;
    if (!(entry >> i >> j)) throw ParseError(lineno, "malformed entry");
    if (field != "pattern" && !(entry >> v)) throw ParseError(lineno, "missing value");
    std::string extra;
    if (entry >> extra) throw ParseError(lineno, "trailing characters in entry");
    if (i < 1 || j < 1 || i > rows || j > cols) throw ParseError(lineno, "index out of range");
    triplets.push_back({static_cast<Index>(i - 1), static_cast<Index>(j - 1), v});
    if (i != j && symmetry != "general")
      triplets.push_back({static_cast<Index>(j - 1), static_cast<Index>(i - 1), symmetry == "symmetric" ? v : -v});
    ++read;
  }
  if (read != entries) throw ParseError(lineno, "expected " + std::to_string(entries) + " entries");
  return SparseMatrix::from_coo(static_cast<Index>(rows), triplets);
}

SparseMatrix read_matrix_market(const std::string& path) {
  auto in = open_input(path);
  return read_matrix_market(in);
}

void write_matrix_market(std::ostream& out, const SparseMatrix& a) {
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << a.n() << ' ' << a.n() << ' ' << a.nnz() << '\n';
  for (const auto& t : a.triplets()) out << t.row + 1 << ' ' << t.col + 1 << ' ' << format_double(t.value) << '\n';
}

void write_matrix_market(const std::string& path, const SparseMatrix& a) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  write_matrix_market(out, a);
}

}  // namespace dsk
