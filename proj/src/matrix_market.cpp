#include "qjae/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "qjae/io_util.hpp"

namespace qjae {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

[[noreturn]] void fail(const std::string& name, const std::string& why) {
  throw std::runtime_error(name + ": unparsable Matrix Market file (" + why + ")");
}

// Next non-comment, non-blank line.
bool next_data_line(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    size_t i = line.find_first_not_of(" \t\r\n");
    if (i == std::string::npos) continue;
    if (line[i] == '%') continue;
    return true;
  }
  return false;
}

double parse_value(const std::string& tok, const std::string& name) {
  size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(tok, &pos);
  } catch (const std::exception&) {
    fail(name, "bad numeric value '" + tok + "'");
  }
  if (pos != tok.size()) fail(name, "bad numeric value '" + tok + "'");
  if (!std::isfinite(v)) fail(name, "non-finite value '" + tok + "'");
  return v;
}

}  // namespace

Eigen::MatrixXd read_matrix_market(std::istream& in, const std::string& name) {
  std::string header;
  if (!std::getline(in, header)) fail(name, "empty file");
  std::istringstream hs(header);
  std::string banner, object, format, field, symmetry;
  hs >> banner >> object >> format >> field >> symmetry;
  if (lower(banner) != "%%matrixmarket") fail(name, "missing %%MatrixMarket banner");
  if (lower(object) != "matrix") fail(name, "object '" + object + "' not supported");
  format = lower(format);
  field = lower(field);
  symmetry = lower(symmetry);
  if (format != "array" && format != "coordinate") {
    fail(name, "format '" + format + "' not supported");
  }
  if (field != "real" && field != "integer") {
    fail(name, "field '" + field + "' not supported");
  }
  if (symmetry != "general" && symmetry != "symmetric") {
    fail(name, "symmetry '" + symmetry + "' not supported");
  }
  const bool sym = symmetry == "symmetric";

  std::string line;
  if (!next_data_line(in, line)) fail(name, "missing size line");
  std::istringstream sz(line);
  long rows = 0, cols = 0, nnz = 0;
  if (!(sz >> rows >> cols)) fail(name, "bad size line");
  if (rows < 1 || cols < 1) fail(name, "dimensions must be positive");
  if (sym && rows != cols) fail(name, "symmetric matrix must be square");

  Eigen::MatrixXd a(rows, cols);

  if (format == "array") {
    long expected = sym ? cols * (cols + 1) / 2 : rows * cols;
    std::vector<double> vals;
    vals.reserve(static_cast<size_t>(expected));
    std::string tok;
    while (static_cast<long>(vals.size()) < expected) {
      if (!next_data_line(in, line)) fail(name, "too few values");
      std::istringstream ls(line);
      while (ls >> tok) {
        if (static_cast<long>(vals.size()) >= expected) fail(name, "too many values");
        vals.push_back(parse_value(tok, name));
      }
    }
    size_t idx = 0;
    if (sym) {
      // lower triangle, column-major
      for (long j = 0; j < cols; ++j) {
        for (long i = j; i < rows; ++i) {
          a(i, j) = vals[idx];
          a(j, i) = vals[idx];
          ++idx;
        }
      }
    } else {
      for (long j = 0; j < cols; ++j) {
        for (long i = 0; i < rows; ++i) {
          a(i, j) = vals[idx++];
        }
      }
    }
  } else {
    std::istringstream sz2(line);
    if (!(sz2 >> rows >> cols >> nnz)) fail(name, "bad coordinate size line");
    if (nnz < 0) fail(name, "negative entry count");
    a.setZero();
    for (long e = 0; e < nnz; ++e) {
      if (!next_data_line(in, line)) fail(name, "too few entries");
      std::istringstream ls(line);
      long i = 0, j = 0;
      std::string tok;
      if (!(ls >> i >> j >> tok)) fail(name, "bad coordinate entry");
      if (i < 1 || i > rows || j < 1 || j > cols) fail(name, "entry index out of range");
      const double v = parse_value(tok, name);
      a(i - 1, j - 1) = v;
      if (sym) a(j - 1, i - 1) = v;
    }
  }
  return a;
}

Eigen::MatrixXd read_matrix_market(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(path + ": cannot open file");
  return read_matrix_market(in, path);
}

void write_matrix_market(const Eigen::MatrixXd& a, std::ostream& out) {
  out << "%%MatrixMarket matrix array real general\n";
  out << a.rows() << " " << a.cols() << "\n";
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      out << to_g17(a(i, j)) << "\n";
    }
  }
}

}  // namespace qjae
