#include "qjae/tuple.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "qjae/matrix_market.hpp"

namespace qjae {

Matrix symmetrize(const Matrix& a) {
  if (a.rows() != a.cols()) {
    throw std::invalid_argument("symmetrize: matrix must be square");
  }
  return 0.5 * (a + a.transpose());
}

double SymmetricTuple::symmetry_tolerance(const Matrix& a) {
  return 1e-12 * (1.0 + a.cwiseAbs().maxCoeff());
}

SymmetricTuple::SymmetricTuple(std::vector<Matrix> matrices) : matrices_(std::move(matrices)) {
  if (matrices_.empty()) {
    throw std::invalid_argument("SymmetricTuple: need at least one matrix");
  }
  d_ = static_cast<int>(matrices_.size());
  const Eigen::Index n = matrices_.front().rows();
  if (n < 1) {
    throw std::invalid_argument("SymmetricTuple: matrices must be at least 1x1");
  }
  for (Matrix& a : matrices_) {
    if (a.rows() != a.cols()) {
      throw std::invalid_argument("SymmetricTuple: matrix is not square");
    }
    if (a.rows() != n) {
      throw std::invalid_argument("SymmetricTuple: dimension mismatch across matrices");
    }
    if (!a.allFinite()) {
      throw std::invalid_argument("SymmetricTuple: matrix has non-finite entries");
    }
    const double asym = (a - a.transpose()).cwiseAbs().maxCoeff();
    if (asym > symmetry_tolerance(a)) {
      throw std::invalid_argument("SymmetricTuple: asymmetry beyond tolerance");
    }
    a = symmetrize(a);
  }
  n_ = static_cast<int>(n);
}

PartialIsometry::PartialIsometry(Matrix columns) : columns_(std::move(columns)) {
  const Eigen::Index n = columns_.rows();
  const Eigen::Index k = columns_.cols();
  if (k < 1 || n < k) {
    throw std::invalid_argument("PartialIsometry: need 1 <= k <= n");
  }
  const Matrix gram = columns_.transpose() * columns_;
  const double dev = (gram - Matrix::Identity(k, k)).cwiseAbs().maxCoeff();
  if (!(dev <= 1e-12)) {
    throw std::invalid_argument("PartialIsometry: columns are not orthonormal");
  }
}

SymmetricTuple load_tuple(const std::vector<std::string>& paths) {
  if (paths.empty()) {
    throw std::runtime_error("load_tuple: no input files");
  }
  std::vector<Matrix> ms;
  ms.reserve(paths.size());
  Eigen::Index n = -1;
  for (const std::string& path : paths) {
    Matrix a = read_matrix_market(path);
    if (a.rows() != a.cols()) {
      throw std::runtime_error(path + ": matrix is not square");
    }
    if (n < 0) {
      n = a.rows();
    } else if (a.rows() != n) {
      throw std::runtime_error(path + ": dimension mismatch with preceding files");
    }
    const double asym = (a - a.transpose()).cwiseAbs().maxCoeff();
    if (asym > SymmetricTuple::symmetry_tolerance(a)) {
      throw std::runtime_error(path + ": asymmetry beyond tolerance");
    }
    ms.push_back(std::move(a));
  }
  return SymmetricTuple(std::move(ms));
}

}  // namespace qjae
