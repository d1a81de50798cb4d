#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace qjae {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Returns (A + A^T)/2. Idempotent down to the last bit: applying it to an
// already bitwise-symmetric matrix reproduces the same doubles.
Matrix symmetrize(const Matrix& a);

// Ordered family (X_1, ..., X_d) of real symmetric n x n matrices.
//
// Construction validates that all matrices are square, share the same
// dimension, contain only finite entries, and are symmetric within
// 1e-12 * (1 + max|A|). Inputs inside that tolerance are symmetrized, so
// every stored matrix is exactly symmetric. Instances are immutable and
// safe to share across threads.
class SymmetricTuple {
public:
  explicit SymmetricTuple(std::vector<Matrix> matrices);

  int n() const { return n_; }
  int d() const { return d_; }
  const Matrix& matrix(int j) const { return matrices_.at(static_cast<size_t>(j)); }
  const std::vector<Matrix>& matrices() const { return matrices_; }

  // Largest tolerated |A[i,j] - A[j,i]| for a given matrix.
  static double symmetry_tolerance(const Matrix& a);

private:
  std::vector<Matrix> matrices_;
  int n_ = 0;
  int d_ = 0;
};

// A shift tuple lambda = (lambda_1, ..., lambda_d) in R^d.
struct LambdaPoint {
  Vector coords;

  LambdaPoint() = default;
  explicit LambdaPoint(Vector c) : coords(std::move(c)) {}
  LambdaPoint(std::initializer_list<double> values)
      : coords(Eigen::Map<const Vector>(values.begin(),
                                        static_cast<Eigen::Index>(values.size()))) {}

  static LambdaPoint zero(int d) { return LambdaPoint(Vector::Zero(d)); }

  int size() const { return static_cast<int>(coords.size()); }
  double operator[](int j) const { return coords[j]; }
};

// An n x k matrix with orthonormal columns. The constructor rejects inputs
// with max entrywise deviation of V^T V from I_k above 1e-12.
class PartialIsometry {
public:
  explicit PartialIsometry(Matrix columns);

  int n() const { return static_cast<int>(columns_.rows()); }
  int k() const { return static_cast<int>(columns_.cols()); }
  const Matrix& columns() const { return columns_; }

private:
  Matrix columns_;
};

// Reads one Matrix Market file per path and assembles a validated
// SymmetricTuple. All file-level problems (unparsable content, non-square
// or mismatched dimensions, asymmetry beyond tolerance) are reported as
// std::runtime_error naming the offending file.
SymmetricTuple load_tuple(const std::vector<std::string>& paths);

}  // namespace qjae
