#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <unistd.h>
#include <vector>

#include "qjae/tuple.hpp"

namespace qjae::testsupport {

inline Matrix random_gaussian(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix a(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      a(i, j) = normal(rng);
    }
  }
  return a;
}

inline Matrix random_symmetric(int n, std::mt19937_64& rng) {
  return symmetrize(random_gaussian(n, n, rng));
}

inline SymmetricTuple random_tuple(int n, int d, std::mt19937_64& rng) {
  std::vector<Matrix> ms;
  ms.reserve(static_cast<size_t>(d));
  for (int j = 0; j < d; ++j) ms.push_back(random_symmetric(n, rng));
  return SymmetricTuple(std::move(ms));
}

inline Matrix random_orthogonal(int n, std::mt19937_64& rng) {
  Eigen::HouseholderQR<Matrix> qr(random_gaussian(n, n, rng));
  Matrix q = qr.householderQ();
  const Matrix& r = qr.matrixQR();
  for (int j = 0; j < n; ++j) {
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  }
  return q;
}

inline LambdaPoint random_lambda(int d, double scale, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uni(-scale, scale);
  Vector v(d);
  for (int i = 0; i < d; ++i) v(i) = uni(rng);
  return LambdaPoint(std::move(v));
}

// Simultaneously diagonalizable family Y_j = Q D_j Q^T with known ground
// truth. joint(j, i) is the i-th joint eigenvalue of Y_j; pairwise distances
// between joint-eigenvalue columns are at least min_gap.
struct CommutingFamily {
  std::vector<Matrix> ys;
  Matrix q;     // shared eigenbasis, W = q jointly diagonalizes ys
  Matrix joint; // d x k ground-truth diagonals
};

inline CommutingFamily random_commuting_family(int k, int d, double min_gap,
                                               std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  Matrix joint(d, k);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    for (int j = 0; j < d; ++j) {
      for (int i = 0; i < k; ++i) joint(j, i) = uni(rng);
    }
    double gap = std::numeric_limits<double>::infinity();
    for (int i = 0; i < k; ++i) {
      for (int l = i + 1; l < k; ++l) {
        gap = std::min(gap, (joint.col(i) - joint.col(l)).norm());
      }
    }
    if (gap >= min_gap) {
      CommutingFamily fam;
      fam.joint = joint;
      fam.q = random_orthogonal(k, rng);
      fam.ys.reserve(static_cast<size_t>(d));
      for (int j = 0; j < d; ++j) {
        fam.ys.push_back(symmetrize(fam.q * joint.row(j).asDiagonal() * fam.q.transpose()));
      }
      return fam;
    }
  }
  throw std::runtime_error("random_commuting_family: could not satisfy gap constraint");
}

// Independent oracle for d = 1: mu at lambda is the distance from lambda to
// the spectrum of X.
inline double oracle_mu_d1(const Matrix& x, double lambda) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(x, Eigen::EigenvaluesOnly);
  return (es.eigenvalues().array() - lambda).abs().minCoeff();
}

// Simultaneous eigendecomposition oracle for an exactly commuting family:
// eigendecompose a generic linear combination and read off the per-matrix
// Rayleigh quotients. Retries with reweighted combinations if the chosen
// one is spectrally degenerate.
inline Matrix oracle_joint_diagonals(const std::vector<Matrix>& ys) {
  const int d = static_cast<int>(ys.size());
  const int k = static_cast<int>(ys.front().rows());
  double shift = 1.0;
  for (int attempt = 0; attempt < 16; ++attempt) {
    Matrix combo = Matrix::Zero(k, k);
    double w = 1.0;
    for (const Matrix& y : ys) {
      combo += w * y;
      w *= 0.6180339887498949 * shift;
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(combo);
    double gap = std::numeric_limits<double>::infinity();
    for (int i = 0; i + 1 < k; ++i) {
      gap = std::min(gap, es.eigenvalues()(i + 1) - es.eigenvalues()(i));
    }
    if (gap > 1e-6) {
      Matrix diag(d, k);
      for (int j = 0; j < d; ++j) {
        for (int i = 0; i < k; ++i) {
          const Vector v = es.eigenvectors().col(i);
          diag(j, i) = v.dot(ys[static_cast<size_t>(j)] * v);
        }
      }
      return diag;
    }
    shift *= 1.4142135623730951;
  }
  throw std::runtime_error("oracle_joint_diagonals: no spectrally separated combination found");
}

// Greedy matching of recovered joint-eigenvalue columns against an oracle;
// returns the largest column-wise distance. Valid when the oracle's columns
// are separated well beyond the expected error.
inline double match_joint_columns(const Matrix& got, const Matrix& expected) {
  const int k = static_cast<int>(expected.cols());
  std::vector<bool> used(static_cast<size_t>(k), false);
  double worst = 0.0;
  for (int i = 0; i < k; ++i) {
    int best = -1;
    double best_dist = std::numeric_limits<double>::infinity();
    for (int l = 0; l < k; ++l) {
      if (used[static_cast<size_t>(l)]) continue;
      const double dist = (got.col(i) - expected.col(l)).norm();
      if (dist < best_dist) {
        best_dist = dist;
        best = l;
      }
    }
    used[static_cast<size_t>(best)] = true;
    worst = std::max(worst, best_dist);
  }
  return worst;
}

inline bool bitwise_equal(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      if (a(i, j) != b(i, j)) return false;
    }
  }
  return true;
}

// Scratch directory removed on scope exit.
class TempDir {
public:
  explicit TempDir(const std::string& tag) {
    static std::atomic<unsigned> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("qjae_test_" + tag + "_" + std::to_string(::getpid()) + "_" +
             std::to_string(counter.fetch_add(1)));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

private:
  std::filesystem::path path_;
};

inline void write_text(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << content;
}

inline std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error(path + ": cannot open");
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

}  // namespace qjae::testsupport
