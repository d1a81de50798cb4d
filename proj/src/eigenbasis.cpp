#include "qjae/eigenbasis.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "qjae/io_util.hpp"
#include "qjae/matrix_market.hpp"
#include "qjae/quadps.hpp"

namespace qjae::eigenbasis {

Matrix build_L(const SymmetricTuple& t, const LambdaPoint& lambda) {
  return quadps::build_Q(t, lambda);
}

EigenbasisResult truncated_joint_eigenbasis(const SymmetricTuple& t, const LambdaPoint& lambda,
                                            int k, double delta, Selector phi, int max_sweeps) {
  const int n = t.n();
  const int d = t.d();
  if (k < 1 || k > n) {
    throw std::invalid_argument("truncated_joint_eigenbasis: need 1 <= k <= n");
  }
  if (!(delta > 0.0)) {
    throw std::invalid_argument("truncated_joint_eigenbasis: delta must be positive");
  }

  const Matrix L = build_L(t, lambda);
  Eigen::SelfAdjointEigenSolver<Matrix> es(L);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("truncated_joint_eigenbasis: eigensolver did not converge");
  }

  // Eigen returns ascending eigenvalues; take the leading or trailing k.
  const int first = phi == Selector::Smallest ? 0 : n - k;
  Matrix v0 = es.eigenvectors().middleCols(first, k);

  bool cluster_warning = false;
  if (k < n) {
    const double sel = phi == Selector::Smallest ? es.eigenvalues()(k - 1) : es.eigenvalues()(first);
    const double beyond =
        phi == Selector::Smallest ? es.eigenvalues()(k) : es.eigenvalues()(first - 1);
    cluster_warning = std::abs(sel - beyond) <= 1e-10 * (1.0 + std::abs(sel));
  }

  Vector l_eigenvalues(k);
  for (int i = 0; i < k; ++i) {
    l_eigenvalues(i) = phi == Selector::Smallest ? es.eigenvalues()(i)
                                                 : es.eigenvalues()(n - 1 - i);
  }

  std::vector<Matrix> ys;
  ys.reserve(static_cast<size_t>(d));
  for (int j = 0; j < d; ++j) {
    Matrix shifted = t.matrix(j);
    shifted.diagonal().array() -= lambda[j];
    ys.push_back(symmetrize(v0.transpose() * shifted * v0));
  }

  jointdiag::JointDiagResult jd = jointdiag::joint_diagonalize(std::move(ys), delta, max_sweeps);
  Matrix v = v0 * jd.W;

  // Deterministic column order: sort by the diagonal of V^T L V.
  Vector scores(k);
  {
    const Matrix lv = L * v;
    for (int i = 0; i < k; ++i) scores(i) = v.col(i).dot(lv.col(i));
  }
  std::vector<int> order(static_cast<size_t>(k));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return phi == Selector::Smallest ? scores(a) < scores(b) : scores(a) > scores(b);
  });
  Matrix sorted(n, k);
  for (int i = 0; i < k; ++i) sorted.col(i) = v.col(order[static_cast<size_t>(i)]);
  v = std::move(sorted);

  Matrix lambdas(d, k);
  for (int j = 0; j < d; ++j) {
    const Matrix xv = t.matrix(j) * v;
    for (int i = 0; i < k; ++i) lambdas(j, i) = v.col(i).dot(xv.col(i));
  }

  PartialIsometry iso(std::move(v));
  const double residual_sq = residual(t, iso, lambdas);
  return EigenbasisResult{std::move(iso), std::move(lambdas), residual_sq,
                          std::move(l_eigenvalues), std::move(jd), phi, cluster_warning};
}

double residual(const SymmetricTuple& t, const PartialIsometry& V, const Matrix& lambdas) {
  if (V.n() != t.n()) {
    throw std::invalid_argument("residual: V row count does not match tuple dimension");
  }
  if (lambdas.rows() != t.d() || lambdas.cols() != V.k()) {
    throw std::invalid_argument("residual: lambdas must be d x k");
  }
  double sum = 0.0;
  for (int j = 0; j < t.d(); ++j) {
    Matrix r = t.matrix(j) * V.columns();
    for (int i = 0; i < V.k(); ++i) {
      r.col(i) -= lambdas(j, i) * V.columns().col(i);
    }
    sum += r.squaredNorm();
  }
  return sum;
}

void save_result(const EigenbasisResult& r, const std::string& dir) {
  std::filesystem::create_directories(dir);
  const std::filesystem::path base(dir);

  std::ostringstream vmtx;
  write_matrix_market(r.V.columns(), vmtx);

  std::ostringstream lcsv;
  for (Eigen::Index j = 0; j < r.lambdas.rows(); ++j) {
    for (Eigen::Index i = 0; i < r.lambdas.cols(); ++i) {
      if (i > 0) lcsv << ",";
      lcsv << to_g17(r.lambdas(j, i));
    }
    lcsv << "\n";
  }

  std::ostringstream diag;
  diag << "residual_sq=" << to_g17(r.residual_sq) << "\n";
  diag << "sweeps=" << r.jd.sweeps << "\n";
  diag << "converged=" << (r.jd.converged ? "true" : "false") << "\n";
  diag << "L_eigenvalues=";
  for (Eigen::Index i = 0; i < r.L_eigenvalues.size(); ++i) {
    if (i > 0) diag << ",";
    diag << to_g17(r.L_eigenvalues(i));
  }
  diag << "\n";
  diag << "cluster_warning=" << (r.cluster_warning ? "true" : "false") << "\n";

  atomic_write_file((base / "V.mtx").string(), vmtx.str());
  atomic_write_file((base / "lambdas.csv").string(), lcsv.str());
  atomic_write_file((base / "diagnostics.txt").string(), diag.str());
}

}  // namespace qjae::eigenbasis
