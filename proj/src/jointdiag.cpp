#include "qjae/jointdiag.hpp"

#include <cmath>
#include <stdexcept>

namespace qjae::jointdiag {

namespace {

int checked_dim(const std::vector<Matrix>& ys) {
  if (ys.empty()) {
    throw std::invalid_argument("jointdiag: need at least one matrix");
  }
  const Eigen::Index k = ys.front().rows();
  if (k < 1) {
    throw std::invalid_argument("jointdiag: matrices must be at least 1x1");
  }
  for (const Matrix& y : ys) {
    if (y.rows() != y.cols() || y.rows() != k) {
      throw std::invalid_argument("jointdiag: shape mismatch across matrices");
    }
  }
  return static_cast<int>(k);
}

// Two-sided rotation Y <- R^T Y R in the (p, q) plane, where R is the
// identity except R[p,p] = R[q,q] = c, R[q,p] = s, R[p,q] = -s. Writes both
// triangles so Y stays exactly symmetric.
void apply_rotation(Matrix& y, int p, int q, double c, double s) {
  const int k = static_cast<int>(y.rows());
  const double ypp = y(p, p);
  const double yqq = y(q, q);
  const double ypq = y(p, q);
  for (int r = 0; r < k; ++r) {
    if (r == p || r == q) continue;
    const double yrp = y(r, p);
    const double yrq = y(r, q);
    const double np = c * yrp + s * yrq;
    const double nq = -s * yrp + c * yrq;
    y(r, p) = np;
    y(p, r) = np;
    y(r, q) = nq;
    y(q, r) = nq;
  }
  y(p, p) = c * c * ypp + 2.0 * c * s * ypq + s * s * yqq;
  y(q, q) = s * s * ypp - 2.0 * c * s * ypq + c * c * yqq;
  const double npq = (c * c - s * s) * ypq + c * s * (yqq - ypp);
  y(p, q) = npq;
  y(q, p) = npq;
}

void apply_rotation_right(Matrix& w, int p, int q, double c, double s) {
  const int k = static_cast<int>(w.rows());
  for (int r = 0; r < k; ++r) {
    const double wrp = w(r, p);
    const double wrq = w(r, q);
    w(r, p) = c * wrp + s * wrq;
    w(r, q) = -s * wrp + c * wrq;
  }
}

}  // namespace

double off_norm(const std::vector<Matrix>& ys) {
  const int k = checked_dim(ys);
  double sum = 0.0;
  for (const Matrix& y : ys) {
    for (int i = 0; i < k; ++i) {
      for (int l = 0; l < k; ++l) {
        if (i == l) continue;
        sum += y(i, l) * y(i, l);
      }
    }
  }
  return sum;
}

std::pair<double, double> rotation_angle(const std::vector<Matrix>& ys, int p, int q) {
  const int k = checked_dim(ys);
  if (p < 0 || q <= p || q >= k) {
    throw std::invalid_argument("rotation_angle: need 0 <= p < q < k");
  }
  // G = sum_j h_j h_j^T with h_j = (Y_j[p,p] - Y_j[q,q], 2 Y_j[p,q]).
  double g11 = 0.0, g12 = 0.0, g22 = 0.0;
  for (const Matrix& y : ys) {
    const double a = y(p, p) - y(q, q);
    const double o = 2.0 * y(p, q);
    g11 += a * a;
    g12 += a * o;
    g22 += o * o;
  }
  // Unit eigenvector (x, y) of G for its largest eigenvalue, with x >= 0.
  double x, yv;
  if (g12 == 0.0) {
    if (g22 > g11) {
      x = 0.0;
      yv = 1.0;
    } else {
      x = 1.0;
      yv = 0.0;
    }
  } else {
    const double mean = 0.5 * (g11 + g22);
    const double halfdiff = 0.5 * (g11 - g22);
    const double top = mean + std::hypot(halfdiff, g12);
    // (G - top I) v = 0 admits v = (g12, top - g11) and (top - g22, g12);
    // pick the better-conditioned one.
    double vx1 = top - g22, vy1 = g12;
    double vx2 = g12, vy2 = top - g11;
    if (vx2 * vx2 + vy2 * vy2 > vx1 * vx1 + vy1 * vy1) {
      vx1 = vx2;
      vy1 = vy2;
    }
    const double norm = std::hypot(vx1, vy1);
    x = vx1 / norm;
    yv = vy1 / norm;
    if (x < 0.0) {
      x = -x;
      yv = -yv;
    } else if (x == 0.0 && yv < 0.0) {
      yv = -yv;
    }
    if (x > 1.0) x = 1.0;
  }
  const double c = std::sqrt(0.5 * (x + 1.0));
  const double s = yv / (2.0 * c);
  return {c, s};
}

JointDiagResult joint_diagonalize(std::vector<Matrix> ys, double delta, int max_sweeps) {
  const int k = checked_dim(ys);
  if (!(delta > 0.0)) {
    throw std::invalid_argument("joint_diagonalize: delta must be positive");
  }
  if (max_sweeps < 1) {
    throw std::invalid_argument("joint_diagonalize: max_sweeps must be at least 1");
  }
  for (Matrix& y : ys) {
    const double asym = (y - y.transpose()).cwiseAbs().maxCoeff();
    if (asym > SymmetricTuple::symmetry_tolerance(y)) {
      throw std::invalid_argument("joint_diagonalize: input matrix is not symmetric");
    }
    y = symmetrize(y);
  }

  JointDiagResult result;
  result.W = Matrix::Identity(k, k);
  const double off0 = off_norm(ys);
  result.off_history.push_back(off0);

  const double abs_tol = delta * delta;
  const double change_tol = delta * delta * (off0 + 1.0);
  if (off0 <= abs_tol) {
    result.converged = true;
    result.transformed = std::move(ys);
    return result;
  }

  double off_prev = off0;
  for (int sweep = 1; sweep <= max_sweeps; ++sweep) {
    for (int p = 0; p < k - 1; ++p) {
      for (int q = p + 1; q < k; ++q) {
        const auto [c, s] = rotation_angle(ys, p, q);
        if (s == 0.0) continue;
        for (Matrix& y : ys) apply_rotation(y, p, q, c, s);
        apply_rotation_right(result.W, p, q, c, s);
      }
    }
    const double off_now = off_norm(ys);
    result.off_history.push_back(off_now);
    result.sweeps = sweep;
    if (off_now <= abs_tol || std::abs(off_prev - off_now) <= change_tol) {
      result.converged = true;
      break;
    }
    off_prev = off_now;
  }
  result.transformed = std::move(ys);
  return result;
}

}  // namespace qjae::jointdiag
