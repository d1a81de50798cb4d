#pragma once

#include <utility>
#include <vector>

#include "qjae/tuple.hpp"

namespace qjae::jointdiag {

inline constexpr int kDefaultMaxSweeps = 64;

struct JointDiagResult {
  Matrix W;                        // k x k orthogonal, accumulated rotations
  std::vector<Matrix> transformed; // W^T Y_j W for each input matrix
  std::vector<double> off_history; // off_norm before any sweep, then after each sweep
  int sweeps = 0;
  bool converged = false;
};

// Sum over the family of squared off-diagonal entries.
double off_norm(const std::vector<Matrix>& ys);

// Cosine/sine (c^2 + s^2 = 1, c >= 1/sqrt(2)) of the planar rotation in
// coordinates (p, q) that minimizes the family's off-norm contribution at
// positions (p,q),(q,p). Closed form: with h_j = (Y_j[p,p] - Y_j[q,q],
// 2 Y_j[p,q]), let (x, y) be a unit eigenvector with x >= 0 for the largest
// eigenvalue of G = sum_j h_j h_j^T; then c = sqrt((x+1)/2), s = y/(2c).
// If every Y_j[p,q] is zero the rotation is the identity (1, 0).
std::pair<double, double> rotation_angle(const std::vector<Matrix>& ys, int p, int q);

// Orthogonal joint approximate diagonalization by cyclic Jacobi-like
// sweeps over all pairs p < q in lexicographic order. Convergence: a full
// sweep changes off_norm by at most delta^2 * (initial off_norm + 1), or
// off_norm itself falls to delta^2 or below. Hitting max_sweeps first is
// reported through converged = false, not an error. off_norm never
// increases across a sweep (up to rounding).
JointDiagResult joint_diagonalize(std::vector<Matrix> ys, double delta,
                                  int max_sweeps = kDefaultMaxSweeps);

}  // namespace qjae::jointdiag
