#pragma once

#include <string>

#include "qjae/jointdiag.hpp"
#include "qjae/tuple.hpp"

namespace qjae::eigenbasis {

enum class Selector { Smallest, Largest };

struct EigenbasisResult {
  PartialIsometry V;       // n x k joint approximate eigenbasis
  Matrix lambdas;          // d x k, lambdas(j, i) = (V^T X_j V)[i, i]
  double residual_sq;      // sum_j ||X_j V - V diag(lambdas(j, :))||_F^2
  Vector L_eigenvalues;    // the k selected eigenvalues of L, sorted
                           // ascending for Smallest, descending for Largest
  jointdiag::JointDiagResult jd;
  Selector selector;
  bool cluster_warning;    // selection boundary of L's spectrum was degenerate
};

// L = sum_j (X_j - lambda_j I)^2. Same computation as quadps::build_Q,
// exposed under both names; the results are bitwise identical.
Matrix build_L(const SymmetricTuple& t, const LambdaPoint& lambda);

// Full pipeline: eigendecompose L and keep the k smallest (phi = Smallest)
// or largest (phi = Largest) eigenpairs as V0; project and symmetrize
// Y_j = sym(V0^T (X_j - lambda_j I) V0); jointly diagonalize the Y_j with
// threshold delta; set V = V0 W with columns sorted by the diagonal of
// V^T L V (ascending for Smallest, descending for Largest); read off the
// per-matrix diagonal estimates and the residual.
//
// cluster_warning is set when |lambda_k - lambda_{k+1}| of L at the
// selection boundary is below 1e-10 * (1 + |lambda_k|): the span of V0
// then depends on solver tie-breaking.
//
// The eigensolve of L is an exact dense decomposition; at the dimensions
// this tool targets (n up to a few thousand) that beats setting up an
// iterative solver. Swapping in a Lanczos-style backend for the k extreme
// eigenpairs is the intended extension point if larger n ever matters.
EigenbasisResult truncated_joint_eigenbasis(const SymmetricTuple& t, const LambdaPoint& lambda,
                                            int k, double delta, Selector phi,
                                            int max_sweeps = jointdiag::kDefaultMaxSweeps);

// sum_j ||X_j V - V Lambda_j||_F^2 with Lambda_j = diag(lambdas(j, :)).
double residual(const SymmetricTuple& t, const PartialIsometry& V, const Matrix& lambdas);

// Writes V.mtx (Matrix Market array), lambdas.csv (d rows x k columns) and
// diagnostics.txt (flat key=value lines: residual_sq, sweeps, converged,
// L_eigenvalues, cluster_warning) into dir, creating it if needed. Each
// file is written atomically.
void save_result(const EigenbasisResult& r, const std::string& dir);

}  // namespace qjae::eigenbasis
