#include "qjae/mor.hpp"

#include <cmath>
#include <cstdio>
#include <random>
#include <stdexcept>

namespace qjae::mor {

namespace {

double spectral_radius_of(const Matrix& a) {
  const double asym = (a - a.transpose()).cwiseAbs().maxCoeff();
  if (asym <= SymmetricTuple::symmetry_tolerance(a)) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(a, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().maxCoeff();
  }
  Eigen::EigenSolver<Matrix> es(a, false);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace

LtiPair::LtiPair(Matrix a1, Matrix a2, int out1_, int out2_, bool require_stable)
    : A1(std::move(a1)), A2(std::move(a2)), out1(out1_), out2(out2_) {
  if (A1.rows() != A1.cols() || A2.rows() != A2.cols() || A1.rows() != A2.rows()) {
    throw std::invalid_argument("LtiPair: matrices must be square and equally sized");
  }
  n = static_cast<int>(A1.rows());
  if (n < 1) {
    throw std::invalid_argument("LtiPair: dimension must be positive");
  }
  if (out1 < 0 || out1 >= n || out2 < 0 || out2 >= n) {
    throw std::invalid_argument("LtiPair: output indices out of range");
  }
  const double comm = (A1 * A2 - A2 * A1).norm();
  if (comm > 1e-10 * (1.0 + A1.norm() * A2.norm())) {
    throw std::invalid_argument("LtiPair: matrices do not commute");
  }
  spectral_radius = spectral_radius_of(A1);
  if (spectral_radius > 1.0 + 1e-12) {
    if (require_stable) {
      throw std::invalid_argument("LtiPair: generated system must have spectral radius <= 1");
    }
    std::fprintf(stderr, "warning: LtiPair spectral radius %.3g exceeds 1; trajectories may diverge\n",
                 spectral_radius);
  }
}

GeneratedPair generate_commuting_pair(int n, int k_dominant, std::uint64_t seed, double decay) {
  if (n < 1) {
    throw std::invalid_argument("generate_commuting_pair: n must be positive");
  }
  if (k_dominant < 1 || k_dominant > n) {
    throw std::invalid_argument("generate_commuting_pair: need 1 <= k_dominant <= n");
  }
  if (!(decay > 0.0 && decay < 1.0)) {
    throw std::invalid_argument("generate_commuting_pair: decay must lie in (0, 1)");
  }

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix g(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      g(i, j) = normal(rng);
    }
  }
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix& r = qr.matrixQR();
  for (int j = 0; j < n; ++j) {
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  }

  std::uniform_real_distribution<double> dominant(0.9, 0.999);
  std::uniform_real_distribution<double> tail(-decay, decay);
  Vector d1(n), d2(n);
  for (int i = 0; i < n; ++i) d1(i) = i < k_dominant ? dominant(rng) : tail(rng);
  for (int i = 0; i < n; ++i) d2(i) = i < k_dominant ? dominant(rng) : tail(rng);

  Matrix a1 = symmetrize(q * d1.asDiagonal() * q.transpose());
  Matrix a2 = symmetrize(q * d2.asDiagonal() * q.transpose());
  return GeneratedPair{LtiPair(std::move(a1), std::move(a2), 0, 1, /*require_stable=*/true),
                       q.leftCols(k_dominant)};
}

Vector dominant_x0(const GeneratedPair& g) {
  Vector x0 = g.dominant_basis.rowwise().mean();
  return x0 / x0.norm();
}

Vector random_unit_x0(int n, std::uint64_t seed) {
  if (n < 1) {
    throw std::invalid_argument("random_unit_x0: n must be positive");
  }
  // Distinct stream from the pair generator for the same seed.
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector x0(n);
  do {
    for (int i = 0; i < n; ++i) x0(i) = normal(rng);
  } while (x0.norm() == 0.0);
  return x0 / x0.norm();
}

SymmetricTuple build_gram_tuple(const LtiPair& p) {
  std::vector<Matrix> hs;
  hs.reserve(3);
  hs.push_back(p.A1.transpose() * p.A1);
  hs.push_back(p.A2.transpose() * p.A2);
  hs.push_back(p.A1.transpose() * p.A2 + p.A2.transpose() * p.A1);
  return SymmetricTuple(std::move(hs));
}

Trajectory simulate_full(const LtiPair& p, const Vector& x0, int T) {
  if (x0.size() != p.n) {
    throw std::invalid_argument("simulate_full: x0 dimension mismatch");
  }
  if (T < 0) {
    throw std::invalid_argument("simulate_full: T must be nonnegative");
  }
  Trajectory traj;
  traj.y1.resize(T + 1);
  traj.y2.resize(T + 1);
  Vector x1 = x0;
  for (int t = 0; t <= T; ++t) {
    traj.y1(t) = x1(p.out1);
    traj.y2(t) = p.A2.row(p.out2).dot(x1); // x2(t) = A2 x1(t), tapped at out2
    if (t < T) x1 = p.A1 * x1;
  }
  return traj;
}

ReducedModel reduce(const LtiPair& p, const PartialIsometry& V) {
  if (V.n() != p.n) {
    throw std::invalid_argument("reduce: V row count does not match system dimension");
  }
  const Matrix& v = V.columns();
  return ReducedModel{v.transpose() * p.A1 * v, v.transpose() * p.A2 * v,
                      v.row(p.out1).transpose(), v.row(p.out2).transpose(), V};
}

Trajectory simulate_reduced(const ReducedModel& m, const Vector& x0, int T) {
  if (x0.size() != m.V.n()) {
    throw std::invalid_argument("simulate_reduced: x0 dimension mismatch");
  }
  if (T < 0) {
    throw std::invalid_argument("simulate_reduced: T must be nonnegative");
  }
  Trajectory traj;
  traj.y1.resize(T + 1);
  traj.y2.resize(T + 1);
  Vector x1 = m.V.columns().transpose() * x0;
  for (int t = 0; t <= T; ++t) {
    traj.y1(t) = m.C1.dot(x1);
    traj.y2(t) = m.C2.dot(m.Ar2 * x1);
    if (t < T) x1 = m.Ar1 * x1;
  }
  return traj;
}

namespace {

ChannelErrors channel_errors(const Vector& a, const Vector& b) {
  ChannelErrors e;
  const Vector diff = a - b;
  e.max_abs = diff.cwiseAbs().maxCoeff();
  const double scale = a.cwiseAbs().maxCoeff();
  e.rel_max = e.max_abs == 0.0 ? 0.0 : e.max_abs / scale;
  e.rms = std::sqrt(diff.squaredNorm() / static_cast<double>(diff.size()));
  return e;
}

}  // namespace

OutputComparison compare_outputs(const Trajectory& a, const Trajectory& b) {
  if (a.y1.size() != b.y1.size() || a.y2.size() != b.y2.size() || a.y1.size() != a.y2.size()) {
    throw std::invalid_argument("compare_outputs: trajectory length mismatch");
  }
  return OutputComparison{channel_errors(a.y1, b.y1), channel_errors(a.y2, b.y2)};
}

}  // namespace qjae::mor
