#pragma once

#include <cstdint>

#include "qjae/tuple.hpp"

namespace qjae::mor {

// Discrete-time two-matrix chain on R^n:
//   x1(t+1) = A1 x1(t),  x2(t+1) = A2 x1(t+1),
//   y1(t) = x1(t)[out1], y2(t) = x2(t)[out2].
// Construction requires A1 A2 = A2 A1 within
// 1e-10 * (1 + ||A1||_F ||A2||_F). A spectral radius above 1 is an error
// for generated systems (require_stable = true) and a stderr warning
// otherwise.
struct LtiPair {
  LtiPair(Matrix a1, Matrix a2, int out1 = 0, int out2 = 1, bool require_stable = false);

  Matrix A1;
  Matrix A2;
  int out1 = 0;
  int out2 = 1;
  int n = 0;
  double spectral_radius = 0.0;
};

struct GeneratedPair {
  LtiPair pair;
  Matrix dominant_basis; // Q's leading k_dominant columns (shared eigenbasis)
};

// Draws a seeded random orthogonal Q (QR of a standard-normal matrix with
// the R-diagonal signs fixed positive) and returns A_i = Q D_i Q^T with the
// first k_dominant diagonal entries of each D_i in [0.9, 0.999] and the
// rest uniform in [-decay, decay]. The shared eigenbasis makes the pair
// commute exactly up to rounding; the same seed reproduces the same pair
// bitwise.
GeneratedPair generate_commuting_pair(int n, int k_dominant, std::uint64_t seed, double decay);

// Average of the dominant basis columns, normalized: a deterministic unit
// vector inside the dominant invariant subspace.
Vector dominant_x0(const GeneratedPair& g);

// Seeded random unit vector (independent stream from the pair generator).
Vector random_unit_x0(int n, std::uint64_t seed);

// (H1, H2, H3) = (A1^T A1, A2^T A2, A1^T A2 + A2^T A1) as a d = 3 tuple.
SymmetricTuple build_gram_tuple(const LtiPair& p);

struct Trajectory {
  Vector y1; // length T+1, t = 0..T
  Vector y2;
};

// Runs the chain for T steps from x1(0) = x0. The second channel starts at
// x2(0) := A2 x1(0) so both outputs carry T+1 samples.
Trajectory simulate_full(const LtiPair& p, const Vector& x0, int T);

struct ReducedModel {
  Matrix Ar1; // V^T A1 V
  Matrix Ar2; // V^T A2 V
  Vector C1;  // row out1 of V
  Vector C2;  // row out2 of V
  PartialIsometry V;
};

// Projects the pair through V. Reduced simulation starts from
// x1_hat(0) = V^T x1(0).
ReducedModel reduce(const LtiPair& p, const PartialIsometry& V);

Trajectory simulate_reduced(const ReducedModel& m, const Vector& x0, int T);

struct ChannelErrors {
  double max_abs = 0.0;
  double rel_max = 0.0; // max_abs / max_t |a|, with 0/0 -> 0
  double rms = 0.0;
};

struct OutputComparison {
  ChannelErrors y1;
  ChannelErrors y2;
};

OutputComparison compare_outputs(const Trajectory& a, const Trajectory& b);

}  // namespace qjae::mor
