#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "qjae/tuple.hpp"

namespace qjae::quadps {

enum class Kernel { StackedSvd, SquaredEig };

// Value and minimizer of the quadratic-mean eigen-error at a shift point:
//   mu = min over unit v of sqrt(sum_j ||X_j v - lambda_j v||^2).
// The witness v is the achieving unit vector, with its first nonzero entry
// made nonnegative. When the minimum is (numerically) multiple the solver's
// first vector is kept and degenerate_minimum is set.
struct MuResult {
  double mu = 0.0;
  Vector witness;
  Kernel kernel_used = Kernel::SquaredEig;
  bool degenerate_minimum = false;
};

// Q_lambda = sum_j (X_j - lambda_j I)^2, symmetrized after accumulation.
// Positive semidefinite up to rounding; its smallest eigenvalue is mu^2.
Matrix build_Q(const SymmetricTuple& t, const LambdaPoint& lambda);

// M_lambda: the (d*n) x n vertical stack of the shifted matrices
// X_j - lambda_j I. Its smallest singular value is mu, and M^T M agrees
// with build_Q up to rounding.
Matrix build_M(const SymmetricTuple& t, const LambdaPoint& lambda);

// Evaluates mu at lambda. StackedSvd takes the smallest singular value of
// M_lambda with the matching right singular vector; SquaredEig takes
// sqrt(max(0, lambda_min(Q_lambda))) with the matching eigenvector. The two
// agree within 1e-7 * (1 + mu). Solver non-convergence throws; negative
// eigenvalues from rounding are clamped to zero before the square root.
MuResult mu_quadratic(const SymmetricTuple& t, const LambdaPoint& lambda,
                      Kernel kernel = Kernel::SquaredEig);

// True iff mu_quadratic(t, lambda) <= epsilon. Requires epsilon > 0.
bool in_pseudospectrum(const SymmetricTuple& t, const LambdaPoint& lambda, double epsilon,
                       Kernel kernel = Kernel::SquaredEig);

struct AxisRange {
  double min = 0.0;
  double max = 0.0;
  int count = 0;
};

// A 2D slice through the map lambda -> mu: coordinates axis_i and axis_j
// sweep inclusive uniform grids while the remaining coordinates stay fixed
// at `base`. An optional cutoff enables Lipschitz pruning of cells whose
// value provably exceeds it.
class SliceSpec {
public:
  SliceSpec(int axis_i, int axis_j, LambdaPoint base, AxisRange range_i, AxisRange range_j,
            std::optional<double> cutoff = std::nullopt);

  int axis_i() const { return axis_i_; }
  int axis_j() const { return axis_j_; }
  const LambdaPoint& base() const { return base_; }
  const AxisRange& range_i() const { return range_i_; }
  const AxisRange& range_j() const { return range_j_; }
  const std::optional<double>& cutoff() const { return cutoff_; }

  double value_i(int a) const;
  double value_j(int b) const;
  LambdaPoint lambda_at(int a, int b) const;

private:
  int axis_i_;
  int axis_j_;
  LambdaPoint base_;
  AxisRange range_i_;
  AxisRange range_j_;
  std::optional<double> cutoff_;
};

enum class CellStatus : std::uint8_t { Computed, PrunedAboveCutoff };

// Grid of mu values. Pruned cells hold a valid Lipschitz lower bound on mu
// (always above the cutoff) instead of the computed value.
struct SliceResult {
  Matrix values;                  // count_i x count_j
  std::vector<CellStatus> status; // row-major, count_i * count_j entries

  CellStatus status_at(int a, int b) const {
    return status[static_cast<size_t>(a) * static_cast<size_t>(values.cols()) +
                  static_cast<size_t>(b)];
  }
};

// Scans the slice in row-major logical order. At each unpruned cell the
// kernel evaluates mu; when a cutoff is set and mu(p) = v > cutoff, every
// not-yet-computed cell q with ||lambda(q) - lambda(p)|| < v - cutoff is
// marked pruned with lower bound v - ||lambda(q) - lambda(p)|| (the map is
// 1-Lipschitz). Repeated markings keep the largest bound.
//
// threads > 1 evaluates cells ahead of the sequential frontier
// speculatively; pruning decisions are still replayed in row-major order,
// so the result is bitwise identical to the threads == 1 schedule. That
// equivalence is part of the contract and is covered by tests.
SliceResult scan_slice(const SymmetricTuple& t, const SliceSpec& spec,
                       Kernel kernel = Kernel::SquaredEig, int threads = 1);

// CSV form: one header line "# axis_i=<i> axis_j=<j> cutoff=<v|none>",
// then count_i rows of count_j comma-separated values at 17 significant
// digits. Pruned cells are emitted as ">LB".
void write_slice_csv(const SliceSpec& spec, const SliceResult& result, std::ostream& out);

}  // namespace qjae::quadps
