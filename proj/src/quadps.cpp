#include "qjae/quadps.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "qjae/io_util.hpp"

namespace qjae::quadps {

namespace {

void check_lambda(const SymmetricTuple& t, const LambdaPoint& lambda) {
  if (lambda.size() != t.d()) {
    throw std::invalid_argument("lambda length does not match tuple length d");
  }
}

// Deterministic sign fix: first nonzero entry made nonnegative.
Vector canonical_sign(Vector v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (v[i] != 0.0) {
      if (v[i] < 0.0) v = -v;
      break;
    }
  }
  return v;
}

}  // namespace

Matrix build_Q(const SymmetricTuple& t, const LambdaPoint& lambda) {
  check_lambda(t, lambda);
  const int n = t.n();
  Matrix q = Matrix::Zero(n, n);
  for (int j = 0; j < t.d(); ++j) {
    Matrix shifted = t.matrix(j);
    shifted.diagonal().array() -= lambda[j];
    q.noalias() += shifted * shifted;
  }
  return symmetrize(q);
}

Matrix build_M(const SymmetricTuple& t, const LambdaPoint& lambda) {
  check_lambda(t, lambda);
  const int n = t.n();
  Matrix m(static_cast<Eigen::Index>(t.d()) * n, n);
  for (int j = 0; j < t.d(); ++j) {
    Matrix shifted = t.matrix(j);
    shifted.diagonal().array() -= lambda[j];
    m.middleRows(static_cast<Eigen::Index>(j) * n, n) = shifted;
  }
  return m;
}

namespace {

bool near_tie(double next, double smallest) {
  return std::abs(next - smallest) <= 1e-10 * (1.0 + std::abs(smallest));
}

MuResult from_svd(const Vector& singular_values, const Matrix& v) {
  const Eigen::Index last = v.cols() - 1;
  MuResult r{singular_values(last), canonical_sign(v.col(last)), Kernel::StackedSvd, false};
  if (last > 0) r.degenerate_minimum = near_tie(singular_values(last - 1), r.mu);
  return r;
}

}  // namespace

MuResult mu_quadratic(const SymmetricTuple& t, const LambdaPoint& lambda, Kernel kernel) {
  check_lambda(t, lambda);
  if (kernel == Kernel::SquaredEig) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(build_Q(t, lambda));
    if (es.info() != Eigen::Success) {
      throw std::runtime_error("mu_quadratic: eigensolver did not converge");
    }
    const double lmin = es.eigenvalues()(0);
    MuResult r{std::sqrt(std::max(0.0, lmin)), canonical_sign(es.eigenvectors().col(0)),
               Kernel::SquaredEig, false};
    if (t.n() > 1) r.degenerate_minimum = near_tie(es.eigenvalues()(1), lmin);
    return r;
  }
  const Matrix m = build_M(t, lambda);
  if (m.rows() <= 256) {
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinV);
    return from_svd(svd.singularValues(), svd.matrixV());
  }
  Eigen::BDCSVD<Matrix> svd(m, Eigen::ComputeThinV);
  if (svd.info() != Eigen::Success) {
    throw std::runtime_error("mu_quadratic: SVD did not converge");
  }
  return from_svd(svd.singularValues(), svd.matrixV());
}

bool in_pseudospectrum(const SymmetricTuple& t, const LambdaPoint& lambda, double epsilon,
                       Kernel kernel) {
  if (!(epsilon > 0.0)) {
    throw std::invalid_argument("in_pseudospectrum: epsilon must be positive");
  }
  return mu_quadratic(t, lambda, kernel).mu <= epsilon;
}

SliceSpec::SliceSpec(int axis_i, int axis_j, LambdaPoint base, AxisRange range_i,
                     AxisRange range_j, std::optional<double> cutoff)
    : axis_i_(axis_i),
      axis_j_(axis_j),
      base_(std::move(base)),
      range_i_(range_i),
      range_j_(range_j),
      cutoff_(cutoff) {
  if (axis_i_ == axis_j_) {
    throw std::invalid_argument("SliceSpec: axes must differ");
  }
  const int d = base_.size();
  if (axis_i_ < 0 || axis_i_ >= d || axis_j_ < 0 || axis_j_ >= d) {
    throw std::invalid_argument("SliceSpec: axis index out of range [0, d)");
  }
  for (const AxisRange* r : {&range_i_, &range_j_}) {
    if (r->count < 2) {
      throw std::invalid_argument("SliceSpec: grid counts must be at least 2");
    }
    if (!(r->min < r->max)) {
      throw std::invalid_argument("SliceSpec: range min must be below max");
    }
  }
  if (cutoff_ && !(*cutoff_ >= 0.0)) {
    throw std::invalid_argument("SliceSpec: cutoff must be nonnegative");
  }
}

double SliceSpec::value_i(int a) const {
  return range_i_.min + static_cast<double>(a) * (range_i_.max - range_i_.min) /
                            static_cast<double>(range_i_.count - 1);
}

double SliceSpec::value_j(int b) const {
  return range_j_.min + static_cast<double>(b) * (range_j_.max - range_j_.min) /
                            static_cast<double>(range_j_.count - 1);
}

LambdaPoint SliceSpec::lambda_at(int a, int b) const {
  LambdaPoint p = base_;
  p.coords[axis_i_] = value_i(a);
  p.coords[axis_j_] = value_j(b);
  return p;
}

namespace {

enum class CellState : std::uint8_t { Pending, Computed, Pruned };

struct ScanGrid {
  int ci = 0;
  int cj = 0;
  std::vector<double> vi;
  std::vector<double> vj;

  int total() const { return ci * cj; }
  double dist(int p, int q) const {
    return std::hypot(vi[static_cast<size_t>(q / cj)] - vi[static_cast<size_t>(p / cj)],
                      vj[static_cast<size_t>(q % cj)] - vj[static_cast<size_t>(p % cj)]);
  }
};

// Marks every not-yet-computed cell within `radius = mu - cutoff` of cell p
// as pruned, keeping the largest lower bound seen so far. A bounding box in
// grid indices keeps the sweep local; the exact distance test decides.
void mark_pruned(const ScanGrid& g, int p, double mu, double cutoff,
                 std::vector<CellState>& state, Matrix& values) {
  const double radius = mu - cutoff;
  const int pa = p / g.cj;
  const int pb = p % g.cj;
  const auto span = [radius](double step, int count) {
    const double cells = radius / step;
    return cells >= static_cast<double>(count) ? count : static_cast<int>(cells) + 1;
  };
  const int span_i = span(g.vi[1] - g.vi[0], g.ci);
  const int span_j = span(g.vj[1] - g.vj[0], g.cj);
  const int a_lo = std::max(0, pa - span_i);
  const int a_hi = std::min(g.ci - 1, pa + span_i);
  const int b_lo = std::max(0, pb - span_j);
  const int b_hi = std::min(g.cj - 1, pb + span_j);
  for (int a = a_lo; a <= a_hi; ++a) {
    for (int b = b_lo; b <= b_hi; ++b) {
      const int q = a * g.cj + b;
      if (state[static_cast<size_t>(q)] == CellState::Computed) continue;
      const double dist = g.dist(p, q);
      if (dist < radius) {
        const double bound = mu - dist;
        if (state[static_cast<size_t>(q)] == CellState::Pruned) {
          if (bound > values(a, b)) values(a, b) = bound;
        } else {
          state[static_cast<size_t>(q)] = CellState::Pruned;
          values(a, b) = bound;
        }
      }
    }
  }
}

}  // namespace

SliceResult scan_slice(const SymmetricTuple& t, const SliceSpec& spec, Kernel kernel,
                       int threads) {
  if (spec.base().size() != t.d()) {
    throw std::invalid_argument("scan_slice: spec base length does not match tuple length d");
  }
  threads = std::clamp(threads, 1, 256);

  ScanGrid g;
  g.ci = spec.range_i().count;
  g.cj = spec.range_j().count;
  g.vi.resize(static_cast<size_t>(g.ci));
  g.vj.resize(static_cast<size_t>(g.cj));
  for (int a = 0; a < g.ci; ++a) g.vi[static_cast<size_t>(a)] = spec.value_i(a);
  for (int b = 0; b < g.cj; ++b) g.vj[static_cast<size_t>(b)] = spec.value_j(b);

  const int total = g.total();
  Matrix values = Matrix::Zero(g.ci, g.cj);
  std::vector<CellState> state(static_cast<size_t>(total), CellState::Pending);

  auto eval = [&](int cell) {
    return mu_quadratic(t, spec.lambda_at(cell / g.cj, cell % g.cj), kernel).mu;
  };

  // mu values are computed (possibly speculatively, ahead of the sequential
  // frontier) and the pruning decisions are replayed strictly in row-major
  // order, so the outcome never depends on the thread count.
  std::vector<double> mu_cache(static_cast<size_t>(total), 0.0);
  std::vector<std::string> errors(static_cast<size_t>(total));
  std::vector<char> failed(static_cast<size_t>(total), 0);

  const int window = threads > 1 ? std::max(threads * 16, 64) : total;
  int frontier = 0;
  while (frontier < total) {
    const int end = std::min(frontier + window, total);
    if (threads > 1) {
      std::atomic<int> next(frontier);
      auto work = [&]() {
        for (;;) {
          const int cell = next.fetch_add(1);
          if (cell >= end) break;
          if (state[static_cast<size_t>(cell)] != CellState::Pending) continue;
          try {
            mu_cache[static_cast<size_t>(cell)] = eval(cell);
          } catch (const std::exception& e) {
            failed[static_cast<size_t>(cell)] = 1;
            errors[static_cast<size_t>(cell)] = e.what();
          }
        }
      };
      std::vector<std::thread> pool;
      pool.reserve(static_cast<size_t>(threads));
      for (int w = 0; w < threads; ++w) pool.emplace_back(work);
      for (std::thread& th : pool) th.join();
    } else {
      for (int cell = frontier; cell < end; ++cell) {
        if (state[static_cast<size_t>(cell)] != CellState::Pending) continue;
        try {
          mu_cache[static_cast<size_t>(cell)] = eval(cell);
        } catch (const std::exception& e) {
          failed[static_cast<size_t>(cell)] = 1;
          errors[static_cast<size_t>(cell)] = e.what();
        }
      }
    }

    // Sequential replay: assign computed values and apply pruning in
    // row-major order. Speculative results for cells that turn out pruned
    // are discarded.
    for (int cell = frontier; cell < end; ++cell) {
      if (state[static_cast<size_t>(cell)] == CellState::Pruned) continue;
      const int a = cell / g.cj;
      const int b = cell % g.cj;
      if (failed[static_cast<size_t>(cell)]) {
        throw std::runtime_error("scan_slice: cell (" + std::to_string(a) + ", " +
                                 std::to_string(b) + "): " + errors[static_cast<size_t>(cell)]);
      }
      const double mu = mu_cache[static_cast<size_t>(cell)];
      state[static_cast<size_t>(cell)] = CellState::Computed;
      values(a, b) = mu;
      if (spec.cutoff() && mu > *spec.cutoff()) {
        mark_pruned(g, cell, mu, *spec.cutoff(), state, values);
      }
    }
    frontier = end;
  }

  SliceResult result;
  result.values = std::move(values);
  result.status.resize(static_cast<size_t>(total));
  for (int cell = 0; cell < total; ++cell) {
    result.status[static_cast<size_t>(cell)] = state[static_cast<size_t>(cell)] == CellState::Pruned
                                                   ? CellStatus::PrunedAboveCutoff
                                                   : CellStatus::Computed;
  }
  return result;
}

void write_slice_csv(const SliceSpec& spec, const SliceResult& result, std::ostream& out) {
  out << "# axis_i=" << spec.axis_i() << " axis_j=" << spec.axis_j() << " cutoff="
      << (spec.cutoff() ? to_g17(*spec.cutoff()) : std::string("none")) << "\n";
  const int ci = static_cast<int>(result.values.rows());
  const int cj = static_cast<int>(result.values.cols());
  for (int a = 0; a < ci; ++a) {
    for (int b = 0; b < cj; ++b) {
      if (b > 0) out << ",";
      if (result.status_at(a, b) == CellStatus::PrunedAboveCutoff) out << ">";
      out << to_g17(result.values(a, b));
    }
    out << "\n";
  }
}

}  // namespace qjae::quadps
