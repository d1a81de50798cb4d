#include "commands.hpp"

#include <cstdlib>
#include <iostream>
#include <sstream>
#include <thread>

#include "qjae/io_util.hpp"
#include "qjae/mor.hpp"

namespace qjae::cli {

namespace {

LambdaPoint lambda_or_zero(const std::vector<double>& values, int d, const char* flag) {
  if (values.empty()) return LambdaPoint::zero(d);
  if (static_cast<int>(values.size()) != d) {
    throw std::invalid_argument(std::string(flag) + ": expected " + std::to_string(d) +
                                " comma-separated values");
  }
  Vector v(d);
  for (int i = 0; i < d; ++i) v(i) = values[static_cast<size_t>(i)];
  return LambdaPoint(std::move(v));
}

// invalid_argument marks a flag/usage problem (exit 2); anything else is a
// data or numerical failure (exit 1).
template <typename Fn>
int guarded(Fn&& fn) {
  try {
    fn();
    return kExitOk;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
}

}  // namespace

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("QJAE_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

int run_pseudospectrum(const PseudospectrumOptions& opt) {
  return guarded([&]() {
    const SymmetricTuple t = load_tuple(opt.matrices);
    const LambdaPoint base = lambda_or_zero(opt.base, t.d(), "--base");
    const quadps::SliceSpec spec(opt.axis_i, opt.axis_j, base, opt.range_i, opt.range_j,
                                 opt.cutoff);
    const quadps::SliceResult result =
        quadps::scan_slice(t, spec, opt.kernel, resolve_threads(opt.threads));
    std::ostringstream csv;
    quadps::write_slice_csv(spec, result, csv);
    atomic_write_file(opt.out, csv.str());
  });
}

int run_eigenbasis(const EigenbasisOptions& opt) {
  return guarded([&]() {
    const SymmetricTuple t = load_tuple(opt.matrices);
    const LambdaPoint lambda = lambda_or_zero(opt.lambda, t.d(), "--lambda");
    const eigenbasis::EigenbasisResult r =
        eigenbasis::truncated_joint_eigenbasis(t, lambda, opt.k, opt.delta, opt.phi);
    eigenbasis::save_result(r, opt.out);
    std::cout << "residual_sq=" << to_g17(r.residual_sq) << "\n";
  });
}

int run_mor_demo(const MorDemoOptions& opt) {
  return guarded([&]() {
    const int k_dominant = opt.k_dominant > 0 ? opt.k_dominant : opt.k;
    if (opt.k < 1 || opt.k > opt.n) {
      throw std::invalid_argument("--k: need 1 <= k <= n");
    }
    if (opt.steps < 0) {
      throw std::invalid_argument("--steps: must be nonnegative");
    }
    if (opt.x0 != "dominant" && opt.x0 != "random") {
      throw std::invalid_argument("--x0: must be 'dominant' or 'random'");
    }

    const mor::GeneratedPair gen =
        mor::generate_commuting_pair(opt.n, k_dominant, opt.seed, opt.decay);
    const SymmetricTuple tuple = mor::build_gram_tuple(gen.pair);
    const LambdaPoint lambda = lambda_or_zero(opt.lambda, tuple.d(), "--lambda");
    const eigenbasis::EigenbasisResult eb =
        eigenbasis::truncated_joint_eigenbasis(tuple, lambda, opt.k, opt.delta, opt.phi);

    const Vector x0 =
        opt.x0 == "dominant" ? mor::dominant_x0(gen) : mor::random_unit_x0(opt.n, opt.seed);
    const mor::Trajectory full = mor::simulate_full(gen.pair, x0, opt.steps);
    const mor::ReducedModel rm = mor::reduce(gen.pair, eb.V);
    const mor::Trajectory red = mor::simulate_reduced(rm, x0, opt.steps);
    const mor::OutputComparison cmp = mor::compare_outputs(full, red);

    std::ostringstream csv;
    csv << "# y2(0) convention: x2(0) = A2*x1(0)\n";
    csv << "t,y1,y2,y1_rom,y2_rom\n";
    for (int t = 0; t <= opt.steps; ++t) {
      csv << t << "," << to_g17(full.y1(t)) << "," << to_g17(full.y2(t)) << ","
          << to_g17(red.y1(t)) << "," << to_g17(red.y2(t)) << "\n";
    }
    atomic_write_file(opt.out, csv.str());

    std::cout << "y1_max_abs_err=" << to_g17(cmp.y1.max_abs) << "\n";
    std::cout << "y1_rel_max_err=" << to_g17(cmp.y1.rel_max) << "\n";
    std::cout << "y1_rms_err=" << to_g17(cmp.y1.rms) << "\n";
    std::cout << "y2_max_abs_err=" << to_g17(cmp.y2.max_abs) << "\n";
    std::cout << "y2_rel_max_err=" << to_g17(cmp.y2.rel_max) << "\n";
    std::cout << "y2_rms_err=" << to_g17(cmp.y2.rms) << "\n";
  });
}

}  // namespace qjae::cli
