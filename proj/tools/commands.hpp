#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qjae/eigenbasis.hpp"
#include "qjae/quadps.hpp"

namespace qjae::cli {

// Exit codes: 0 success, 1 numerical or data failure, 2 flag validation.
inline constexpr int kExitOk = 0;
inline constexpr int kExitNumerical = 1;
inline constexpr int kExitUsage = 2;

struct PseudospectrumOptions {
  std::vector<std::string> matrices;
  int axis_i = 0;
  int axis_j = 1;
  quadps::AxisRange range_i;
  quadps::AxisRange range_j;
  std::vector<double> base; // empty means all zeros
  std::optional<double> cutoff;
  quadps::Kernel kernel = quadps::Kernel::SquaredEig;
  std::string out;
  int threads = 0; // <= 0 means auto (QJAE_THREADS, then hardware)
};

struct EigenbasisOptions {
  std::vector<std::string> matrices;
  std::vector<double> lambda; // empty means all zeros
  int k = 1;
  double delta = 1e-5;
  eigenbasis::Selector phi = eigenbasis::Selector::Smallest;
  std::string out;
};

struct MorDemoOptions {
  int n = 400;
  int k = 6;
  double delta = 1e-5;
  std::uint64_t seed = 0;
  int steps = 100;
  eigenbasis::Selector phi = eigenbasis::Selector::Largest;
  int k_dominant = 0; // <= 0 means "equal to k"
  double decay = 0.1;
  std::vector<double> lambda; // empty means all zeros (d = 3)
  std::string x0 = "dominant";
  std::string out = "trajectories.csv";
};

int run_pseudospectrum(const PseudospectrumOptions& opt);
int run_eigenbasis(const EigenbasisOptions& opt);
int run_mor_demo(const MorDemoOptions& opt);

// Thread-count resolution: explicit flag, else QJAE_THREADS, else the
// number of logical processors.
int resolve_threads(int requested);

}  // namespace qjae::cli
