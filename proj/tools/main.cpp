#include <CLI11.hpp>
#include <map>
#include <string>
#include <vector>

#include "commands.hpp"

namespace {

using qjae::cli::EigenbasisOptions;
using qjae::cli::MorDemoOptions;
using qjae::cli::PseudospectrumOptions;

// "min:max:count" -> AxisRange
bool parse_range(const std::string& text, qjae::quadps::AxisRange& out) {
  const size_t c1 = text.find(':');
  const size_t c2 = text.find(':', c1 == std::string::npos ? c1 : c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos) return false;
  try {
    size_t pos = 0;
    out.min = std::stod(text.substr(0, c1), &pos);
    if (pos != c1) return false;
    const std::string mid = text.substr(c1 + 1, c2 - c1 - 1);
    out.max = std::stod(mid, &pos);
    if (pos != mid.size()) return false;
    const std::string last = text.substr(c2 + 1);
    out.count = std::stoi(last, &pos);
    if (pos != last.size()) return false;
  } catch (const std::exception&) {
    return false;
  }
  return true;
}

// "i,j" -> two axis indices
bool parse_axes(const std::string& text, int& i, int& j) {
  const size_t comma = text.find(',');
  if (comma == std::string::npos) return false;
  try {
    size_t pos = 0;
    i = std::stoi(text.substr(0, comma), &pos);
    if (pos != comma) return false;
    const std::string rest = text.substr(comma + 1);
    j = std::stoi(rest, &pos);
    if (pos != rest.size()) return false;
  } catch (const std::exception&) {
    return false;
  }
  return true;
}

bool parse_reals(const std::string& text, std::vector<double>& out) {
  out.clear();
  size_t start = 0;
  while (start <= text.size()) {
    size_t comma = text.find(',', start);
    if (comma == std::string::npos) comma = text.size();
    const std::string tok = text.substr(start, comma - start);
    try {
      size_t pos = 0;
      out.push_back(std::stod(tok, &pos));
      if (pos != tok.size()) return false;
    } catch (const std::exception&) {
      return false;
    }
    start = comma + 1;
  }
  return !out.empty();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quadratic joint pseudospectra, joint approximate eigenbases and model order reduction"};
  app.require_subcommand(1);

  PseudospectrumOptions ps;
  std::string ps_axes, ps_range_i, ps_range_j, ps_base, ps_kernel = "eig";
  double ps_cutoff = 0.0;
  CLI::App* cmd_ps = app.add_subcommand("pseudospectrum", "scan a 2D slice of the mu map to CSV");
  cmd_ps->add_option("--matrices", ps.matrices, "Matrix Market files for X_1..X_d")
      ->required()
      ->expected(1, -1);
  cmd_ps->add_option("--axes", ps_axes, "varying coordinate indices, e.g. 0,1")->required();
  cmd_ps->add_option("--range-i", ps_range_i, "first axis grid min:max:count")->required();
  cmd_ps->add_option("--range-j", ps_range_j, "second axis grid min:max:count")->required();
  cmd_ps->add_option("--base", ps_base, "fixed coordinate values v1,...,vd (default all 0)");
  CLI::Option* cutoff_opt =
      cmd_ps->add_option("--cutoff", ps_cutoff, "prune cells provably above this value")
          ->check(CLI::NonNegativeNumber);
  cmd_ps->add_option("--kernel", ps_kernel, "mu kernel")
      ->check(CLI::IsMember({"svd", "eig"}));
  cmd_ps->add_option("--out", ps.out, "output CSV path")->required();
  cmd_ps->add_option("--threads", ps.threads, "worker threads (default: QJAE_THREADS or all cores)")
      ->check(CLI::PositiveNumber);

  EigenbasisOptions eb;
  std::string eb_lambda, eb_phi = "smallest";
  CLI::App* cmd_eb = app.add_subcommand("eigenbasis", "compute a truncated joint approximate eigenbasis");
  cmd_eb->add_option("--matrices", eb.matrices, "Matrix Market files for X_1..X_d")
      ->required()
      ->expected(1, -1);
  cmd_eb->add_option("--lambda", eb_lambda, "shift v1,...,vd (default all 0)");
  cmd_eb->add_option("--k", eb.k, "basis size")->required()->check(CLI::PositiveNumber);
  cmd_eb->add_option("--delta", eb.delta, "joint diagonalization threshold")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd_eb->add_option("--phi", eb_phi, "eigenvalue selector")
      ->check(CLI::IsMember({"smallest", "largest"}))
      ->capture_default_str();
  cmd_eb->add_option("--out", eb.out, "output directory")->required();

  MorDemoOptions md;
  std::string md_phi = "largest", md_lambda;
  CLI::App* cmd_md = app.add_subcommand("mor-demo", "generate, reduce and simulate a commuting LTI pair");
  cmd_md->add_option("--n", md.n, "state dimension")->check(CLI::PositiveNumber)->capture_default_str();
  cmd_md->add_option("--k", md.k, "reduced order")->check(CLI::PositiveNumber)->capture_default_str();
  cmd_md->add_option("--delta", md.delta, "joint diagonalization threshold")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd_md->add_option("--seed", md.seed, "generator seed")->capture_default_str();
  cmd_md->add_option("--steps", md.steps, "number of simulated steps T")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  cmd_md->add_option("--phi", md_phi, "eigenvalue selector")
      ->check(CLI::IsMember({"smallest", "largest"}))
      ->capture_default_str();
  cmd_md->add_option("--k-dominant", md.k_dominant, "dominant eigenvalue count (default: k)")
      ->check(CLI::PositiveNumber);
  cmd_md->add_option("--decay", md.decay, "magnitude bound for non-dominant eigenvalues")
      ->capture_default_str();
  cmd_md->add_option("--lambda", md_lambda, "shift v1,v2,v3 (default all 0)");
  cmd_md->add_option("--x0", md.x0, "initial state choice")
      ->check(CLI::IsMember({"dominant", "random"}))
      ->capture_default_str();
  cmd_md->add_option("--out", md.out, "output CSV path")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : qjae::cli::kExitUsage;
  }

  if (cmd_ps->parsed()) {
    if (!parse_axes(ps_axes, ps.axis_i, ps.axis_j)) {
      std::fprintf(stderr, "error: --axes: expected two comma-separated indices\n");
      return qjae::cli::kExitUsage;
    }
    if (!parse_range(ps_range_i, ps.range_i) || !parse_range(ps_range_j, ps.range_j)) {
      std::fprintf(stderr, "error: --range-i/--range-j: expected min:max:count\n");
      return qjae::cli::kExitUsage;
    }
    if (!ps_base.empty() && !parse_reals(ps_base, ps.base)) {
      std::fprintf(stderr, "error: --base: expected comma-separated reals\n");
      return qjae::cli::kExitUsage;
    }
    if (cutoff_opt->count() > 0) ps.cutoff = ps_cutoff;
    ps.kernel = ps_kernel == "svd" ? qjae::quadps::Kernel::StackedSvd
                                   : qjae::quadps::Kernel::SquaredEig;
    return qjae::cli::run_pseudospectrum(ps);
  }
  if (cmd_eb->parsed()) {
    if (!eb_lambda.empty() && !parse_reals(eb_lambda, eb.lambda)) {
      std::fprintf(stderr, "error: --lambda: expected comma-separated reals\n");
      return qjae::cli::kExitUsage;
    }
    eb.phi = eb_phi == "largest" ? qjae::eigenbasis::Selector::Largest
                                 : qjae::eigenbasis::Selector::Smallest;
    return qjae::cli::run_eigenbasis(eb);
  }
  if (!md_lambda.empty() && !parse_reals(md_lambda, md.lambda)) {
    std::fprintf(stderr, "error: --lambda: expected comma-separated reals\n");
    return qjae::cli::kExitUsage;
  }
  md.phi = md_phi == "largest" ? qjae::eigenbasis::Selector::Largest
                               : qjae::eigenbasis::Selector::Smallest;
  return qjae::cli::run_mor_demo(md);
}
