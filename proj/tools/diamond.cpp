// diamond: capacity approximation, relay selection and bound checks for
// Gaussian N-relay diamond networks.

#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "diamond/commands.hpp"

namespace {

using namespace diamond;
using namespace diamond::cli;

void add_format(CLI::App* cmd, std::string& format) {
  cmd->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "machine"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Capacity approximation and relay selection for Gaussian diamond networks"};
  app.require_subcommand(1);

  std::string file;
  std::string format = "text";

  OmegaOptions omega_opt;
  auto* omega = app.add_subcommand("omega", "Compute omega and its minimizing cut");
  omega->add_option("file", file, "Network file")->required();
  omega->add_flag("--brute", omega_opt.brute, "Also run the exhaustive oracle and compare");
  omega->add_flag("--counts", omega_opt.counts, "Report the comparison budget");
  add_format(omega, format);

  SelectCliOptions select_opt;
  std::string gap_model = "nnc";
  auto* sel = app.add_subcommand("select", "Find <= k relays keeping k/(k+1) of omega");
  sel->add_option("file", file, "Network file")->required();
  sel->add_option("k", select_opt.k, "Relay budget")->required()->check(CLI::PositiveNumber);
  sel->add_flag("--verify", select_opt.verify, "Check the selection by brute force");
  sel->add_option("--gap-model", gap_model, "Relaying gap model")->check(CLI::IsMember({"nnc", "optimized", "routing"}));
  add_format(sel, format);

  BoundsOptions bounds_opt;
  auto* bounds = app.add_subcommand("bounds", "Cut-set sandwich bounds and the k tradeoff");
  bounds->add_option("file", file, "Network file")->required();
  bounds->add_flag("--table", bounds_opt.table, "Print every row of the tradeoff tables");
  add_format(bounds, format);

  AfCliOptions af_opt;
  std::vector<double> alpha;
  auto* af = app.add_subcommand("af", "Amplify-and-forward rate against the best-relay ceiling");
  af->add_option("file", file, "Network file (gains, or rates with snr)")->required();
  auto* alpha_opt = af->add_option("--alpha", alpha, "Amplification magnitudes in [0,1] (one value broadcasts)")
                        ->delimiter(',');
  af->add_flag("--optimize", af_opt.optimize, "Optimize the amplification magnitudes");
  af->add_option("--tol", af_opt.tol, "Optimizer stopping tolerance")->check(CLI::PositiveNumber);
  add_format(af, format);

  GenOptions gen_opt;
  std::string dist = "rayleigh";
  double sigma = 1.0, lo = 0.1, hi = 10.0;
  std::string label;
  auto* gen = app.add_subcommand("gen", "Generate a random gains-form network file");
  gen->add_option("n", gen_opt.n, "Number of relays")->required()->check(CLI::PositiveNumber);
  gen->add_option("--dist", dist, "Gain distribution")->check(CLI::IsMember({"rayleigh", "loguniform"}));
  gen->add_option("--sigma", sigma, "Rayleigh scale");
  gen->add_option("--lo", lo, "Log-uniform lower bound");
  gen->add_option("--hi", hi, "Log-uniform upper bound");
  gen->add_option("--snr", gen_opt.snr, "Linear SNR");
  gen->add_option("--seed", gen_opt.seed, "Random seed");
  gen->add_option("--label", label, "Optional label");

  std::size_t tight_k = 1;
  double tight_rate = 1.0;
  auto* tight = app.add_subcommand("tight", "Emit the tight (k+1)-relay configuration");
  tight->add_option("k", tight_k, "Relay budget")->required()->check(CLI::PositiveNumber);
  tight->add_option("R", tight_rate, "Base rate")->required();

  VerifyConfig verify_cfg;
  std::string kmode = "all";
  std::size_t inject_tight = 0;
  auto* verify = app.add_subcommand("verify", "Monte Carlo check of every invariant");
  verify->add_option("--trials", verify_cfg.trials, "Number of random networks");
  verify->add_option("--nmax", verify_cfg.nmax, "Largest relay count");
  verify->add_option("--kmode", kmode, "all: every k < N; one: one random k")->check(CLI::IsMember({"all", "one"}));
  verify->add_option("--seed", verify_cfg.seed, "Master seed");
  verify->add_option("--tolerance", verify_cfg.tolerance, "Allowed violation");
  verify->add_option("--alpha-samples", verify_cfg.alpha_samples, "Random AF vectors per network");
  verify->add_option("--tight", inject_tight, "Also check the tight configuration for this k");
  add_format(verify, format);

  CLI11_PARSE(app, argc, argv);

  try {
    const auto fmt = parse_format(format);
    if (omega->parsed()) {
      omega_opt.format = fmt;
      return cmd_omega(read_network_file(file), omega_opt, std::cout);
    }
    if (sel->parsed()) {
      select_opt.format = fmt;
      select_opt.gap_model = parse_gap_model(gap_model);
      return cmd_select(read_network_file(file), select_opt, std::cout);
    }
    if (bounds->parsed()) {
      bounds_opt.format = fmt;
      return cmd_bounds(read_network_file(file), bounds_opt, std::cout);
    }
    if (af->parsed()) {
      af_opt.format = fmt;
      if (alpha_opt->count() > 0) af_opt.alpha = alpha;
      return cmd_af(read_network_file(file), af_opt, std::cout);
    }
    if (gen->parsed()) {
      gen_opt.dist = dist == "rayleigh" ? GainDistribution::make_rayleigh(sigma) : GainDistribution::make_loguniform(lo, hi);
      if (!label.empty()) gen_opt.label = label;
      return cmd_gen(gen_opt, std::cout);
    }
    if (tight->parsed()) return cmd_tight(tight_k, tight_rate, std::cout);
    if (verify->parsed()) {
      verify_cfg.kmode = parse_kmode(kmode);
      if (inject_tight > 0) verify_cfg.tight_k = inject_tight;
      return cmd_verify(verify_cfg, fmt, std::cout);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  }
  return kExitBadInput;
}
