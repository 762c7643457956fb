#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "mixent_cli/commands.hpp"

int main(int argc, char** argv) {
  using namespace mixent::cli;

  CLI::App app{"Two-qubit entanglement and critical mixing weight toolkit"};
  app.require_subcommand(1);

  std::string state;
  int result = kOk;

  auto* conc = app.add_subcommand("concurrence", "Wootters concurrence and lambdas of a state file");
  conc->add_option("--state", state, "State document (JSON)")->required();

  OmegaMode mode = OmegaMode::Auto;
  double tol = 1e-9;
  const std::map<std::string, OmegaMode> modes{
      {"auto", OmegaMode::Auto}, {"closed", OmegaMode::Closed}, {"bisect", OmegaMode::Bisect}};
  auto* omega = app.add_subcommand("omega-c", "Critical weight of mixing with the maximally mixed state");
  omega->add_option("--state", state, "State document (JSON)")->required();
  omega->add_option("--method", mode, "auto | closed | bisect")->transform(CLI::CheckedTransformer(modes));
  omega->add_option("--tol", tol, "Bisection tolerance")->capture_default_str();

  double from = 0.0, to = 1.0;
  int steps = 0;
  std::string csv;
  auto* sweep = app.add_subcommand("sweep", "Concurrence and PPT flag along the mixing path, as CSV");
  sweep->add_option("--state", state, "State document (JSON)")->required();
  sweep->add_option("--from", from, "First weight")->required();
  sweep->add_option("--to", to, "Last weight")->required();
  sweep->add_option("--steps", steps, "Number of grid points")->required();
  sweep->add_option("--out", csv, "CSV output path")->required();

  int trials = 0;
  std::uint64_t seed = 0;
  auto* verify = app.add_subcommand("verify", "Randomized self-consistency suites");
  verify->add_option("--trials", trials, "Trials per suite")->required();
  verify->add_option("--seed", seed, "Base seed")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  if (*conc) result = cmd_concurrence(state, std::cout, std::cerr);
  if (*omega) result = cmd_omega_c(state, mode, tol, std::cout, std::cerr);
  if (*sweep) result = cmd_sweep(state, from, to, steps, csv, std::cout, std::cerr);
  if (*verify) result = cmd_verify(trials, seed, std::cout, std::cerr);
  return result;
}
