#include <CLI11.hpp>

#include <cstdio>
#include <functional>
#include <map>
#include <vector>

#include "commands.hpp"
#include "lgdelay/errors.hpp"

using namespace lgdelay;

namespace {

void add_common(CLI::App* sub, cli::Options& o) {
  sub->add_option("--config", o.config_path, "configuration file")->required()->check(CLI::ExistingFile);
  sub->add_option("--out", o.out_dir, "output directory")->capture_default_str();
  sub->add_flag("--overwrite", o.overwrite, "replace existing output files");
}

void add_window(CLI::App* sub, std::vector<double>& w) {
  sub->add_option("--window", w, "delay window T1,T2")->delimiter(',')->expected(2);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Switching curves, double-Hopf analysis and simulation for a diffusive "
               "Leslie-Gower model with two delays"};
  app.set_version_flag("--version", std::string(LGDELAY_VERSION));
  app.require_subcommand(1);

  cli::Options o;
  std::vector<double> window, tau;
  int modes = -1;
  std::uint64_t seed = 0;

  auto* curves = app.add_subcommand("curves", "switching curves per spatial mode");
  auto* directions = app.add_subcommand("directions", "crossing directions along the curves");
  auto* hh = app.add_subcommand("hh", "double-Hopf points");
  auto* classify = app.add_subcommand("classify", "unfolding type, semi-lines and probe regions");
  auto* simulate = app.add_subcommand("simulate", "integrate the delayed reaction-diffusion system");
  auto* reproduce = app.add_subcommand("reproduce", "run the reference reproduction suite");

  for (auto* sub : {curves, directions, hh, classify, simulate, reproduce}) add_common(sub, o);
  for (auto* sub : {curves, directions, hh}) {
    add_window(sub, window);
    sub->add_option("--modes", modes, "highest spatial mode (default: up to the last mode with curves)");
  }
  simulate->add_option("--tau", tau, "delays T1,T2 (override the config)")->delimiter(',')->expected(2);
  for (auto* sub : {simulate, reproduce}) {
    sub->add_option("--seed", seed, "seed for randomized initial data");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? cli::ok : cli::usage;
  }

  for (auto* sub : app.get_subcommands()) o.command = sub->get_name();
  if (window.size() == 2) o.window = std::make_pair(window[0], window[1]);
  if (tau.size() == 2) o.tau = std::make_pair(tau[0], tau[1]);
  if (modes >= 0) o.modes = modes;
  for (auto* sub : {simulate, reproduce}) {
    if (sub->parsed() && sub->count("--seed") > 0) o.seed = seed;
  }

  static const std::map<std::string, std::function<int(const cli::Options&)>> table = {
      {"curves", cli::cmd_curves},     {"directions", cli::cmd_directions},
      {"hh", cli::cmd_hh},             {"classify", cli::cmd_classify},
      {"simulate", cli::cmd_simulate}, {"reproduce", cli::cmd_reproduce}};
  try {
    return table.at(o.command)(o);
  } catch (const cli::exit_error& e) {
    std::fprintf(stderr, "lgdelay: %s\n", e.what());
    return e.code();
  } catch (const config_error& e) {
    std::fprintf(stderr, "lgdelay: config error: %s\n", e.what());
    return cli::config;
  } catch (const simulation_error& e) {
    std::fprintf(stderr, "lgdelay: simulation failed at t = %.6g: %s\n", e.time(), e.what());
    return cli::numerical;
  } catch (const numerical_error& e) {
    std::fprintf(stderr, "lgdelay: numerical error: %s\n", e.what());
    return cli::numerical;
  } catch (const parameter_error& e) {
    std::fprintf(stderr, "lgdelay: invalid argument: %s\n", e.what());
    return cli::usage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "lgdelay: %s\n", e.what());
    return cli::generic_failure;
  }
}
