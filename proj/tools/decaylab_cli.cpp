// decaylab run | sweep | verify

#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

#include "decaylab/errors.hpp"
#include "decaylab/experiment.hpp"
#include "decaylab/verification.hpp"

namespace {

using decaylab::ExperimentConfig;

constexpr int kUsageError = 2;

// Flags mirror config keys; only flags given on the command line override.
struct Overrides {
  std::vector<std::pair<std::string, std::string>> values;
  bool no_heat = false;

  void attach(CLI::App& app) {
    static const std::vector<std::pair<std::string, std::string>> flags{
        {"--alpha", "alpha"}, {"--dim", "dim"}, {"--gamma", "gamma"}, {"--r-inner", "r_inner"},
        {"--t0", "t0"}, {"--t-final", "t_final"}, {"--dr", "dr"}, {"--dt", "dt"},
        {"--ic", "ic"}, {"--out", "out"}, {"--samples", "samples"}, {"--checkpoints", "checkpoints"}};
    values.resize(flags.size());
    for (std::size_t i = 0; i < flags.size(); ++i) {
      values[i].first = flags[i].second;
      app.add_option(flags[i].first, values[i].second, "override config key " + flags[i].second);
    }
    app.add_flag("--no-heat", no_heat, "skip the heat comparison");
  }

  ExperimentConfig apply(ExperimentConfig cfg) const {
    for (const auto& [key, value] : values) {
      if (!value.empty()) cfg.set(key, value);
    }
    if (no_heat) cfg.heat = false;
    return cfg;
  }
};

ExperimentConfig base_config(const std::string& path) {
  return path.empty() ? ExperimentConfig{} : decaylab::load_config(path);
}

// "key=v1,v2,..." -> (key, values)
std::pair<std::string, std::vector<std::string>> split_axis(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw decaylab::InvalidArgument("--over expects key=v1,v2,..., got '" + text + "'");
  }
  std::vector<std::string> values;
  std::string rest = text.substr(eq + 1);
  // descriptor values contain commas, so ic axes are separated by ';'
  const char sep = text.compare(0, eq, "ic") == 0 ? ';' : ',';
  std::size_t start = 0;
  while (start <= rest.size()) {
    const auto end = rest.find(sep, start);
    values.push_back(rest.substr(start, end - start));
    if (end == std::string::npos) break;
    start = end + 1;
  }
  return {text.substr(0, eq), values};
}

std::vector<ExperimentConfig> expand(const std::vector<ExperimentConfig>& bases,
                                     const std::vector<std::string>& axes) {
  std::vector<ExperimentConfig> configs = bases;
  for (const std::string& axis : axes) {
    const auto [key, values] = split_axis(axis);
    std::vector<ExperimentConfig> next;
    for (const ExperimentConfig& cfg : configs) {
      for (const std::string& value : values) {
        ExperimentConfig variant = cfg;
        variant.set(key, value);
        std::string label = key + "-" + value;
        for (char& ch : label) {
          if (ch == '/' || ch == ':' || ch == ',' || ch == '=') ch = '_';
        }
        variant.out = cfg.out + "/" + label;
        next.push_back(variant);
      }
    }
    configs = std::move(next);
  }
  return configs;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Radial damped-wave decay experiments"};
  app.require_subcommand(1);

  std::string run_config;
  Overrides run_overrides;
  CLI::App* run = app.add_subcommand("run", "run one experiment");
  run->add_option("--config", run_config, "key=value config file");
  run_overrides.attach(*run);

  std::string sweep_config;
  std::vector<std::string> sweep_files, sweep_axes;
  Overrides sweep_overrides;
  CLI::App* sweep = app.add_subcommand("sweep", "run many experiments in parallel (DECAYLAB_THREADS caps workers)");
  sweep->add_option("--config", sweep_config, "base config file");
  sweep->add_option("--over", sweep_axes, "key=v1,v2,... axis; ic values are separated by ';'");
  sweep->add_option("configs", sweep_files, "config files, each run on its own");
  sweep_overrides.attach(*sweep);

  std::string suite;
  CLI::App* verify = app.add_subcommand("verify", "run verification checks");
  verify->add_option("suite", suite, "kummer|weights|hardy|energy|diffusion|all")->required();
  decaylab::VerifyOptions verify_options;
  verify->add_flag("--literal-bounds", verify_options.literal_bounds,
                   "also run the literal trace formula and light-cone support checks (known to fail)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }

  try {
    if (*run) {
      const ExperimentConfig cfg = run_overrides.apply(base_config(run_config));
      decaylab::run_experiment(cfg, &std::cerr);
      return 0;
    }
    if (*sweep) {
      std::vector<ExperimentConfig> bases;
      if (sweep_files.empty()) {
        bases.push_back(sweep_overrides.apply(base_config(sweep_config)));
      }
      for (const std::string& file : sweep_files) {
        bases.push_back(sweep_overrides.apply(decaylab::load_config(file, base_config(sweep_config))));
      }
      const auto configs = expand(bases, sweep_axes);
      for (const auto& cfg : configs) cfg.validate();
      const auto errors = decaylab::run_sweep(configs, decaylab::sweep_threads(), &std::cerr);
      for (const auto& e : errors) std::cerr << "error: " << e << '\n';
      return errors.empty() ? 0 : 1;
    }
    if (!decaylab::is_suite(suite)) {
      std::cerr << "error: unknown suite '" << suite << "'\n"
                << "usage: decaylab verify kummer|weights|hardy|energy|diffusion|all\n";
      return kUsageError;
    }
    const auto results = decaylab::run_suite(suite, verify_options);
    decaylab::print_results(std::cout, results);
    return decaylab::all_pass(results) ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
