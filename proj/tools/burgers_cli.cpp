// Command-line front end: one subcommand per experiment.
#include <iostream>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "burgers/errors.hpp"
#include "burgers/harness/config.hpp"
#include "burgers/harness/ensemble.hpp"
#include "burgers/harness/experiments.hpp"
#include "burgers/harness/report.hpp"

namespace {

using namespace burgers;
using namespace burgers::harness;

enum Exit { kPass = 0, kLawFailure = 1, kConfigError = 2, kBlowUp = 3, kIoError = 4 };

struct Options {
  std::string config;
  std::string nu;
  std::string seed;
  std::string out;
  std::vector<std::string> sets;
  std::string resume;
  std::vector<std::string> sections;
};

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--config", o.config, "key = value configuration file");
  cmd->add_option("--nu", o.nu, "viscosity list override, comma separated");
  cmd->add_option("--seed", o.seed, "master seed override");
  cmd->add_option("--out", o.out, "output directory override");
  cmd->add_option("--set", o.sets, "any config key, as key=value (repeatable)");
}

ExperimentConfig resolve(const Options& o) {
  ExperimentConfig cfg = o.config.empty() ? ExperimentConfig{} : load_config(o.config);
  for (const auto& kv : o.sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw ConfigurationError("--set expects key=value, got '" + kv + "'");
    assign(cfg, kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (!o.nu.empty()) assign(cfg, "nu_list", o.nu);
  if (!o.seed.empty()) assign(cfg, "seed", o.seed);
  if (!o.out.empty()) assign(cfg, "out", o.out);
  cfg.validate();
  return cfg;
}

Section run_named(const std::string& name, EnsembleCache& cache) {
  if (name == "scaling") return run_scaling_experiment(cache);
  if (name == "spectrum") return run_spectrum_experiment(cache);
  if (name == "structure") return run_structure_experiment(cache);
  if (name == "mixing") return run_mixing_experiment(cache);
  if (name == "inviscid") return run_inviscid_experiment(cache);
  throw ConfigurationError("unknown section '" + name + "'");
}

int execute(const std::string& command, const Options& o) {
  const ExperimentConfig cfg = resolve(o);
  if (command == "config") {
    write_config(std::cout, cfg);
    return kPass;
  }
  AcceptanceReport report;
  report.config = cfg.to_json();
  if (command == "simulate") {
    report.sections.push_back(run_simulation(cfg, o.resume));
  } else {
    EnsembleCache cache(cfg);
    std::vector<std::string> names{command};
    if (command == "report")
      names = o.sections.empty()
                  ? std::vector<std::string>{"scaling", "spectrum", "structure", "mixing", "inviscid"}
                  : o.sections;
    for (const auto& n : names) {
      std::clog << "running " << n << " ..." << std::endl;
      report.sections.push_back(run_named(n, cache));
    }
  }
  const int status = emit_report(report, cfg.out);
  std::cout << format_table(report);
  std::cout << "report written to " << cfg.out << "/report.json\n";
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stochastic Burgers simulator and turbulence-law experiments"};
  app.require_subcommand(1);
  Options opts;
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"simulate", "run one trajectory and write samples plus a checkpoint"},
      {"scaling", "Sobolev-norm scaling with viscosity"},
      {"spectrum", "energy spectrum slope and dissipation breakpoint"},
      {"structure", "structure-function exponents"},
      {"mixing", "coupled contraction and ensemble convergence"},
      {"inviscid", "entropy-solution laws and the inviscid limit"},
      {"report", "run several experiments on shared ensembles"},
      {"config", "print the resolved configuration as a config file"},
  };
  for (const auto& [name, help] : commands) {
    CLI::App* cmd = app.add_subcommand(name, help);
    add_common(cmd, opts);
    if (name == "simulate") cmd->add_option("--resume", opts.resume, "checkpoint to continue from");
    if (name == "report")
      cmd->add_option("--sections", opts.sections, "subset of scaling,spectrum,structure,mixing,inviscid")
          ->delimiter(',');
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kConfigError;
  }
  const std::string command = app.get_subcommands().front()->get_name();
  try {
    return execute(command, opts);
  } catch (const ConfigurationError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kConfigError;
  } catch (const BlowUpError& e) {
    std::cerr << "numerical blow-up: " << e.what() << '\n';
    return kBlowUp;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kIoError;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kLawFailure;
  }
}
