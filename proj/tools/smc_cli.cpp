// smc: run the sensorimotor invariance experiments and render their plots.
//
//   smc run --experiment 1 --n-inputs 2000 --k 1000 --seed 7 --out runs/exp1
//   smc run --config exp2.json --out runs/exp2
//   smc plot --report runs/exp1
//
// Exit codes: 0 success, 1 unexpected failure, 2 configuration error,
// 3 I/O error.

#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "smc/error.hpp"
#include "smc/experiment.hpp"
#include "smc/report_io.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;

struct RunArgs {
  std::optional<int> experiment;
  std::optional<std::size_t> n_inputs;
  std::optional<std::size_t> k;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> threads;
  std::optional<std::size_t> plot_samples;
  std::optional<std::size_t> dump_batches;
  std::string out;
  std::string config_file;
  bool fresh_retina = false;
};

smc::RunConfig resolve(const RunArgs& a) {
  smc::RunConfig base;
  if (!a.config_file.empty()) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(smc::read_text_file(a.config_file));
    } catch (const nlohmann::json::exception& e) {
      throw smc::ConfigError("config", a.config_file + ": " + e.what());
    }
    base = smc::run_config_from_json(j);
  }
  if (a.experiment) base.experiment = *a.experiment;
  if (a.n_inputs) base.n_inputs = *a.n_inputs;
  if (a.k) base.k_motors = *a.k;
  if (a.seed) base.master_seed = *a.seed;
  if (a.threads) base.threads = *a.threads;
  if (a.plot_samples) base.plot_samples = *a.plot_samples;
  if (a.dump_batches) base.dump_batches = *a.dump_batches;
  if (a.fresh_retina) base.fresh_retina_per_input = true;
  if (!a.out.empty()) base.output_dir = a.out;
  base.validate();
  return base;
}

void summarize(const smc::RunReport& report) {
  std::size_t uniform = 0, edge = 0, none = 0;
  for (const auto& c : report.characterizations) {
    switch (c.verdict) {
      case smc::Verdict::uniform:
        ++uniform;
        break;
      case smc::Verdict::edge:
        ++edge;
        break;
      case smc::Verdict::no_invariance:
        ++none;
        break;
    }
  }
  std::printf("experiment %d: %zu inputs (edge %zu, uniform %zu, no-invariance %zu) in %.2f s -> %s\n",
              report.config.experiment, report.characterizations.size(), edge, uniform, none,
              report.elapsed_seconds, report.config.output_dir.string().c_str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sensorimotor invariants of simple visual features"};
  app.require_subcommand(1);

  RunArgs args;
  auto* run = app.add_subcommand("run", "simulate an experiment and write its artifacts");
  run->add_option("--experiment", args.experiment, "1 = linear gradients, 2 = tanh edges");
  run->add_option("--n-inputs", args.n_inputs, "number of visual inputs");
  run->add_option("--k", args.k, "motor commands per input");
  run->add_option("--seed", args.seed, "master seed");
  run->add_option("--out", args.out, "output directory");
  run->add_option("--config", args.config_file, "JSON file mirroring the run configuration");
  run->add_option("--threads", args.threads, "worker threads (0 = all cores)");
  run->add_option("--plot-samples", args.plot_samples, "inputs that get per-sample plots");
  run->add_option("--dump-batches", args.dump_batches, "inputs whose D_m/D_s are exported as CSV");
  run->add_flag("--fresh-retina-per-input", args.fresh_retina, "draw a new retina for every input");

  std::string report_dir;
  auto* plot = app.add_subcommand("plot", "re-render the SVG plots of a finished run");
  plot->add_option("--report", report_dir, "run output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*run) {
      const auto report = smc::run_experiment(resolve(args));
      summarize(report);
    } else if (*plot) {
      const auto report = smc::load_report(report_dir);
      for (const auto& p : smc::emit_plots(report, report_dir)) std::printf("%s\n", p.string().c_str());
    }
  } catch (const smc::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const smc::IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
