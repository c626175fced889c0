#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "smc/cca.hpp"
#include "smc/characterize.hpp"
#include "smc/env.hpp"
#include "smc/explore.hpp"
#include "smc/sensor.hpp"
#include "smc/svd_analysis.hpp"

namespace smc {

inline constexpr const char* kVersion = "1.0.0";

/// Experiment 1: linear gradients, linear retina, SVD analysis.
/// Experiment 2: tanh edges, quadratic retina, CCA analysis.
struct RunConfig {
  int experiment = 1;
  std::size_t n_inputs = 2000;
  std::size_t k_motors = 1000;
  std::size_t n_cells = 25;
  double sensor_diameter = 4.0;
  double exploration_diameter = 6.0;
  std::uint64_t master_seed = 0;
  Thresholds thresholds;
  CcaConfig cca;
  std::filesystem::path output_dir = "smc-out";

  /// 0 = one worker per hardware thread. Does not affect any output byte.
  std::size_t threads = 0;
  bool fresh_retina_per_input = false;
  /// Inputs (lowest ids first) that get spectrum and direction plots.
  std::size_t plot_samples = 3;
  int map_u_bins = 10;
  int map_angle_bins = 10;
  /// d_m.csv / d_s.csv are written for this many inputs.
  std::size_t dump_batches = 0;

  Regime regime() const noexcept { return experiment == 1 ? Regime::linear : Regime::nonlinear; }
  ExcitationMode excitation_mode() const noexcept {
    return experiment == 1 ? ExcitationMode::linear : ExcitationMode::quadratic;
  }

  /// Throws ConfigError naming the offending field.
  void validate() const;
};

/// Output-relevant fields only (no output_dir, no threads).
nlohmann::json to_json(const RunConfig& c);
/// Fields missing from `j` keep the value from `base`. Validates the result.
RunConfig run_config_from_json(const nlohmann::json& j, RunConfig base = {});

struct RunReport {
  RunConfig config;
  std::vector<Retina> retinas;  // one shared retina, or one per input
  std::vector<VisualInput> inputs;
  std::vector<Characterization> characterizations;  // ordered by input_id
  std::optional<PatchMap> patch_map;
  std::map<std::size_t, ExplorationBatch> batches;  // only the dumped ones
  double elapsed_seconds = 0.0;

  const Retina& retina_for(std::size_t input_id) const {
    return retinas.size() == 1 ? retinas.front() : retinas.at(input_id);
  }
};

/// Builds the retina and ensemble, characterizes every input (in parallel
/// when threads != 1) and builds the patch map. No file output.
RunReport execute_experiment(const RunConfig& config);

/// execute_experiment + write_artifacts.
RunReport run_experiment(const RunConfig& config);

/// Writes manifest.json, verdicts.csv, patch_map.json, report.json, dumped
/// batches and all plots into config.output_dir. Returns the written paths.
std::vector<std::filesystem::path> write_artifacts(const RunReport& report);

/// Spectrum and direction panels for the first plot_samples inputs plus the
/// patch map, under <dir>/plots. Throws EmptyInputError for an empty report.
std::vector<std::filesystem::path> emit_plots(const RunReport& report,
                                              const std::filesystem::path& dir);

/// Reloads what write_artifacts stored in report.json.
RunReport load_report(const std::filesystem::path& dir);

}  // namespace smc
