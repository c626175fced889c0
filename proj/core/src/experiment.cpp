#include "smc/experiment.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <exception>
#include <mutex>
#include <thread>

#include <Eigen/Core>

#include "smc/error.hpp"
#include "smc/report_io.hpp"
#include "smc/svg.hpp"

namespace smc {
namespace {

nlohmann::json to_json(const Thresholds& t) {
  return {{"tau_rel", t.tau_rel},
          {"tau_abs", t.tau_abs ? nlohmann::json(*t.tau_abs) : nlohmann::json(nullptr)},
          {"abs_factor", t.abs_factor}};
}

Thresholds thresholds_from_json(const nlohmann::json& j, Thresholds t) {
  if (j.contains("tau_rel")) t.tau_rel = j["tau_rel"].get<double>();
  if (j.contains("tau_abs")) {
    t.tau_abs = j["tau_abs"].is_null() ? std::nullopt : std::optional(j["tau_abs"].get<double>());
  }
  if (j.contains("abs_factor")) t.abs_factor = j["abs_factor"].get<double>();
  return t;
}

std::string sample_stem(std::size_t id) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "sample_%04zu", id);
  return buf;
}

Characterization run_one(const RunConfig& config, const std::vector<Retina>& retinas,
                         const std::vector<VisualInput>& inputs, std::size_t id,
                         const CharacterizeOptions& options, ExplorationBatch* dump) {
  Rng motor_rng = make_stream(config.master_seed, "motors", id);
  const auto motors = sample_motors(config.k_motors, motor_rng, config.exploration_diameter);
  const Retina& retina = retinas.size() == 1 ? retinas.front() : retinas[id];
  const ExplorationBatch batch = collect_variations(retina, inputs[id], motors);
  Rng cca_rng = make_stream(config.master_seed, "cca", id);
  Characterization c = characterize_batch(id, batch, config.regime(), options, cca_rng);
  if (dump) *dump = batch;
  return c;
}

}  // namespace

void RunConfig::validate() const {
  if (experiment != 1 && experiment != 2) throw ConfigError("experiment", "must be 1 or 2");
  if (n_inputs < 1) throw ConfigError("n_inputs", "must be >= 1");
  if (k_motors < 2) throw ConfigError("k_motors", "must be >= 2");
  if (n_cells < 1) throw ConfigError("n_cells", "must be >= 1");
  if (!(sensor_diameter > 0.0)) throw ConfigError("sensor_diameter", "must be > 0");
  if (!(exploration_diameter > 0.0)) throw ConfigError("exploration_diameter", "must be > 0");
  if (0.5 * (sensor_diameter + exploration_diameter) > kDomainHalfWidth) {
    throw ConfigError("exploration_diameter",
                      "sensor and exploration radii together exceed the environment half-width 5");
  }
  if (!(thresholds.tau_rel >= 0.0)) throw ConfigError("thresholds.tau_rel", "must be >= 0");
  if (thresholds.tau_abs && !(*thresholds.tau_abs >= 0.0)) {
    throw ConfigError("thresholds.tau_abs", "must be >= 0");
  }
  if (!(thresholds.abs_factor >= 0.0)) throw ConfigError("thresholds.abs_factor", "must be >= 0");
  if (map_u_bins < 1) throw ConfigError("map_u_bins", "must be >= 1");
  if (map_angle_bins < 1) throw ConfigError("map_angle_bins", "must be >= 1");
  if (experiment == 2) {
    cca.validate();
    if (static_cast<std::size_t>(cca.p_list.back()) >= n_cells) {
      throw ConfigError("cca.p_list", "projection dimensions must stay below n_cells");
    }
  }
}

nlohmann::json to_json(const RunConfig& c) {
  return {{"experiment", c.experiment},
          {"n_inputs", c.n_inputs},
          {"k_motors", c.k_motors},
          {"n_cells", c.n_cells},
          {"sensor_diameter", c.sensor_diameter},
          {"exploration_diameter", c.exploration_diameter},
          {"master_seed", c.master_seed},
          {"thresholds", to_json(c.thresholds)},
          {"cca", to_json(c.cca)},
          {"fresh_retina_per_input", c.fresh_retina_per_input},
          {"plot_samples", c.plot_samples},
          {"map_u_bins", c.map_u_bins},
          {"map_angle_bins", c.map_angle_bins},
          {"dump_batches", c.dump_batches}};
}

RunConfig run_config_from_json(const nlohmann::json& j, RunConfig c) {
  if (!j.is_object()) throw ConfigError("config", "expected a JSON object");
  std::string field;
  try {
    auto take = [&](const char* key, auto& dst) {
      field = key;
      if (j.contains(key)) dst = j[key].get<std::decay_t<decltype(dst)>>();
    };
    take("experiment", c.experiment);
    take("n_inputs", c.n_inputs);
    take("k_motors", c.k_motors);
    take("n_cells", c.n_cells);
    take("sensor_diameter", c.sensor_diameter);
    take("exploration_diameter", c.exploration_diameter);
    take("master_seed", c.master_seed);
    take("threads", c.threads);
    take("fresh_retina_per_input", c.fresh_retina_per_input);
    take("plot_samples", c.plot_samples);
    take("map_u_bins", c.map_u_bins);
    take("map_angle_bins", c.map_angle_bins);
    take("dump_batches", c.dump_batches);
    field = "output_dir";
    if (j.contains("output_dir")) c.output_dir = j["output_dir"].get<std::string>();
    field = "thresholds";
    if (j.contains("thresholds")) c.thresholds = thresholds_from_json(j["thresholds"], c.thresholds);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(field, e.what());
  }
  if (j.contains("cca")) c.cca = cca_config_from_json(j["cca"], c.cca);
  c.validate();
  return c;
}

RunReport execute_experiment(const RunConfig& config) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();

  RunReport report;
  report.config = config;
  const auto mode = config.excitation_mode();
  if (config.fresh_retina_per_input) {
    report.retinas.reserve(config.n_inputs);
    for (std::size_t i = 0; i < config.n_inputs; ++i) {
      Rng rng = make_stream(config.master_seed, "retina", i + 1);
      report.retinas.push_back(build_retina(config.n_cells, config.sensor_diameter, mode, rng));
    }
  } else {
    Rng rng = make_stream(config.master_seed, "retina", 0);
    report.retinas.push_back(build_retina(config.n_cells, config.sensor_diameter, mode, rng));
  }

  Rng ensemble_rng = make_stream(config.master_seed, "ensemble");
  report.inputs = config.experiment == 1 ? sample_linear_ensemble(config.n_inputs, ensemble_rng)
                                         : sample_tanh_ensemble(config.n_inputs, ensemble_rng);

  const CharacterizeOptions options{config.thresholds, config.cca};
  const std::size_t n = config.n_inputs;
  std::vector<Characterization> results(n);
  std::vector<ExplorationBatch> dumps(std::min(config.dump_batches, n));

  std::size_t workers = config.threads ? config.threads : std::thread::hardware_concurrency();
  workers = std::clamp<std::size_t>(workers, 1, n);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::size_t id = next++; id < n; id = next++) {
      try {
        results[id] = run_one(config, report.retinas, report.inputs, id, options,
                              id < dumps.size() ? &dumps[id] : nullptr);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = n;
      }
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);

  report.characterizations = std::move(results);
  for (std::size_t i = 0; i < dumps.size(); ++i) report.batches.emplace(i, std::move(dumps[i]));
  try {
    report.patch_map =
        build_topological_map(report.characterizations, config.map_u_bins, config.map_angle_bins);
  } catch (const EmptyInputError&) {
    report.patch_map.reset();
  }
  report.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

RunReport run_experiment(const RunConfig& config) {
  RunReport report = execute_experiment(config);
  write_artifacts(report);
  return report;
}

std::vector<std::filesystem::path> emit_plots(const RunReport& report,
                                              const std::filesystem::path& dir) {
  if (report.characterizations.empty()) throw EmptyInputError("report holds no characterizations");
  const auto plots = dir / "plots";
  std::vector<std::filesystem::path> written;
  const std::size_t n = std::min(report.config.plot_samples, report.characterizations.size());
  for (std::size_t i = 0; i < n; ++i) {
    const auto& c = report.characterizations[i];
    const auto stem = sample_stem(c.input_id);
    written.push_back(plots / (stem + "_spectrum.svg"));
    write_text_file(written.back(), svg::spectrum_chart(c));
    written.push_back(plots / (stem + "_directions.svg"));
    write_text_file(written.back(),
                    svg::direction_panel(c, report.inputs.at(c.input_id), report.config.sensor_diameter,
                                         report.config.exploration_diameter));
  }
  if (report.patch_map) {
    written.push_back(plots / "patch_map.svg");
    write_text_file(written.back(), svg::patch_map_chart(*report.patch_map, report.inputs));
  }
  return written;
}

std::vector<std::filesystem::path> write_artifacts(const RunReport& report) {
  const auto& dir = report.config.output_dir;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());

  nlohmann::json retinas = nlohmann::json::array();
  for (const auto& r : report.retinas) retinas.push_back(to_json(r));

  std::vector<std::filesystem::path> written;
  char eigen_version[32];
  std::snprintf(eigen_version, sizeof(eigen_version), "%d.%d.%d", EIGEN_WORLD_VERSION,
                EIGEN_MAJOR_VERSION, EIGEN_MINOR_VERSION);
  const nlohmann::json manifest{
      {"format", kCsvSchemaLine + 2},
      {"versions", {{"smc", kVersion}, {"eigen", eigen_version}}},
      {"config", to_json(report.config)},
      {"retina", report.retinas.size() == 1 ? retinas.front() : retinas}};
  written.push_back(dir / "manifest.json");
  write_text_file(written.back(), manifest.dump(2) + "\n");

  written.push_back(dir / "verdicts.csv");
  if (report.config.regime() == Regime::linear) {
    write_text_file(written.back(), linear_verdicts_csv(report.characterizations));
  } else {
    write_text_file(written.back(),
                    nonlinear_verdicts_csv(report.characterizations, report.config.cca.p_list.back()));
  }

  if (report.patch_map) {
    written.push_back(dir / "patch_map.json");
    write_text_file(written.back(), to_json(*report.patch_map).dump(2) + "\n");
  }

  nlohmann::json inputs = nlohmann::json::array();
  for (const auto& in : report.inputs) inputs.push_back(to_json(in));
  nlohmann::json chars = nlohmann::json::array();
  for (const auto& c : report.characterizations) chars.push_back(to_json(c));
  const nlohmann::json full{{"format", kCsvSchemaLine + 2},
                            {"config", to_json(report.config)},
                            {"retinas", retinas},
                            {"inputs", inputs},
                            {"characterizations", chars},
                            {"patch_map", report.patch_map ? to_json(*report.patch_map)
                                                           : nlohmann::json(nullptr)}};
  written.push_back(dir / "report.json");
  write_text_file(written.back(), full.dump() + "\n");

  for (const auto& [id, batch] : report.batches) {
    const auto bdir = dir / "batches" / sample_stem(id);
    write_batch_csv(batch, bdir);
    written.push_back(bdir / "d_m.csv");
    written.push_back(bdir / "d_s.csv");
  }

  for (auto& p : emit_plots(report, dir)) written.push_back(std::move(p));
  return written;
}

RunReport load_report(const std::filesystem::path& dir) {
  const auto text = read_text_file(dir / "report.json");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw IoError("report.json is not valid JSON: " + std::string(e.what()));
  }
  RunReport report;
  report.config = run_config_from_json(j.at("config"));
  report.config.output_dir = dir;
  for (const auto& r : j.at("retinas")) report.retinas.push_back(retina_from_json(r));
  for (const auto& in : j.at("inputs")) report.inputs.push_back(visual_input_from_json(in));
  for (const auto& c : j.at("characterizations")) {
    report.characterizations.push_back(characterization_from_json(c));
  }
  if (!j.at("patch_map").is_null()) report.patch_map = patch_map_from_json(j["patch_map"]);
  return report;
}

}  // namespace smc
