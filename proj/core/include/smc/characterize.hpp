#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Core>
#include <nlohmann/json.hpp>

#include "smc/cca.hpp"
#include "smc/env.hpp"
#include "smc/explore.hpp"
#include "smc/sensor.hpp"
#include "smc/svd_analysis.hpp"

namespace smc {

enum class Regime { linear, nonlinear };
enum class Verdict { uniform, edge, no_invariance };

std::string_view to_string(Regime r) noexcept;
std::string_view to_string(Verdict v) noexcept;

struct Characterization {
  std::size_t input_id = 0;
  Regime regime = Regime::linear;
  double uniformity = 0.0;  // sigma_1 or Err(0)
  std::optional<double> edgeness_sigma;
  int significant_count = 0;  // of D_s
  std::optional<int> p_star;
  std::optional<double> invariant_angle;
  Verdict verdict = Verdict::no_invariance;

  // Detail kept for plots.
  std::vector<double> singular_values;
  std::vector<ErrPoint> err_curve;
  std::optional<Eigen::Vector2d> change_direction;
  std::optional<Eigen::Vector2d> invariant_direction;
};

struct CharacterizeOptions {
  Thresholds thresholds;
  CcaConfig cca;
};

/// Characterization of an already collected batch. `rng` is only consumed in
/// the nonlinear regime.
Characterization characterize_batch(std::size_t input_id, const ExplorationBatch& batch,
                                    Regime regime, const CharacterizeOptions& options, Rng& rng);

/// Explore `input` with `motors` and characterize the resulting batch.
Characterization characterize(std::size_t input_id, const VisualInput& input, const Retina& retina,
                              std::span<const MotorCommand> motors, Regime regime,
                              const CharacterizeOptions& options, Rng& rng);

nlohmann::json to_json(const Characterization& c);
Characterization characterization_from_json(const nlohmann::json& j);

/// Inputs binned by uniformity (quantile bins) and invariant angle (uniform
/// bins over [0, pi)). Each occupied cell keeps one representative.
struct PatchMap {
  std::vector<double> u_edges;      // n_u_bins + 1, ascending
  std::vector<double> angle_edges;  // n_angle_bins + 1, 0 .. pi
  std::map<std::pair<int, int>, std::size_t> cells;  // (u_bin, angle_bin) -> input_id

  int n_u_bins() const noexcept { return static_cast<int>(u_edges.size()) - 1; }
  int n_angle_bins() const noexcept { return static_cast<int>(angle_edges.size()) - 1; }

  int u_bin(double uniformity) const noexcept;
  int angle_bin(double angle) const noexcept;
};

/// Characterizations lacking an invariant angle are not placed. The
/// representative of a cell is the member closest to the cell center in
/// bin-normalized coordinates, ties going to the lowest input_id.
/// Throws EmptyInputError if nothing can be placed, ConfigError for zero bins.
PatchMap build_topological_map(std::span<const Characterization> characterizations, int n_u_bins,
                               int n_angle_bins);

nlohmann::json to_json(const PatchMap& map);
PatchMap patch_map_from_json(const nlohmann::json& j);

}  // namespace smc
