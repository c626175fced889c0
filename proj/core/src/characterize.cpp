#include "smc/characterize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <tuple>

#include "smc/error.hpp"

namespace smc {
namespace {

template <class T>
nlohmann::json opt(const std::optional<T>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

template <class T>
std::optional<T> opt_from(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || j[key].is_null()) return std::nullopt;
  return j[key].get<T>();
}

nlohmann::json vec2(const std::optional<Eigen::Vector2d>& v) {
  return v ? nlohmann::json{v->x(), v->y()} : nlohmann::json(nullptr);
}

std::optional<Eigen::Vector2d> vec2_from(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || j[key].is_null()) return std::nullopt;
  return Eigen::Vector2d(j[key].at(0).get<double>(), j[key].at(1).get<double>());
}

// Interpolated quantile of sorted values at q in [0, 1].
double quantile(const std::vector<double>& sorted, double q) {
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  const double t = pos - static_cast<double>(lo);
  return sorted[lo] + t * (sorted[hi] - sorted[lo]);
}

int bin_of(const std::vector<double>& edges, double v) {
  if (edges.size() < 2) return 0;
  const auto first = edges.begin() + 1;
  const auto last = edges.end() - 1;
  return static_cast<int>(std::upper_bound(first, last, v) - first);
}

double normalized_offset(const std::vector<double>& edges, int bin, double v) {
  const double lo = edges[static_cast<std::size_t>(bin)];
  const double hi = edges[static_cast<std::size_t>(bin) + 1];
  const double width = hi - lo;
  if (!(width > 0.0)) return 0.0;
  return (v - 0.5 * (lo + hi)) / width;
}

}  // namespace

std::string_view to_string(Regime r) noexcept {
  return r == Regime::linear ? "linear" : "nonlinear";
}

std::string_view to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::uniform:
      return "uniform";
    case Verdict::edge:
      return "edge";
    case Verdict::no_invariance:
      break;
  }
  return "no-invariance";
}

Characterization characterize_batch(std::size_t input_id, const ExplorationBatch& batch,
                                    Regime regime, const CharacterizeOptions& options, Rng& rng) {
  Characterization c;
  c.input_id = input_id;
  c.regime = regime;

  if (regime == Regime::linear) {
    const LinearVerdict v = characterize_linear(batch, options.thresholds);
    c.uniformity = v.uniformity;
    c.edgeness_sigma = v.edgeness_sigma;
    c.significant_count = v.significant_count;
    c.singular_values = v.singular_values;
    c.invariant_angle = v.invariant_angle;
    if (v.change_direction) c.change_direction = v.change_direction->vector;
    if (v.invariant_direction) c.invariant_direction = v.invariant_direction->vector;
    if (v.significant_count == 0) {
      c.verdict = Verdict::uniform;
    } else if (v.significant_count == 1 && v.invariant_angle) {
      c.verdict = Verdict::edge;
    }
    return c;
  }

  const NonlinearVerdict v = characterize_nonlinear(batch, options.cca, rng, options.thresholds);
  c.uniformity = v.uniformity;
  c.singular_values = v.singular_values;
  c.significant_count = count_significant(v.singular_values, options.thresholds);
  c.edgeness_sigma = v.singular_values.size() > 1 ? std::optional(v.singular_values[1]) : std::nullopt;
  c.err_curve = v.err_curve;
  c.p_star = v.p_star;
  c.invariant_angle = v.invariant_angle;
  if (v.change_direction) c.change_direction = v.change_direction->vector;
  if (v.invariant_direction) c.invariant_direction = v.invariant_direction->vector;
  if (v.uniform) {
    c.verdict = Verdict::uniform;
  } else if (v.invariant_angle) {
    c.verdict = Verdict::edge;
  }
  return c;
}

Characterization characterize(std::size_t input_id, const VisualInput& input, const Retina& retina,
                              std::span<const MotorCommand> motors, Regime regime,
                              const CharacterizeOptions& options, Rng& rng) {
  const ExplorationBatch batch = collect_variations(retina, input, motors);
  return characterize_batch(input_id, batch, regime, options, rng);
}

nlohmann::json to_json(const Characterization& c) {
  nlohmann::json curve = nlohmann::json::array();
  for (const auto& e : c.err_curve) curve.push_back({e.p, e.err});
  return {{"input_id", c.input_id},
          {"regime", to_string(c.regime)},
          {"uniformity", c.uniformity},
          {"edgeness_sigma", opt(c.edgeness_sigma)},
          {"significant_count", c.significant_count},
          {"p_star", opt(c.p_star)},
          {"invariant_angle", opt(c.invariant_angle)},
          {"verdict", to_string(c.verdict)},
          {"singular_values", c.singular_values},
          {"err_curve", curve},
          {"change_direction", vec2(c.change_direction)},
          {"invariant_direction", vec2(c.invariant_direction)}};
}

Characterization characterization_from_json(const nlohmann::json& j) {
  try {
    Characterization c;
    c.input_id = j.at("input_id").get<std::size_t>();
    c.regime = j.at("regime").get<std::string>() == "linear" ? Regime::linear : Regime::nonlinear;
    c.uniformity = j.at("uniformity").get<double>();
    c.edgeness_sigma = opt_from<double>(j, "edgeness_sigma");
    c.significant_count = j.value("significant_count", 0);
    c.p_star = opt_from<int>(j, "p_star");
    c.invariant_angle = opt_from<double>(j, "invariant_angle");
    const auto verdict = j.at("verdict").get<std::string>();
    c.verdict = verdict == "uniform" ? Verdict::uniform
                : verdict == "edge"  ? Verdict::edge
                                     : Verdict::no_invariance;
    c.singular_values = j.value("singular_values", std::vector<double>{});
    if (j.contains("err_curve")) {
      for (const auto& e : j["err_curve"]) c.err_curve.push_back({e.at(0).get<int>(), e.at(1).get<double>()});
    }
    c.change_direction = vec2_from(j, "change_direction");
    c.invariant_direction = vec2_from(j, "invariant_direction");
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("characterization", e.what());
  }
}

int PatchMap::u_bin(double uniformity) const noexcept { return bin_of(u_edges, uniformity); }

int PatchMap::angle_bin(double angle) const noexcept { return bin_of(angle_edges, angle); }

PatchMap build_topological_map(std::span<const Characterization> characterizations, int n_u_bins,
                               int n_angle_bins) {
  if (n_u_bins < 1 || n_angle_bins < 1) throw ConfigError("bins", "bin counts must be >= 1");
  std::vector<const Characterization*> placed;
  for (const auto& c : characterizations) {
    if (c.invariant_angle) placed.push_back(&c);
  }
  if (placed.empty()) throw EmptyInputError("no characterization with an invariant angle to map");

  std::vector<double> u;
  u.reserve(placed.size());
  for (const auto* c : placed) u.push_back(c->uniformity);
  std::sort(u.begin(), u.end());

  PatchMap map;
  for (int b = 0; b <= n_u_bins; ++b) map.u_edges.push_back(quantile(u, static_cast<double>(b) / n_u_bins));
  for (int b = 0; b <= n_angle_bins; ++b) {
    map.angle_edges.push_back(std::numbers::pi * static_cast<double>(b) / n_angle_bins);
  }

  // (distance to cell center, input_id) per cell; lexicographic min wins.
  std::map<std::pair<int, int>, std::pair<double, std::size_t>> best;
  for (const auto* c : placed) {
    const int ub = map.u_bin(c->uniformity);
    const int ab = map.angle_bin(*c->invariant_angle);
    const double du = normalized_offset(map.u_edges, ub, c->uniformity);
    const double da = normalized_offset(map.angle_edges, ab, *c->invariant_angle);
    const std::pair<double, std::size_t> key{std::hypot(du, da), c->input_id};
    auto [it, inserted] = best.try_emplace({ub, ab}, key);
    if (!inserted && key < it->second) it->second = key;
  }
  for (const auto& [cell, v] : best) map.cells.emplace(cell, v.second);
  return map;
}

nlohmann::json to_json(const PatchMap& map) {
  nlohmann::json cells = nlohmann::json::array();
  for (const auto& [cell, id] : map.cells) {
    cells.push_back({{"u_bin", cell.first}, {"angle_bin", cell.second}, {"input_id", id}});
  }
  return {{"u_edges", map.u_edges}, {"angle_edges", map.angle_edges}, {"cells", cells}};
}

PatchMap patch_map_from_json(const nlohmann::json& j) {
  try {
    PatchMap map;
    map.u_edges = j.at("u_edges").get<std::vector<double>>();
    map.angle_edges = j.at("angle_edges").get<std::vector<double>>();
    for (const auto& c : j.at("cells")) {
      map.cells.emplace(std::pair{c.at("u_bin").get<int>(), c.at("angle_bin").get<int>()},
                        c.at("input_id").get<std::size_t>());
    }
    return map;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("patch_map", e.what());
  }
}

}  // namespace smc
