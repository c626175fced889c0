#include "smc/sensor.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "smc/error.hpp"

namespace smc {

Retina::Retina(std::vector<CellPosition> cells, std::vector<Excitation> excitations, double diameter)
    : cells_(std::move(cells)), excitations_(std::move(excitations)), diameter_(diameter) {
  if (!(diameter_ > 0.0)) throw ConfigError("sensor_diameter", "must be > 0");
  if (cells_.empty()) throw ConfigError("n_cells", "retina needs at least one cell");
  if (cells_.size() != excitations_.size()) {
    throw ConfigError("excitations", "expected " + std::to_string(cells_.size()) +
                                         " excitation functions, got " +
                                         std::to_string(excitations_.size()));
  }
  const double r2 = 0.25 * diameter_ * diameter_;
  for (const auto& c : cells_) {
    if (c.x * c.x + c.y * c.y > r2) throw ConfigError("cells", "cell lies outside the sensor disk");
  }
}

Retina Retina::with_excitations(std::vector<Excitation> excitations) const {
  return Retina(cells_, std::move(excitations), diameter_);
}

std::vector<Excitation> draw_excitations(std::size_t n_cells, ExcitationMode mode, Rng& rng) {
  std::vector<Excitation> out;
  out.reserve(n_cells);
  if (mode == ExcitationMode::linear) {
    for (std::size_t i = 0; i < n_cells; ++i) {
      double beta = 0.0;
      do {
        beta = uniform(rng, -1e3, 1e3);
      } while (std::abs(beta) < 1.0);
      out.push_back({0.0, beta, uniform(rng, -1e3, 1e3)});
    }
  } else {
    std::normal_distribution<double> normal(0.0, 1.0);
    for (std::size_t i = 0; i < n_cells; ++i) {
      const double alpha = normal(rng);
      const double beta = normal(rng);
      const double gamma = normal(rng);
      out.push_back({alpha, beta, gamma});
    }
  }
  return out;
}

Retina build_retina(std::size_t n_cells, double diameter, ExcitationMode mode, Rng& rng) {
  if (n_cells == 0) throw ConfigError("n_cells", "must be >= 1");
  if (!(diameter > 0.0)) throw ConfigError("sensor_diameter", "must be > 0");
  std::vector<CellPosition> cells;
  cells.reserve(n_cells);
  for (std::size_t i = 0; i < n_cells; ++i) {
    const double theta = uniform(rng, 0.0, 2.0 * std::numbers::pi);
    const double r = uniform(rng, 0.0, 0.5 * diameter);
    cells.push_back({r * std::cos(theta), r * std::sin(theta)});
  }
  auto excitations = draw_excitations(n_cells, mode, rng);
  return Retina(std::move(cells), std::move(excitations), diameter);
}

SensoryState sense(const Retina& retina, const VisualInput& input, const MotorCommand& m) {
  const auto& cells = retina.cells();
  const auto& f = retina.excitations();
  SensoryState out{Eigen::VectorXd(static_cast<Eigen::Index>(cells.size()))};
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const double e = evaluate(input, cells[i].x + m.dx, cells[i].y + m.dy);
    out.s[static_cast<Eigen::Index>(i)] = f[i](e);
  }
  return out;
}

nlohmann::json to_json(const Retina& retina) {
  nlohmann::json cells = nlohmann::json::array();
  for (const auto& c : retina.cells()) cells.push_back({c.x, c.y});
  nlohmann::json exc = nlohmann::json::array();
  for (const auto& e : retina.excitations()) exc.push_back({e.alpha, e.beta, e.gamma});
  return {{"diameter", retina.diameter()}, {"cells", cells}, {"excitations", exc}};
}

Retina retina_from_json(const nlohmann::json& j) {
  try {
    std::vector<CellPosition> cells;
    for (const auto& c : j.at("cells")) cells.push_back({c.at(0).get<double>(), c.at(1).get<double>()});
    std::vector<Excitation> exc;
    for (const auto& e : j.at("excitations")) {
      exc.push_back({e.at(0).get<double>(), e.at(1).get<double>(), e.at(2).get<double>()});
    }
    return Retina(std::move(cells), std::move(exc), j.value("diameter", 4.0));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("retina", e.what());
  }
}

}  // namespace smc
