#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Core>
#include <nlohmann/json.hpp>

#include "smc/env.hpp"
#include "smc/motor.hpp"
#include "smc/random.hpp"

namespace smc {

struct CellPosition {
  double x = 0.0;
  double y = 0.0;
};

/// Excitation s = alpha e^2 + beta e + gamma of a single cell.
struct Excitation {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;

  double operator()(double e) const noexcept { return alpha * e * e + beta * e + gamma; }
};

enum class ExcitationMode { linear, quadratic };

/// Fixed retina: cell positions relative to the sensor center plus one
/// excitation function per cell. Immutable once built.
class Retina {
 public:
  /// Throws ConfigError if sizes differ, are zero, or a cell lies outside
  /// the disk of the given diameter.
  Retina(std::vector<CellPosition> cells, std::vector<Excitation> excitations,
         double diameter = 4.0);

  std::size_t n_cells() const noexcept { return cells_.size(); }
  double diameter() const noexcept { return diameter_; }
  const std::vector<CellPosition>& cells() const noexcept { return cells_; }
  const std::vector<Excitation>& excitations() const noexcept { return excitations_; }

  /// Same layout, different excitation functions.
  Retina with_excitations(std::vector<Excitation> excitations) const;

 private:
  std::vector<CellPosition> cells_;
  std::vector<Excitation> excitations_;
  double diameter_;
};

/// Cells at direction ~ U(0, 2pi), distance ~ U(0, diameter/2).
/// linear: alpha = 0, beta and gamma ~ U(-1e3, 1e3), |beta| < 1 redrawn.
/// quadratic: alpha, beta, gamma ~ N(0, 1).
Retina build_retina(std::size_t n_cells, double diameter, ExcitationMode mode, Rng& rng);

/// Excitation draws only; used to re-encode an existing layout.
std::vector<Excitation> draw_excitations(std::size_t n_cells, ExcitationMode mode, Rng& rng);

struct SensoryState {
  Eigen::VectorXd s;
};

/// s_i = f_i(v(x_i + dx, y_i + dy)). Throws OutOfDomainError if a displaced
/// cell leaves the environment.
SensoryState sense(const Retina& retina, const VisualInput& input, const MotorCommand& m);

nlohmann::json to_json(const Retina& retina);
Retina retina_from_json(const nlohmann::json& j);

}  // namespace smc
