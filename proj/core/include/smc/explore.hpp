#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "smc/env.hpp"
#include "smc/motor.hpp"
#include "smc/random.hpp"
#include "smc/sensor.hpp"

namespace smc {

/// Paired samples for one visual input. Column k of d_m is the motor command
/// m_k, column k of d_s is sense(m_k) - sense(0).
struct ExplorationBatch {
  Eigen::MatrixXd d_m;  // N_m x K
  Eigen::MatrixXd d_s;  // N_s x K

  Eigen::Index k() const noexcept { return d_m.cols(); }
};

/// k commands with direction ~ U(0, 2pi) and amplitude ~ U(0, diameter/2).
std::vector<MotorCommand> sample_motors(std::size_t k, Rng& rng, double exploration_diameter = 6.0);

/// The m = 0 reference is sensed once; the sensor is re-centered on the
/// patch before every displacement.
ExplorationBatch collect_variations(const Retina& retina, const VisualInput& input,
                                    std::span<const MotorCommand> motors);

/// d_m.csv (K rows x 2) and d_s.csv (K rows x N_s) under `dir`.
void write_batch_csv(const ExplorationBatch& batch, const std::filesystem::path& dir);
ExplorationBatch read_batch_csv(const std::filesystem::path& dir);

}  // namespace smc
