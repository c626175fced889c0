#pragma once

namespace smc {

/// Sensor displacement (dx, dy) relative to the patch center.
struct MotorCommand {
  double dx = 0.0;
  double dy = 0.0;

  friend bool operator==(const MotorCommand&, const MotorCommand&) = default;
};

}  // namespace smc
