#pragma once

#include <cstddef>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "smc/random.hpp"

namespace smc {

/// Half-width of the square environment: inputs are defined on [-5,5]^2.
inline constexpr double kDomainHalfWidth = 5.0;

struct Uniform {
  double level = 0.0;
};

/// v(x,y) = a x + b y + c
struct LinearGradient {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
};

/// v(x,y) = 0.5 (1 + tanh(kappa (a x + b y + c) + delta))
struct TanhEdge {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double kappa = 1.0;
  double delta = 0.0;
};

/// A visual input: a scalar field over the plane with values in [0,1].
/// Immutable value type; evaluate() is pure.
using VisualInput = std::variant<Uniform, LinearGradient, TanhEdge>;

/// Field value at (x,y). Throws OutOfDomainError if |x| or |y| exceeds 5.
double evaluate(const VisualInput& input, double x, double y);

/// Gradient direction (a,b) of the underlying linear field; zero for Uniform.
struct PlanarDirection {
  double a = 0.0;
  double b = 0.0;
};
PlanarDirection gradient_of(const VisualInput& input) noexcept;

/// Orientation in [0, pi) of the level lines of the field, i.e. of the motor
/// direction (-b, a) that leaves the input unchanged.
double level_line_angle(const VisualInput& input) noexcept;

/// Linear gradients with orientation ~ U(0, 2pi), offset c ~ U(0.3, 0.7) and
/// slope g ~ U(0, g_max(theta, c)), where g_max keeps a x + b y + c inside
/// [0,1] on the whole square. Throws EmptyInputError for n == 0.
std::vector<VisualInput> sample_linear_ensemble(std::size_t n, Rng& rng);

/// Tanh edges built on gradients with g ~ U(0.02, 0.2), kappa ~ U(1, 10),
/// delta ~ U(-1, 1). Throws EmptyInputError for n == 0.
std::vector<VisualInput> sample_tanh_ensemble(std::size_t n, Rng& rng);

nlohmann::json to_json(const VisualInput& input);
VisualInput visual_input_from_json(const nlohmann::json& j);

}  // namespace smc
