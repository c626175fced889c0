#include "smc/env.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "smc/error.hpp"

namespace smc {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void check_domain(double x, double y) {
  if (!(std::abs(x) <= kDomainHalfWidth) || !(std::abs(y) <= kDomainHalfWidth)) {
    throw OutOfDomainError("point (" + std::to_string(x) + ", " + std::to_string(y) +
                           ") lies outside [-5,5]^2");
  }
}

struct GradientDraw {
  double a;
  double b;
  double c;
};

// Orientation and offset are drawn first; the slope bound depends on both.
template <class SlopeFn>
GradientDraw draw_gradient(Rng& rng, SlopeFn&& draw_slope) {
  const double theta = uniform(rng, 0.0, 2.0 * std::numbers::pi);
  const double c = uniform(rng, 0.3, 0.7);
  const double g = draw_slope(theta, c);
  return {g * std::cos(theta), g * std::sin(theta), c};
}

}  // namespace

double evaluate(const VisualInput& input, double x, double y) {
  check_domain(x, y);
  return std::visit(
      overloaded{
          [](const Uniform& u) { return u.level; },
          [&](const LinearGradient& g) { return g.a * x + g.b * y + g.c; },
          [&](const TanhEdge& t) {
            return 0.5 * (1.0 + std::tanh(t.kappa * (t.a * x + t.b * y + t.c) + t.delta));
          },
      },
      input);
}

PlanarDirection gradient_of(const VisualInput& input) noexcept {
  return std::visit(overloaded{
                        [](const Uniform&) { return PlanarDirection{}; },
                        [](const LinearGradient& g) { return PlanarDirection{g.a, g.b}; },
                        [](const TanhEdge& t) { return PlanarDirection{t.a, t.b}; },
                    },
                    input);
}

double level_line_angle(const VisualInput& input) noexcept {
  const auto [a, b] = gradient_of(input);
  double angle = std::atan2(a, -b);
  if (angle < 0.0) angle += std::numbers::pi;
  if (angle >= std::numbers::pi) angle -= std::numbers::pi;
  return angle;
}

std::vector<VisualInput> sample_linear_ensemble(std::size_t n, Rng& rng) {
  if (n == 0) throw EmptyInputError("linear ensemble size must be >= 1");
  std::vector<VisualInput> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto g = draw_gradient(rng, [&](double theta, double c) {
      // max over the square of |a x + b y| is 5 g (|cos| + |sin|)
      const double reach = kDomainHalfWidth * (std::abs(std::cos(theta)) + std::abs(std::sin(theta)));
      return uniform(rng, 0.0, std::min(c, 1.0 - c) / reach);
    });
    out.emplace_back(LinearGradient{g.a, g.b, g.c});
  }
  return out;
}

std::vector<VisualInput> sample_tanh_ensemble(std::size_t n, Rng& rng) {
  if (n == 0) throw EmptyInputError("tanh ensemble size must be >= 1");
  std::vector<VisualInput> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto g = draw_gradient(rng, [&](double, double) { return uniform(rng, 0.02, 0.2); });
    const double kappa = uniform(rng, 1.0, 10.0);
    const double delta = uniform(rng, -1.0, 1.0);
    out.emplace_back(TanhEdge{g.a, g.b, g.c, kappa, delta});
  }
  return out;
}

nlohmann::json to_json(const VisualInput& input) {
  return std::visit(
      overloaded{
          [](const Uniform& u) { return nlohmann::json{{"kind", "uniform"}, {"level", u.level}}; },
          [](const LinearGradient& g) {
            return nlohmann::json{{"kind", "gradient"}, {"a", g.a}, {"b", g.b}, {"c", g.c}};
          },
          [](const TanhEdge& t) {
            return nlohmann::json{{"kind", "tanh"}, {"a", t.a},         {"b", t.b},
                                  {"c", t.c},       {"kappa", t.kappa}, {"delta", t.delta}};
          },
      },
      input);
}

VisualInput visual_input_from_json(const nlohmann::json& j) {
  try {
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "uniform") return Uniform{j.at("level").get<double>()};
    if (kind == "gradient") {
      return LinearGradient{j.at("a").get<double>(), j.at("b").get<double>(), j.at("c").get<double>()};
    }
    if (kind == "tanh") {
      return TanhEdge{j.at("a").get<double>(), j.at("b").get<double>(), j.at("c").get<double>(),
                      j.at("kappa").get<double>(), j.at("delta").get<double>()};
    }
    throw ConfigError("kind", "unknown visual input kind '" + kind + "'");
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("visual_input", e.what());
  }
}

}  // namespace smc
