#include "smc/cca.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <Eigen/SVD>

#include "smc/error.hpp"

namespace smc {
namespace {

void check_samples(const Eigen::MatrixXd& d_s) {
  if (d_s.cols() < 2) {
    throw InsufficientSamplesError("at least 2 samples required, got " + std::to_string(d_s.cols()));
  }
}

// Full symmetric matrix of Euclidean distances between columns.
Eigen::MatrixXd pairwise_distances(const Eigen::MatrixXd& x) {
  const Eigen::Index k = x.cols();
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(k, k);
  for (Eigen::Index j = 0; j < k; ++j) {
    for (Eigen::Index i = j + 1; i < k; ++i) {
      const double v = (x.col(i) - x.col(j)).norm();
      d(i, j) = v;
      d(j, i) = v;
    }
  }
  return d;
}

double median_distance(const Eigen::MatrixXd& d) {
  const Eigen::Index k = d.cols();
  std::vector<double> v;
  v.reserve(static_cast<std::size_t>(k * (k - 1) / 2));
  for (Eigen::Index j = 0; j < k; ++j) {
    for (Eigen::Index i = j + 1; i < k; ++i) v.push_back(d(i, j));
  }
  auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
  std::nth_element(v.begin(), mid, v.end());
  return *mid;
}

double residual_from_distances(const Eigen::MatrixXd& dx, const Eigen::MatrixXd& y) {
  const Eigen::Index k = dx.cols();
  double sum = 0.0;
  for (Eigen::Index j = 0; j < k; ++j) {
    for (Eigen::Index i = j + 1; i < k; ++i) {
      const double dy = y.rows() ? (y.col(i) - y.col(j)).norm() : 0.0;
      const double r = dx(i, j) - dy;
      sum += r * r;
    }
  }
  return std::sqrt(2.0 * sum / (static_cast<double>(k) * static_cast<double>(k - 1)));
}

}  // namespace

void CcaConfig::validate() const {
  if (p_list.size() < 2) throw ConfigError("cca.p_list", "needs p = 0 and at least one p >= 1");
  if (p_list.front() != 0) throw ConfigError("cca.p_list", "must start at 0");
  for (std::size_t i = 1; i < p_list.size(); ++i) {
    if (p_list[i] != p_list[i - 1] + 1) throw ConfigError("cca.p_list", "must be consecutive from 0");
  }
  if (epochs < 1) throw ConfigError("cca.epochs", "must be >= 1");
  if (!(initial_rate > 0.0) || !(final_rate > 0.0)) throw ConfigError("cca.rate", "rates must be > 0");
  if (lambda0 && !(*lambda0 > 0.0)) throw ConfigError("cca.lambda0", "must be > 0");
  if (!(final_lambda_ratio > 0.0) || final_lambda_ratio > 1.0) {
    throw ConfigError("cca.final_lambda_ratio", "must lie in (0, 1]");
  }
  if (pair_subsample && *pair_subsample == 0) throw ConfigError("cca.pair_subsample", "must be >= 1");
  if (!(err_floor >= 0.0) || !(err_floor < 1.0)) throw ConfigError("cca.err_floor", "must lie in [0, 1)");
}

nlohmann::json to_json(const CcaConfig& c) {
  nlohmann::json j{{"p_list", c.p_list},
                   {"epochs", c.epochs},
                   {"initial_rate", c.initial_rate},
                   {"final_rate", c.final_rate},
                   {"final_lambda_ratio", c.final_lambda_ratio},
                   {"err_floor", c.err_floor}};
  j["lambda0"] = c.lambda0 ? nlohmann::json(*c.lambda0) : nlohmann::json(nullptr);
  j["pair_subsample"] = c.pair_subsample ? nlohmann::json(*c.pair_subsample) : nlohmann::json(nullptr);
  return j;
}

CcaConfig cca_config_from_json(const nlohmann::json& j, CcaConfig c) {
  try {
    if (j.contains("p_list")) c.p_list = j["p_list"].get<std::vector<int>>();
    if (j.contains("epochs")) c.epochs = j["epochs"].get<int>();
    if (j.contains("initial_rate")) c.initial_rate = j["initial_rate"].get<double>();
    if (j.contains("final_rate")) c.final_rate = j["final_rate"].get<double>();
    if (j.contains("final_lambda_ratio")) c.final_lambda_ratio = j["final_lambda_ratio"].get<double>();
    if (j.contains("err_floor")) c.err_floor = j["err_floor"].get<double>();
    if (j.contains("lambda0")) {
      c.lambda0 = j["lambda0"].is_null() ? std::nullopt : std::optional(j["lambda0"].get<double>());
    }
    if (j.contains("pair_subsample")) {
      c.pair_subsample = j["pair_subsample"].is_null()
                             ? std::nullopt
                             : std::optional(j["pair_subsample"].get<std::size_t>());
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("cca", e.what());
  }
  c.validate();
  return c;
}

double projection_error(const Eigen::MatrixXd& d_s, const Eigen::MatrixXd& y) {
  check_samples(d_s);
  if (y.rows() && y.cols() != d_s.cols()) {
    throw InsufficientSamplesError("projection and data have different sample counts");
  }
  const Eigen::Index k = d_s.cols();
  double sum = 0.0;
  for (Eigen::Index j = 0; j < k; ++j) {
    for (Eigen::Index i = j + 1; i < k; ++i) {
      const double dx = (d_s.col(i) - d_s.col(j)).norm();
      const double dy = y.rows() ? (y.col(i) - y.col(j)).norm() : 0.0;
      const double r = dx - dy;
      sum += r * r;
    }
  }
  return std::sqrt(2.0 * sum / (static_cast<double>(k) * static_cast<double>(k - 1)));
}

Eigen::MatrixXd pca_project(const Eigen::MatrixXd& d_s, int p) {
  const Eigen::MatrixXd centered = d_s.colwise() - d_s.rowwise().mean();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(centered, Eigen::ComputeThinU);
  const Eigen::Index cols = std::min<Eigen::Index>(p, svd.matrixU().cols());
  Eigen::MatrixXd y = Eigen::MatrixXd::Zero(p, d_s.cols());
  y.topRows(cols) = svd.matrixU().leftCols(cols).transpose() * centered;
  return y;
}

CcaProjection cca_project(const Eigen::MatrixXd& d_s, int p, const CcaConfig& config, Rng& rng) {
  check_samples(d_s);
  if (p < 1 || p >= d_s.rows()) {
    throw ConfigError("p", "projection dimension " + std::to_string(p) + " must satisfy 1 <= p < " +
                               std::to_string(d_s.rows()));
  }
  config.validate();

  const Eigen::Index k = d_s.cols();
  const Eigen::MatrixXd dx = pairwise_distances(d_s);
  Eigen::MatrixXd y = pca_project(d_s, p);

  const double lambda0 = config.lambda0 ? *config.lambda0 : median_distance(dx);
  if (lambda0 > 0.0) {
    const double lambda_f = lambda0 * config.final_lambda_ratio;
    std::vector<Eigen::Index> order(static_cast<std::size_t>(k));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::uniform_int_distribution<Eigen::Index> pick(0, k - 1);
    const std::size_t partners =
        config.pair_subsample ? std::max<std::size_t>(1, *config.pair_subsample / static_cast<std::size_t>(k))
                              : 0;
    Eigen::VectorXd anchor(p);

    auto pull = [&](Eigen::Index i, Eigen::Index j, double rate, double lambda) {
      double dy2 = 0.0;
      for (int r = 0; r < p; ++r) {
        const double d = y(r, j) - anchor[r];
        dy2 += d * d;
      }
      const double dy = std::sqrt(dy2);
      if (dy > lambda || dy == 0.0) return;
      const double step = rate * (dx(i, j) - dy) / dy;
      for (int r = 0; r < p; ++r) y(r, j) += step * (y(r, j) - anchor[r]);
    };

    const int epochs = config.epochs;
    for (int e = 0; e < epochs; ++e) {
      const double t = epochs == 1 ? 0.0 : static_cast<double>(e) / (epochs - 1);
      const double rate = config.initial_rate * std::pow(config.final_rate / config.initial_rate, t);
      const double lambda = lambda0 * std::pow(lambda_f / lambda0, t);
      std::shuffle(order.begin(), order.end(), rng);
      for (const Eigen::Index i : order) {
        anchor = y.col(i);
        if (partners == 0) {
          for (Eigen::Index j = 0; j < k; ++j) {
            if (j != i) pull(i, j, rate, lambda);
          }
        } else {
          for (std::size_t n = 0; n < partners; ++n) {
            const Eigen::Index j = pick(rng);
            if (j != i) pull(i, j, rate, lambda);
          }
        }
      }
    }
  }

  CcaProjection out{std::move(y), 0.0};
  out.err = residual_from_distances(dx, out.y);
  return out;
}

std::optional<DimensionEstimate> estimate_dimension(std::span<const ErrPoint> err_curve,
                                                    double err_floor) {
  if (err_curve.size() < 2) throw ConfigError("err_curve", "needs Err(0) and at least Err(1)");
  for (std::size_t i = 0; i < err_curve.size(); ++i) {
    if (err_curve[i].p != static_cast<int>(i)) {
      throw ConfigError("err_curve", "dimensions must be consecutive from 0");
    }
    if (!std::isfinite(err_curve[i].err) || err_curve[i].err < 0.0) {
      throw ConfigError("err_curve", "Err(" + std::to_string(i) + ") must be finite and >= 0");
    }
  }
  DimensionEstimate est{1, {err_curve.begin(), err_curve.end()}};
  if (err_curve[0].err == 0.0) return std::nullopt;

  const double floor = err_floor * err_curve[0].err;
  double best = -1.0;
  for (std::size_t i = 1; i < err_curve.size(); ++i) {
    const double prev = std::max(err_curve[i - 1].err, floor);
    const double cur = std::max(err_curve[i].err, floor);
    if (cur == 0.0) {
      est.p_star = static_cast<int>(i);
      return est;
    }
    const double ratio = prev / cur;
    if (ratio > best) {
      best = ratio;
      est.p_star = static_cast<int>(i);
    }
  }
  return est;
}

ProjectedInvariance invariance_from_projection(const ExplorationBatch& batch,
                                               const CcaProjection& projection,
                                               const Thresholds& thresholds) {
  if (projection.y.cols() != batch.d_m.cols()) {
    throw InsufficientSamplesError("projection and motor samples have different sample counts");
  }
  if (projection.y.rows() < 1) throw DegenerateDirectionError("empty projection");
  const Eigen::MatrixXd yc = projection.y.colwise() - projection.y.rowwise().mean();
  const Eigen::MatrixXd mc = batch.d_m.colwise() - batch.d_m.rowwise().mean();
  const SvdAnalysis a = analyze_matrix(yc, thresholds);

  const int p_star = static_cast<int>(projection.y.rows());
  ProjectedInvariance out;
  out.significant_count = a.significant_count;
  out.singular_values = a.singular_values;
  out.invariant_direction = motor_direction(mc, a, p_star + 1);
  if (a.significant_count >= 1) out.change_direction = motor_direction(mc, a, 1);
  return out;
}

NonlinearVerdict characterize_nonlinear(const ExplorationBatch& batch, const CcaConfig& config,
                                        Rng& rng, const Thresholds& thresholds) {
  config.validate();
  check_samples(batch.d_s);
  NonlinearVerdict v;
  const SvdAnalysis linear = analyze_matrix(batch.d_s, thresholds);
  v.singular_values = linear.singular_values;

  v.uniformity = projection_error(batch.d_s, Eigen::MatrixXd(0, batch.d_s.cols()));
  v.err_curve.push_back({0, v.uniformity});
  if (v.uniformity <= linear.tau_abs) {
    v.uniform = true;
    return v;
  }

  std::vector<CcaProjection> projections;
  for (std::size_t n = 1; n < config.p_list.size(); ++n) {
    projections.push_back(cca_project(batch.d_s, config.p_list[n], config, rng));
    v.err_curve.push_back({config.p_list[n], projections.back().err});
  }
  const auto est = estimate_dimension(v.err_curve, config.err_floor);
  if (!est) {
    v.uniform = true;
    return v;
  }
  v.p_star = est->p_star;
  if (est->p_star < batch.d_m.rows()) {
    try {
      const auto inv = invariance_from_projection(
          batch, projections[static_cast<std::size_t>(est->p_star - 1)], thresholds);
      v.invariant_direction = inv.invariant_direction;
      v.invariant_angle = inv.invariant_direction.angle;
      v.change_direction = inv.change_direction;
    } catch (const DegenerateDirectionError&) {
      // no usable invariant direction: left empty, reported as no invariance
    }
  }
  return v;
}

}  // namespace smc
