#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Core>
#include <nlohmann/json.hpp>

#include "smc/explore.hpp"
#include "smc/random.hpp"
#include "smc/svd_analysis.hpp"

namespace smc {

/// Curvilinear Component Analysis settings.
///
/// Stress E = sum_{j<k} (dX_jk - dY_jk)^2 F(dY_jk, lambda) with the step
/// neighborhood F(d, lambda) = [d <= lambda]. Each epoch visits every point
/// once in random order and pulls all other points toward their target
/// distance from it. Rate and lambda decay geometrically across epochs.
struct CcaConfig {
  std::vector<int> p_list{0, 1, 2, 3};
  int epochs = 40;
  double initial_rate = 0.5;
  double final_rate = 0.01;
  /// Initial neighborhood radius; median pairwise distance of D_s if unset.
  std::optional<double> lambda0;
  /// lambda_f = lambda0 * final_lambda_ratio.
  double final_lambda_ratio = 0.1;
  /// Partner points visited per epoch (K random partners per anchor if set).
  std::optional<std::size_t> pair_subsample;
  /// Err(p) <= err_floor * Err(0) counts as non-significant in the p* rule.
  double err_floor = 0.05;

  void validate() const;  // throws ConfigError
};

nlohmann::json to_json(const CcaConfig& c);
CcaConfig cca_config_from_json(const nlohmann::json& j, CcaConfig base = {});

struct CcaProjection {
  Eigen::MatrixXd y;  // p x K
  double err = 0.0;
};

/// RMS pairwise-distance residual
///   sqrt( 2 / (K (K-1)) * sum_{j<k} (dX_jk - dY_jk)^2 ).
/// A zero-row `y` is the p = 0 projection: every dY is 0.
/// Throws InsufficientSamplesError when K < 2 or the column counts differ.
double projection_error(const Eigen::MatrixXd& d_s, const Eigen::MatrixXd& y);

/// CCA projection of the columns of d_s into p dimensions, started from the
/// top-p principal components. Throws ConfigError unless 1 <= p < N_s.
CcaProjection cca_project(const Eigen::MatrixXd& d_s, int p, const CcaConfig& config, Rng& rng);

/// Top-p principal-component coordinates of the columns of d_s (p x K).
Eigen::MatrixXd pca_project(const Eigen::MatrixXd& d_s, int p);

struct ErrPoint {
  int p = 0;
  double err = 0.0;
};

struct DimensionEstimate {
  int p_star = 1;
  std::vector<ErrPoint> err_curve;
};

/// p* = argmax_{p >= 1} Err(p-1) / Err(p), ties to the smaller p. The first
/// p with Err(p) = 0 < Err(p-1) wins outright. Returns nullopt when Err(0) = 0
/// (uniform input: no dimension can be estimated). Throws ConfigError if the
/// curve does not list p = 0, 1, ... consecutively or holds non-finite values.
///
/// With err_floor > 0, every Err(p) is first raised to err_floor * Err(0):
/// once the projection error is non-significant, further dimensions cannot
/// win the ratio on residual curvature or round-off alone.
std::optional<DimensionEstimate> estimate_dimension(std::span<const ErrPoint> err_curve,
                                                    double err_floor = 0.0);

struct ProjectedInvariance {
  MotorDirection invariant_direction;              // z_{p*+1}
  std::optional<MotorDirection> change_direction;  // z_1
  int significant_count = 0;                       // of the centered projection
  std::vector<double> singular_values;
};

/// SVD of the centered projection Y (p* x K) and the motor direction of the
/// first non-significant index p* + 1. Motor samples are centered as well so
/// that affine projections recover the invariant direction exactly.
ProjectedInvariance invariance_from_projection(const ExplorationBatch& batch,
                                               const CcaProjection& projection,
                                               const Thresholds& thresholds = {});

struct NonlinearVerdict {
  double uniformity = 0.0;  // Err(0)
  std::vector<ErrPoint> err_curve;
  std::optional<int> p_star;
  std::optional<double> invariant_angle;
  std::optional<MotorDirection> change_direction;
  std::optional<MotorDirection> invariant_direction;
  std::vector<double> singular_values;  // of D_s
  bool uniform = false;
};

NonlinearVerdict characterize_nonlinear(const ExplorationBatch& batch, const CcaConfig& config,
                                        Rng& rng, const Thresholds& thresholds = {});

}  // namespace smc
