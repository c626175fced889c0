#pragma once

#include <optional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "smc/explore.hpp"

namespace smc {

/// Significance rule for singular values: sigma_i counts when
/// sigma_i > tau_abs and sigma_i > tau_rel * sigma_1. If tau_abs is unset it
/// defaults to abs_factor * ||M||_F of the decomposed matrix.
struct Thresholds {
  double tau_rel = 1e-6;
  std::optional<double> tau_abs;
  double abs_factor = 1e-9;

  double resolve_tau_abs(std::span<const double> singular_values) const;
};

int count_significant(std::span<const double> singular_values, double tau_rel, double tau_abs);
int count_significant(std::span<const double> singular_values, const Thresholds& thresholds);

/// Thin SVD D = L diag(sigma) R^T with the significance verdict.
struct SvdAnalysis {
  std::vector<double> singular_values;  // descending
  Eigen::MatrixXd left;                 // rows x r
  Eigen::MatrixXd right;                // cols x r
  int significant_count = 0;
  double tau_abs = 0.0;
};

/// Normalized motor direction, sign-canonicalized so that angle is in [0, pi).
struct MotorDirection {
  Eigen::Vector2d vector = Eigen::Vector2d::UnitX();
  double angle = 0.0;
};

/// Canonical representative of the line spanned by v. Throws
/// DegenerateDirectionError if v is (numerically) zero.
MotorDirection make_direction(const Eigen::Vector2d& v);

/// SVD of an arbitrary matrix. Throws InsufficientSamplesError if it has
/// fewer than two columns.
SvdAnalysis analyze_matrix(const Eigen::MatrixXd& m, const Thresholds& thresholds = {});

SvdAnalysis svd_of_batch(const ExplorationBatch& batch, const Thresholds& thresholds = {});

/// z_i = D_m R_i / ||D_m R_i|| with 1-based i.
///
/// For i <= significant_count, R_i is the i-th right singular vector. For
/// larger i, singular vectors of (numerically) null singular values are only
/// defined up to a rotation inside the orthogonal complement of the
/// significant ones; the representative used is the one whose image through
/// D_m is largest, i.e. the (i - r)-th left singular vector of
/// D_m (I - R_r R_r^T). In the exactly rank-deficient case that image is
/// collinear with every other choice, so the direction is the same.
MotorDirection motor_direction(const Eigen::MatrixXd& d_m, const SvdAnalysis& analysis, int i);

inline MotorDirection motor_direction(const ExplorationBatch& batch, const SvdAnalysis& analysis,
                                      int i) {
  return motor_direction(batch.d_m, analysis, i);
}

struct LinearVerdict {
  double uniformity = 0.0;      // sigma_1
  double edgeness_sigma = 0.0;  // sigma_2, 0 if absent
  int significant_count = 0;
  std::optional<double> invariant_angle;
  std::optional<MotorDirection> change_direction;     // z_1
  std::optional<MotorDirection> invariant_direction;  // z_2
  std::vector<double> singular_values;
};

/// 0 significant values: invariant to every motion. 1: one invariant motor
/// direction (z_2). 2: no invariance.
LinearVerdict characterize_linear(const ExplorationBatch& batch, const Thresholds& thresholds = {});

}  // namespace smc
