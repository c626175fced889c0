#include "smc/svd_analysis.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/SVD>

#include "smc/error.hpp"

namespace smc {

double Thresholds::resolve_tau_abs(std::span<const double> singular_values) const {
  if (tau_abs) return *tau_abs;
  double sq = 0.0;
  for (double s : singular_values) sq += s * s;
  return abs_factor * std::sqrt(sq);
}

int count_significant(std::span<const double> singular_values, double tau_rel, double tau_abs) {
  if (singular_values.empty()) return 0;
  const double rel = tau_rel * singular_values.front();
  int n = 0;
  for (double s : singular_values) {
    if (s > tau_abs && s > rel) ++n;
  }
  return n;
}

int count_significant(std::span<const double> singular_values, const Thresholds& thresholds) {
  return count_significant(singular_values, thresholds.tau_rel,
                           thresholds.resolve_tau_abs(singular_values));
}

MotorDirection make_direction(const Eigen::Vector2d& v) {
  const double n = v.norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw DegenerateDirectionError("zero motor direction");
  Eigen::Vector2d u = v / n;
  if (u.y() < 0.0 || (u.y() == 0.0 && u.x() < 0.0)) u = -u;
  if (u.y() == 0.0) u = Eigen::Vector2d::UnitX();
  double angle = std::atan2(u.y(), u.x());
  if (angle >= std::numbers::pi) angle = 0.0;
  return {u, angle};
}

SvdAnalysis analyze_matrix(const Eigen::MatrixXd& m, const Thresholds& thresholds) {
  if (m.cols() < 2) {
    throw InsufficientSamplesError("SVD needs at least 2 samples, got " + std::to_string(m.cols()));
  }
  SvdAnalysis out;
  if (m.rows() == 0) return out;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  out.singular_values.assign(sv.data(), sv.data() + sv.size());
  out.left = svd.matrixU();
  out.right = svd.matrixV();
  out.tau_abs = thresholds.resolve_tau_abs(out.singular_values);
  out.significant_count = count_significant(out.singular_values, thresholds.tau_rel, out.tau_abs);
  return out;
}

SvdAnalysis svd_of_batch(const ExplorationBatch& batch, const Thresholds& thresholds) {
  if (batch.d_m.cols() != batch.d_s.cols()) {
    throw InsufficientSamplesError("d_m and d_s column counts differ");
  }
  return analyze_matrix(batch.d_s, thresholds);
}

MotorDirection motor_direction(const Eigen::MatrixXd& d_m, const SvdAnalysis& analysis, int i) {
  if (d_m.rows() != 2) throw DegenerateDirectionError("motor directions need a 2-D motor space");
  if (i < 1 || i > d_m.cols()) {
    throw DegenerateDirectionError("direction index " + std::to_string(i) + " out of range");
  }
  const double floor = 1e-12 * d_m.norm();
  const int r = std::min<int>(analysis.significant_count, static_cast<int>(analysis.right.cols()));

  if (i <= r) {
    if (analysis.right.rows() != d_m.cols()) {
      throw DegenerateDirectionError("right singular vectors do not match D_m");
    }
    const Eigen::Vector2d z = d_m * analysis.right.col(i - 1);
    if (!(z.norm() > floor)) throw DegenerateDirectionError("D_m R_i vanishes");
    return make_direction(z);
  }

  Eigen::MatrixXd residual = d_m;
  if (r > 0) {
    const auto rr = analysis.right.leftCols(r);
    residual -= (d_m * rr) * rr.transpose();
  }
  const int slot = i - r;
  if (slot > residual.rows()) {
    throw DegenerateDirectionError("no motor direction left outside the significant subspace");
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(residual, Eigen::ComputeThinU);
  if (!(svd.singularValues()(slot - 1) > floor)) {
    throw DegenerateDirectionError("D_m R_i vanishes outside the significant subspace");
  }
  return make_direction(svd.matrixU().col(slot - 1));
}

LinearVerdict characterize_linear(const ExplorationBatch& batch, const Thresholds& thresholds) {
  const SvdAnalysis a = svd_of_batch(batch, thresholds);
  LinearVerdict v;
  v.singular_values = a.singular_values;
  v.uniformity = a.singular_values.empty() ? 0.0 : a.singular_values[0];
  v.edgeness_sigma = a.singular_values.size() > 1 ? a.singular_values[1] : 0.0;
  v.significant_count = a.significant_count;
  if (a.significant_count >= 1) v.change_direction = motor_direction(batch, a, 1);
  if (a.significant_count == 1) {
    v.invariant_direction = motor_direction(batch, a, 2);
    v.invariant_angle = v.invariant_direction->angle;
  }
  return v;
}

}  // namespace smc
