#pragma once

// Independent reference computations used by the tests. Nothing here calls
// into the code paths it is used to check.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "smc/env.hpp"
#include "smc/sensor.hpp"

namespace smc::oracle {

/// Smallest distance between two angles taken as lines (mod pi), in radians.
inline double line_angle_error(double a, double b) {
  double d = std::fmod(std::abs(a - b), std::numbers::pi);
  return std::min(d, std::numbers::pi - d);
}

inline double deg(double rad) { return rad * 180.0 / std::numbers::pi; }

/// Analytic angle in [0, pi) of the motor direction (-b, a).
inline double invariant_angle(double a, double b) {
  double t = std::atan2(a, -b);
  if (t < 0) t += std::numbers::pi;
  if (t >= std::numbers::pi) t -= std::numbers::pi;
  return t;
}

/// Closed-form sensation of a linear-excitation cell on a gradient.
inline double linear_sensation(const Excitation& f, const CellPosition& c, const LinearGradient& g,
                               double dx, double dy) {
  return f.beta * (g.a * (c.x + dx) + g.b * (c.y + dy) + g.c) + f.gamma;
}

/// Jacobian of s w.r.t. (dx, dy) for a linear retina on a gradient:
/// row i is beta_i (a, b).
inline Eigen::MatrixXd analytic_jacobian(const Retina& r, const LinearGradient& g) {
  Eigen::MatrixXd a(static_cast<Eigen::Index>(r.n_cells()), 2);
  for (std::size_t i = 0; i < r.n_cells(); ++i) {
    a(static_cast<Eigen::Index>(i), 0) = r.excitations()[i].beta * g.a;
    a(static_cast<Eigen::Index>(i), 1) = r.excitations()[i].beta * g.b;
  }
  return a;
}

struct Range {
  double min = 0;
  double max = 0;
};

/// Min/max of the field over an n x n grid covering [-5,5]^2.
inline Range grid_scan(const VisualInput& in, int n = 101) {
  Range r{1e300, -1e300};
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double x = -5.0 + 10.0 * i / (n - 1);
      const double y = -5.0 + 10.0 * j / (n - 1);
      const double v = evaluate(in, x, y);
      r.min = std::min(r.min, v);
      r.max = std::max(r.max, v);
    }
  }
  return r;
}

/// RMS of all pairwise distances through the centroid identity
/// sum_{j<k} |x_j - x_k|^2 = K sum_j |x_j - mean|^2.
inline double rms_pairwise_distance(const Eigen::MatrixXd& x) {
  const double k = static_cast<double>(x.cols());
  const Eigen::VectorXd mean = x.rowwise().mean();
  const double spread = (x.colwise() - mean).squaredNorm();
  return std::sqrt(2.0 * spread / (k - 1.0));
}

/// Brute-force RMS residual between pairwise distances, p = 0 when y has no rows.
inline double brute_force_err(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y) {
  long double sum = 0;
  const auto k = x.cols();
  long count = 0;
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) {
      if (i == j) continue;
      const double dx = (x.col(i) - x.col(j)).norm();
      const double dy = y.rows() ? (y.col(i) - y.col(j)).norm() : 0.0;
      sum += (dx - dy) * (dx - dy);
      ++count;
    }
  }
  return std::sqrt(static_cast<double>(sum / count));
}

/// Average ranks (ties share the mean rank).
inline std::vector<double> ranks(const std::vector<double>& v) {
  std::vector<std::size_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return v[a] < v[b]; });
  std::vector<double> r(v.size());
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
    const double avg = 0.5 * static_cast<double>(i + j);
    for (std::size_t t = i; t <= j; ++t) r[idx[t]] = avg;
    i = j + 1;
  }
  return r;
}

inline double spearman(const std::vector<double>& a, const std::vector<double>& b) {
  const auto ra = ranks(a);
  const auto rb = ranks(b);
  const double n = static_cast<double>(a.size());
  const double ma = std::accumulate(ra.begin(), ra.end(), 0.0) / n;
  const double mb = std::accumulate(rb.begin(), rb.end(), 0.0) / n;
  double sab = 0, saa = 0, sbb = 0;
  for (std::size_t i = 0; i < ra.size(); ++i) {
    sab += (ra[i] - ma) * (rb[i] - mb);
    saa += (ra[i] - ma) * (ra[i] - ma);
    sbb += (rb[i] - mb) * (rb[i] - mb);
  }
  return sab / std::sqrt(saa * sbb);
}

/// Tag-balance check of an SVG/XML document (no DTD, no CDATA).
inline bool well_formed_xml(const std::string& doc) {
  std::vector<std::string> stack;
  std::size_t pos = 0;
  bool root_seen = false;
  while ((pos = doc.find('<', pos)) != std::string::npos) {
    const auto end = doc.find('>', pos);
    if (end == std::string::npos) return false;
    const std::string tag = doc.substr(pos + 1, end - pos - 1);
    pos = end + 1;
    if (tag.empty()) return false;
    if (tag[0] == '?' || tag[0] == '!') continue;
    if (tag[0] == '/') {
      const std::string name = tag.substr(1);
      if (stack.empty() || stack.back() != name) return false;
      stack.pop_back();
      continue;
    }
    const std::string name = tag.substr(0, tag.find_first_of(" \t\n/"));
    if (stack.empty()) {
      if (root_seen) return false;
      root_seen = true;
    }
    if (tag.back() != '/') stack.push_back(name);
  }
  return root_seen && stack.empty();
}

}  // namespace smc::oracle
