#include "smc/explore.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

#include "smc/error.hpp"

namespace smc {
namespace {

void write_rows(const Eigen::MatrixXd& columns, const std::filesystem::path& file) {
  std::ofstream out(file);
  if (!out) throw IoError("cannot open " + file.string() + " for writing");
  char buf[32];
  for (Eigen::Index k = 0; k < columns.cols(); ++k) {
    for (Eigen::Index i = 0; i < columns.rows(); ++i) {
      std::snprintf(buf, sizeof(buf), "%.17g", columns(i, k));
      if (i) out << ',';
      out << buf;
    }
    out << '\n';
  }
  if (!out) throw IoError("write failed for " + file.string());
}

Eigen::MatrixXd read_rows(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw IoError("cannot open " + file.string());
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw IoError("ragged row in " + file.string());
    }
    rows.push_back(std::move(row));
  }
  const auto n = static_cast<Eigen::Index>(rows.empty() ? 0 : rows.front().size());
  Eigen::MatrixXd columns(n, static_cast<Eigen::Index>(rows.size()));
  for (std::size_t k = 0; k < rows.size(); ++k) {
    for (Eigen::Index i = 0; i < n; ++i) columns(i, static_cast<Eigen::Index>(k)) = rows[k][i];
  }
  return columns;
}

}  // namespace

std::vector<MotorCommand> sample_motors(std::size_t k, Rng& rng, double exploration_diameter) {
  std::vector<MotorCommand> out;
  out.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    const double theta = uniform(rng, 0.0, 2.0 * std::numbers::pi);
    const double amp = uniform(rng, 0.0, 0.5 * exploration_diameter);
    out.push_back({amp * std::cos(theta), amp * std::sin(theta)});
  }
  return out;
}

ExplorationBatch collect_variations(const Retina& retina, const VisualInput& input,
                                    std::span<const MotorCommand> motors) {
  const auto k = static_cast<Eigen::Index>(motors.size());
  const auto n_s = static_cast<Eigen::Index>(retina.n_cells());
  ExplorationBatch batch{Eigen::MatrixXd(2, k), Eigen::MatrixXd(n_s, k)};
  const Eigen::VectorXd reference = sense(retina, input, MotorCommand{}).s;
  for (Eigen::Index j = 0; j < k; ++j) {
    const auto& m = motors[static_cast<std::size_t>(j)];
    batch.d_m(0, j) = m.dx;
    batch.d_m(1, j) = m.dy;
    batch.d_s.col(j) = sense(retina, input, m).s - reference;
  }
  return batch;
}

void write_batch_csv(const ExplorationBatch& batch, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  write_rows(batch.d_m, dir / "d_m.csv");
  write_rows(batch.d_s, dir / "d_s.csv");
}

ExplorationBatch read_batch_csv(const std::filesystem::path& dir) {
  ExplorationBatch batch{read_rows(dir / "d_m.csv"), read_rows(dir / "d_s.csv")};
  if (batch.d_m.cols() != batch.d_s.cols()) {
    throw IoError("d_m.csv and d_s.csv have different sample counts");
  }
  return batch;
}

}  // namespace smc
