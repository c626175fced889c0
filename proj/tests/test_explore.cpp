#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>

#include <Eigen/SVD>

#include "oracles.hpp"
#include "smc/explore.hpp"
#include "smc/random.hpp"
#include "smc/svd_analysis.hpp"

using namespace smc;

namespace {

Retina linear_retina(std::uint64_t seed) {
  auto rng = make_stream(seed, "retina");
  return build_retina(25, 4.0, ExcitationMode::linear, rng);
}

}  // namespace

TEST_CASE("sample_motors edge cases") {
  auto rng = make_stream(1, "motors");
  CHECK(sample_motors(0, rng).empty());
  auto a = make_stream(2, "motors");
  auto b = make_stream(2, "motors");
  CHECK(sample_motors(3, a) == sample_motors(3, b));
}

TEST_CASE("motor amplitudes follow U(0, 3)") {
  auto rng = make_stream(3, "motors");
  const auto motors = sample_motors(10000, rng);
  double max_amp = 0, mean_amp = 0;
  for (const auto& m : motors) {
    const double amp = std::hypot(m.dx, m.dy);
    max_amp = std::max(max_amp, amp);
    mean_amp += amp / static_cast<double>(motors.size());
  }
  CHECK(max_amp <= 3.0);
  CHECK(std::abs(mean_amp - 1.5) <= 0.05);
}

TEST_CASE("uniform inputs produce an all-zero d_s") {
  const auto r = linear_retina(4);
  auto rng = make_stream(4, "motors");
  const auto batch = collect_variations(r, Uniform{0.6}, sample_motors(100, rng));
  CHECK(batch.d_s.cwiseAbs().maxCoeff() == 0.0);
  CHECK(batch.d_m.rows() == 2);
  CHECK(batch.d_s.cols() == 100);
}

TEST_CASE("a zero motor command has an exactly zero column") {
  const auto r = linear_retina(5);
  std::vector<MotorCommand> motors{{1, 0.5}, {0, 0}, {-2, 1}};
  const auto batch = collect_variations(r, LinearGradient{0.05, 0.02, 0.5}, motors);
  CHECK(batch.d_s.col(1).cwiseAbs().maxCoeff() == 0.0);
  CHECK(batch.d_s.col(0).norm() > 0.0);
}

TEST_CASE("d_s equals the analytic Jacobian times d_m") {
  const auto r = linear_retina(6);
  auto rng = make_stream(6, "ensemble");
  auto mrng = make_stream(6, "motors");
  const auto motors = sample_motors(200, mrng);
  for (const auto& in : sample_linear_ensemble(30, rng)) {
    const auto batch = collect_variations(r, in, motors);
    const Eigen::MatrixXd want = oracle::analytic_jacobian(r, std::get<LinearGradient>(in)) * batch.d_m;
    CHECK((batch.d_s - want).cwiseAbs().maxCoeff() <= 1e-10);
  }
}

TEST_CASE("permuting motors permutes columns") {
  const auto r = linear_retina(7);
  auto mrng = make_stream(7, "motors");
  auto motors = sample_motors(50, mrng);
  const VisualInput in = TanhEdge{0.1, -0.05, 0.3, 4, 0.2};
  const auto a = collect_variations(r, in, motors);
  std::reverse(motors.begin(), motors.end());
  const auto b = collect_variations(r, in, motors);
  for (Eigen::Index k = 0; k < 50; ++k) CHECK(a.d_s.col(k) == b.d_s.col(49 - k));
}

TEST_CASE("linear retina on a gradient gives numerical rank <= 1") {
  const auto r = linear_retina(8);
  auto rng = make_stream(8, "ensemble");
  auto mrng = make_stream(8, "motors");
  for (const auto& in : sample_linear_ensemble(30, rng)) {
    const auto batch = collect_variations(r, in, sample_motors(20, mrng));
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(batch.d_s);
    const auto& sv = svd.singularValues();
    for (Eigen::Index i = 1; i < sv.size(); ++i) CHECK(sv(i) <= 1e-8 * sv(0));
  }
}

TEST_CASE("scaling every beta scales d_s") {
  const auto r = linear_retina(9);
  auto scaled = r.excitations();
  for (auto& f : scaled) f.beta *= 3.0;
  const auto r3 = r.with_excitations(scaled);
  auto mrng = make_stream(9, "motors");
  const auto motors = sample_motors(100, mrng);
  const VisualInput in = LinearGradient{0.03, -0.04, 0.45};
  const auto a = collect_variations(r, in, motors);
  const auto b = collect_variations(r3, in, motors);
  CHECK((b.d_s - 3.0 * a.d_s).norm() <= 1e-12 * b.d_s.norm());
}

TEST_CASE("batch CSV round-trip is exact") {
  const auto r = linear_retina(10);
  auto mrng = make_stream(10, "motors");
  const auto batch = collect_variations(r, TanhEdge{0.1, 0.1, 0.2, 3, 0}, sample_motors(40, mrng));
  const auto dir = std::filesystem::temp_directory_path() / "smc_test_batch_csv";
  std::filesystem::remove_all(dir);
  write_batch_csv(batch, dir);
  const auto back = read_batch_csv(dir);
  CHECK(back.d_m == batch.d_m);
  CHECK(back.d_s == batch.d_s);
  std::filesystem::remove_all(dir);
}
