// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria (0 when everything passes).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <string>

#include "oracles.hpp"
#include "smc/cca.hpp"
#include "smc/experiment.hpp"
#include "smc/report_io.hpp"

using namespace smc;
namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kSeed = 20160501;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), f, args...);
  return buf;
}

RunConfig suite_config(int experiment, std::size_t n) {
  RunConfig c;
  c.experiment = experiment;
  c.n_inputs = n;
  c.k_motors = 500;
  c.master_seed = kSeed;
  c.dump_batches = n;  // keep every batch in memory for the property checks
  c.plot_samples = 0;
  return c;
}

struct Suites {
  RunReport linear;
  RunReport nonlinear;
};

Suites& suites() {
  static Suites s{execute_experiment(suite_config(1, 200)), execute_experiment(suite_config(2, 100))};
  return s;
}

double slope(const VisualInput& in) {
  const auto g = gradient_of(in);
  return std::hypot(g.a, g.b);
}

Outcome criterion1() {
  const auto& r = suites().linear;
  int eligible = 0, ok = 0;
  double worst_ratio = 0;
  for (const auto& c : r.characterizations) {
    const double ratio = c.edgeness_sigma.value_or(0.0) / c.uniformity;
    if (slope(r.inputs[c.input_id]) < 1e-3) continue;
    ++eligible;
    worst_ratio = std::max(worst_ratio, ratio);
    ok += c.significant_count == 1 && ratio <= 1e-8;
  }
  return {ok == eligible && eligible > 0 && r.elapsed_seconds <= 10.0,
          fmt("%d/%d inputs with one significant value, max sigma2/sigma1 %.2e, %.2f s", ok, eligible,
              worst_ratio, r.elapsed_seconds)};
}

Outcome criterion2() {
  const auto& r = suites().linear;
  int eligible = 0, ok = 0;
  double worst = 0;
  for (const auto& c : r.characterizations) {
    const auto g = gradient_of(r.inputs[c.input_id]);
    if (std::hypot(g.a, g.b) < 1e-3) continue;
    ++eligible;
    if (!c.invariant_angle) continue;
    const double err = oracle::deg(oracle::line_angle_error(*c.invariant_angle, oracle::invariant_angle(g.a, g.b)));
    worst = std::max(worst, err);
    ok += err <= 1.0;
  }
  return {ok == eligible && eligible > 0, fmt("%d/%d within 1 deg, worst %.2e deg", ok, eligible, worst)};
}

Outcome criterion3() {
  auto rr = make_stream(kSeed, "retina");
  auto mr = make_stream(kSeed, "motors", 999);
  const auto retina = build_retina(25, 4.0, ExcitationMode::linear, rr);
  const auto motors = sample_motors(500, mr);
  const double theta = 0.6;
  std::vector<double> per_slope;
  for (int j = 1; j <= 10; ++j) {
    const double g = 0.003 * j;
    const LinearGradient in{g * std::cos(theta), g * std::sin(theta), 0.5};
    per_slope.push_back(characterize_linear(collect_variations(retina, in, motors)).uniformity / g);
  }
  double dev = 0;
  for (double v : per_slope) dev = std::max(dev, std::abs(v / per_slope.front() - 1.0));
  return {dev <= 1e-6, fmt("max relative deviation of sigma1/g over 10 slopes %.2e", dev)};
}

Outcome criterion4() {
  const auto& r = suites().nonlinear;
  int ones = 0;
  for (const auto& c : r.characterizations) ones += c.p_star == 1;
  const int n = static_cast<int>(r.characterizations.size());
  return {ones >= (95 * n + 99) / 100 && r.elapsed_seconds <= 600.0,
          fmt("p*=1 for %d/%d inputs, %.1f s", ones, n, r.elapsed_seconds)};
}

Outcome criterion5() {
  const auto& r = suites().nonlinear;
  int ok = 0;
  double worst = 0;
  for (const auto& c : r.characterizations) {
    if (!c.invariant_angle) continue;
    const auto g = gradient_of(r.inputs[c.input_id]);
    const double err = oracle::deg(oracle::line_angle_error(*c.invariant_angle, oracle::invariant_angle(g.a, g.b)));
    ok += err <= 10.0;
    if (err <= 10.0) worst = std::max(worst, err);
  }
  const int n = static_cast<int>(r.characterizations.size());
  return {ok >= (90 * n + 99) / 100,
          fmt("%d/%d within 10 deg (worst passing %.2f deg)", ok, n, worst)};
}

Outcome criterion6() {
  double worst = 0;
  int batches = 0;
  for (const auto* r : {&suites().linear, &suites().nonlinear}) {
    for (const auto& [id, batch] : r->batches) {
      const double err0 = projection_error(batch.d_s, Eigen::MatrixXd(0, batch.k()));
      const double want = oracle::rms_pairwise_distance(batch.d_s);
      worst = std::max(worst, std::abs(err0 - want) / want);
      ++batches;
    }
  }
  const auto& r = suites().nonlinear;
  auto mr = make_stream(kSeed, "motors", 12345);
  const auto uniform = collect_variations(r.retinas.front(), Uniform{0.5}, sample_motors(500, mr));
  const double u0 = projection_error(uniform.d_s, Eigen::MatrixXd(0, uniform.k()));
  return {worst <= 1e-10 && u0 <= 1e-10,
          fmt("%d batches, max relative deviation %.2e; uniform Err(0) = %.1e", batches, worst, u0)};
}

Outcome criterion7() {
  const auto& r = suites().linear;
  CharacterizeOptions opts;
  opts.cca = r.config.cca;
  int ones = 0, agree = 0, tried = 0;
  double worst = 0;
  for (const auto& [id, batch] : r.batches) {
    if (tried == 20) break;
    ++tried;
    const auto& lin = r.characterizations[id];
    auto rng = make_stream(kSeed, "cca", id);
    const auto nl = characterize_batch(id, batch, Regime::nonlinear, opts, rng);
    if (nl.p_star != 1) continue;
    ++ones;
    if (!nl.invariant_angle || !lin.invariant_angle) continue;
    const double err = oracle::deg(oracle::line_angle_error(*nl.invariant_angle, *lin.invariant_angle));
    worst = std::max(worst, err);
    agree += err <= 2.0;
  }
  return {ones >= 19 && agree == ones,
          fmt("p*=1 for %d/%d batches, %d/%d of those within 2 deg (worst %.2e deg)", ones, tried, agree, ones,
              worst)};
}

Outcome criterion8() {
  double rec = 0, ortho = 0;
  int batches = 0, linear_max_count = 0;
  for (const auto* r : {&suites().linear, &suites().nonlinear}) {
    for (const auto& [id, batch] : r->batches) {
      const auto a = svd_of_batch(batch, r->config.thresholds);
      const auto n = static_cast<Eigen::Index>(a.singular_values.size());
      const Eigen::VectorXd sv = Eigen::Map<const Eigen::VectorXd>(a.singular_values.data(), n);
      const Eigen::MatrixXd id_n = Eigen::MatrixXd::Identity(n, n);
      const double scale = batch.d_s.norm();
      if (scale > 0) rec = std::max(rec, (a.left * sv.asDiagonal() * a.right.transpose() - batch.d_s).norm() / scale);
      ortho = std::max(ortho, (a.right.transpose() * a.right - id_n).cwiseAbs().maxCoeff());
      ortho = std::max(ortho, (a.left.transpose() * a.left - id_n).cwiseAbs().maxCoeff());
      if (r == &suites().linear) linear_max_count = std::max(linear_max_count, a.significant_count);
      ++batches;
    }
  }
  return {rec <= 1e-10 && ortho <= 1e-10 && linear_max_count <= 2,
          fmt("%d batches: reconstruction %.2e, orthonormality %.2e, max count on linear batches %d", batches, rec,
              ortho, linear_max_count)};
}

std::map<std::string, std::string> outputs(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    const auto ext = e.path().extension();
    if (ext == ".csv" || ext == ".svg") out[fs::relative(e.path(), dir).string()] = read_text_file(e.path());
  }
  return out;
}

Outcome criterion9() {
  const auto root = fs::temp_directory_path() / "smc_acceptance_determinism";
  fs::remove_all(root);
  int files = 0;
  bool same = true;
  for (int experiment : {1, 2}) {
    RunConfig c;
    c.experiment = experiment;
    c.n_inputs = experiment == 1 ? 40 : 8;
    c.k_motors = 200;
    c.master_seed = kSeed;
    c.dump_batches = 2;
    c.threads = 1;
    c.output_dir = root / fmt("e%d_serial_a", experiment);
    run_experiment(c);
    c.output_dir = root / fmt("e%d_serial_b", experiment);
    run_experiment(c);
    c.threads = 4;
    c.output_dir = root / fmt("e%d_parallel", experiment);
    run_experiment(c);
    const auto a = outputs(root / fmt("e%d_serial_a", experiment));
    same = same && a == outputs(root / fmt("e%d_serial_b", experiment)) &&
           a == outputs(root / fmt("e%d_parallel", experiment));
    files += static_cast<int>(a.size());
  }
  fs::remove_all(root);
  return {same && files > 0, fmt("%d CSV/SVG files compared across rerun and 1 vs 4 threads", files)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"experiment 1 significance", criterion1},   {"linear direction recovery", criterion2},
      {"sigma1 proportional to slope", criterion3}, {"experiment 2 dimension", criterion4},
      {"nonlinear direction recovery", criterion5}, {"Err(0) uniformity", criterion6},
      {"linear vs nonlinear consistency", criterion7}, {"SVD numerical properties", criterion8},
      {"determinism", criterion9},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("[%s] %zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
  }
  return failed;
}
