#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ref/reference.hpp"
#include "test_util.hpp"
#include "wptv/solvers.hpp"
#include "wptv/synth.hpp"

using namespace wptv;
using testutil::random_field;

namespace {

const ModelParams kPaperParams{2.5, 2.5, 5.0, 1e-3};

// A small noisy fringe problem shared by several cases.
PhasePair noisy_problem(int rows, int cols, double snr_db,
                        std::uint64_t seed) {
  SceneSpec scene;
  scene.rows = rows;
  scene.cols = cols;
  scene.phase_range = 4.0 * std::numbers::pi;
  scene.jump_height = std::numbers::pi;
  const WrappedPhase clean = wrap(generate_scene(scene));
  const auto [noisy, achieved] = add_noise(clean, NoiseSpec{snr_db, seed});
  return decompose(noisy);
}

SolveConfig paper_config() {
  SolveConfig config;
  config.params = kPaperParams;
  config.epsilon = 1e-7;
  config.max_outer = 1000;
  return config;
}

}  // namespace

TEST_CASE("SolveConfig validation") {
  SolveConfig c = paper_config();
  c.epsilon = 0.0;
  CHECK_THROWS_AS(c.validate(), ContractError);
  c = paper_config();
  c.max_outer = 0;
  CHECK_THROWS_AS(c.validate(), ContractError);
  c = paper_config();
  c.gs_sweeps_per_outer = 0;
  CHECK_THROWS_AS(c.validate(), ContractError);
}

TEST_CASE("fixed point: constant unit-circle data is already a fixed point") {
  const PhasePair data = decompose(WrappedPhase{Field2D(16, 16, 0.7)});
  SolveConfig config = paper_config();
  config.record_energy = true;
  const auto [out, report] = fixed_point_denoise(data, config);
  CHECK(report.converged);
  CHECK(report.outer_iterations <= 2);
  CHECK(testutil::max_abs_diff(out.u_real, data.u_real) < 1e-10);
  CHECK(testutil::max_abs_diff(out.u_im, data.u_im) < 1e-10);
  CHECK(report.relative_changes.size() ==
        static_cast<std::size_t>(report.outer_iterations));
  CHECK(report.relative_changes.back() < config.epsilon);
}

TEST_CASE("fixed point: monotone energy descent on a noisy problem") {
  const PhasePair data = noisy_problem(24, 24, 30.0, 7);
  SolveConfig config = paper_config();
  config.record_energy = true;
  const auto [out, report] = fixed_point_denoise(data, config);
  CHECK(report.converged);
  REQUIRE(report.energies.size() ==
          static_cast<std::size_t>(report.outer_iterations) + 1);
  for (std::size_t k = 0; k + 1 < report.energies.size(); ++k) {
    CHECK(report.energies[k + 1].total <=
          report.energies[k].total * (1.0 + 1e-10));
  }
}

TEST_CASE("fixed point: gradient norm collapses at the fixed point") {
  const PhasePair data = noisy_problem(24, 24, 35.0, 11);
  const SolveConfig config = paper_config();
  const auto [out, report] = fixed_point_denoise(data, config);
  REQUIRE(report.converged);
  auto norm = [&](const PhasePair& g) {
    double acc = 0.0;
    for (int i = 0; i < g.rows(); ++i) {
      for (int j = 0; j < g.cols(); ++j) {
        acc += g.u_real(i, j) * g.u_real(i, j) + g.u_im(i, j) * g.u_im(i, j);
      }
    }
    return std::sqrt(acc);
  };
  const double g0 = norm(gradient(data, data, kPaperParams));
  const double g_out = norm(gradient(out, data, kPaperParams));
  CHECK(g_out <= 100.0 * config.epsilon * g0);
}

TEST_CASE("fixed point: deterministic reruns are bit identical") {
  const PhasePair data = noisy_problem(20, 28, 30.0, 13);
  SolveConfig config = paper_config();
  config.record_energy = true;
  const auto [out1, report1] = fixed_point_denoise(data, config);
  const auto [out2, report2] = fixed_point_denoise(data, config);
  CHECK(testutil::bitwise_equal(out1.u_real, out2.u_real));
  CHECK(testutil::bitwise_equal(out1.u_im, out2.u_im));
  CHECK(report1.relative_changes == report2.relative_changes);
  CHECK(report1.outer_iterations == report2.outer_iterations);
}

TEST_CASE("fixed point: combined sweep equals the alternating two-channel form") {
  const PhasePair data = decompose(wrap(random_field(12, 12, 19, -3.0, 3.0)));
  SolveConfig config = paper_config();
  config.epsilon = 1e-300;  // never converge; run exactly max_outer iterations

  PhasePair expected = data;
  for (int outer = 1; outer <= 3; ++outer) {
    expected =
        ref::fixed_point_alternating_iteration(expected, data, kPaperParams);
    config.max_outer = outer;
    const auto [got, report] = fixed_point_denoise(data, config);
    CHECK(report.outer_iterations == outer);
    CHECK(testutil::bitwise_equal(got.u_real, expected.u_real));
    CHECK(testutil::bitwise_equal(got.u_im, expected.u_im));
  }
}

TEST_CASE("fixed point: dominance margin stays above min(lambda1, lambda2)") {
  const PhasePair data = noisy_problem(20, 20, 30.0, 23);
  SolveConfig config = paper_config();
  config.record_dominance = true;
  const auto [out, report] = fixed_point_denoise(data, config);
  REQUIRE(report.converged);
  REQUIRE(report.dominance_margins.size() ==
          static_cast<std::size_t>(report.outer_iterations));
  for (double margin : report.dominance_margins) {
    CHECK(margin >= 2.5 - 1e-9);
  }
}

TEST_CASE("fixed point: multiple inner sweeps are accepted and converge") {
  const PhasePair data = noisy_problem(20, 20, 30.0, 29);
  SolveConfig config = paper_config();
  config.gs_sweeps_per_outer = 3;
  const auto [out, report] = fixed_point_denoise(data, config);
  CHECK(report.converged);
}

TEST_CASE("gradient descent: constant unit-circle data stays fixed") {
  const PhasePair data = decompose(WrappedPhase{Field2D(16, 16, -1.1)});
  SolveConfig config = paper_config();
  const double tau = suggested_gd_step(data, kPaperParams);
  const auto [out, report] = gradient_descent_denoise(data, config, tau);
  CHECK(report.converged);
  CHECK(report.outer_iterations == 1);
  CHECK(testutil::max_abs_diff(out.u_real, data.u_real) < 1e-12);
}

TEST_CASE("gradient descent: iterates match the scalar update for 10 steps") {
  const ModelParams params{1.5, 1.5, 0.0, 0.1};
  const PhasePair data = decompose(wrap(random_field(4, 4, 31, -3.0, 3.0)));
  const double tau = 0.05;

  SolveConfig config;
  config.params = params;
  config.epsilon = 1e-300;
  PhasePair expected = data;
  for (int steps = 1; steps <= 10; ++steps) {
    expected = ref::gradient_descent_step(expected, data, params, tau);
    config.max_outer = steps;
    const auto [got, report] = gradient_descent_denoise(data, config, tau);
    CHECK(report.outer_iterations == steps);
    CHECK(testutil::max_abs_diff(got.u_real, expected.u_real) < 1e-13);
    CHECK(testutil::max_abs_diff(got.u_im, expected.u_im) < 1e-13);
  }
}

TEST_CASE("gradient descent: a reckless step diverges with a helpful error") {
  const PhasePair data = noisy_problem(16, 16, 30.0, 37);
  SolveConfig config = paper_config();
  config.max_outer = 100000;
  try {
    gradient_descent_denoise(data, config, 1e6);
    FAIL("expected DivergenceError");
  } catch (const DivergenceError& e) {
    CHECK(e.iteration() >= 1);
    CHECK(std::string(e.what()).find("tau") != std::string::npos);
    CHECK(e.partial_report().relative_changes.size() ==
          static_cast<std::size_t>(e.iteration()));
  }
  CHECK_THROWS_AS(gradient_descent_denoise(data, config, -1.0), ContractError);
}

TEST_CASE("strobel: linear filters preserve constants") {
  const PhasePair data(Field2D(8, 8, 0.25), Field2D(8, 8, -0.5));
  for (auto filter : {StrobelFilter::mean3, StrobelFilter::gaussian}) {
    const PhasePair out = strobel_denoise(data, filter, 1.2);
    CHECK(out.u_real(3, 3) == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(out.u_im(3, 3) == doctest::Approx(-0.5).epsilon(1e-14));
  }
}

TEST_CASE("strobel: mean3 turns an impulse into a 1/9 plateau") {
  Field2D re(16, 16, 0.0);
  re(8, 8) = 1.0;
  const PhasePair out =
      strobel_denoise(PhasePair(re, Field2D(16, 16, 0.0)), StrobelFilter::mean3);
  for (int i = 7; i <= 9; ++i) {
    for (int j = 7; j <= 9; ++j) {
      CHECK(out.u_real(i, j) == doctest::Approx(1.0 / 9.0).epsilon(1e-14));
    }
  }
  CHECK(out.u_real(8, 11) == 0.0);
  CHECK(out.u_real(5, 8) == 0.0);
}

TEST_CASE("strobel leaves the unit circle; the fixed point restores it") {
  const PhasePair data = noisy_problem(32, 32, 35.0, 41);
  const PhasePair strobel = strobel_denoise(data, StrobelFilter::mean3);
  const auto [fixed, report] = fixed_point_denoise(data, paper_config());
  REQUIRE(report.converged);
  auto mean_dev = [](const PhasePair& p) {
    const Field2D dev = pythagorean_deviation(p);
    double acc = 0.0;
    for (int i = 0; i < dev.rows(); ++i) {
      for (int j = 0; j < dev.cols(); ++j) acc += dev(i, j);
    }
    return acc / (dev.rows() * dev.cols());
  };
  CHECK(mean_dev(strobel) > mean_dev(fixed));
  // The filtered pair still reconstructs to a wrapped phase.
  CHECK_NOTHROW(reconstruct(strobel));
}
