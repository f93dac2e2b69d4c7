#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ref/reference.hpp"
#include "test_util.hpp"
#include "wptv/metrics.hpp"
#include "wptv/synth.hpp"

using namespace wptv;

namespace {
constexpr double kPi = std::numbers::pi;

SceneSpec ramp_spec(int rows, int cols, double range, double jump) {
  SceneSpec s;
  s.kind = SceneKind::ramp_with_vertical_jump;
  s.rows = rows;
  s.cols = cols;
  s.phase_range = range;
  s.jump_height = jump;
  return s;
}
}  // namespace

TEST_CASE("ramp scene: pure jump splits the grid into two plateaus") {
  const Field2D phi = generate_scene(ramp_spec(16, 16, 0.0, kPi));
  for (int i = 0; i < 16; ++i) {
    for (int j = 0; j < 16; ++j) {
      CHECK(phi(i, j) == (j >= 8 ? kPi : 0.0));
    }
  }
}

TEST_CASE("ramp scene: 6*pi range wraps into three fringes per column") {
  const Field2D phi = generate_scene(ramp_spec(64, 64, 6.0 * kPi, 0.0));
  const WrappedPhase psi = wrap(phi);
  for (int j = 0; j < 64; ++j) {
    int jumps = 0;
    for (int i = 0; i + 1 < 64; ++i) {
      if (std::fabs(psi.psi(i + 1, j) - psi.psi(i, j)) > kPi) ++jumps;
    }
    CHECK(jumps == 3);
  }
}

TEST_CASE("scenes are deterministic and respect the minimum size") {
  const SceneSpec spec = ramp_spec(32, 48, 5.0, 1.0);
  CHECK(testutil::bitwise_equal(generate_scene(spec), generate_scene(spec)));
  CHECK_THROWS_AS(generate_scene(ramp_spec(8, 32, 1.0, 0.0)), ContractError);
  CHECK_THROWS_AS(generate_scene(ramp_spec(32, 8, 1.0, 0.0)), ContractError);
}

TEST_CASE("gaussian peak tops out at the center with the requested range") {
  SceneSpec s;
  s.kind = SceneKind::gaussian_peak;
  s.rows = 33;
  s.cols = 33;
  s.phase_range = 2.0;
  const Field2D phi = generate_scene(s);
  CHECK(phi(16, 16) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(phi(0, 0) < phi(16, 16));
  CHECK(phi(0, 0) >= 0.0);
}

TEST_CASE("add_noise: a 300 dB target leaves the field unchanged to 1e-12") {
  SceneSpec s;
  s.kind = SceneKind::gaussian_peak;
  s.rows = 32;
  s.cols = 32;
  s.phase_range = 2.0;  // stays far from the branch cut
  const WrappedPhase clean = wrap(generate_scene(s));
  const auto [noisy, achieved] = add_noise(clean, NoiseSpec{300.0, 5});
  double num = 0.0, den = 0.0;
  for (int i = 0; i < 32; ++i) {
    for (int j = 0; j < 32; ++j) {
      num += std::pow(noisy.psi(i, j) - clean.psi(i, j), 2);
      den += std::pow(clean.psi(i, j), 2);
    }
  }
  CHECK(std::sqrt(num / den) < 1e-12);
  CHECK(achieved == doctest::Approx(300.0).epsilon(1e-9));
}

TEST_CASE("add_noise hits the paper's 43.34 dB target on a fringe scene") {
  const WrappedPhase clean =
      wrap(generate_scene(ramp_spec(64, 64, 6.0 * kPi, kPi)));
  const auto [noisy, achieved] = add_noise(clean, NoiseSpec{43.34, 9});
  CHECK(std::fabs(achieved - 43.34) < 0.1);   // the calibration contract
  CHECK(std::fabs(achieved - 43.34) < 1e-9);  // and in fact it is exact
}

TEST_CASE("add_noise: seeds move the sample but not the achieved SNR") {
  const WrappedPhase clean =
      wrap(generate_scene(ramp_spec(32, 32, 4.0 * kPi, 0.0)));
  const auto [n1, a1] = add_noise(clean, NoiseSpec{40.0, 1});
  const auto [n2, a2] = add_noise(clean, NoiseSpec{40.0, 2});
  CHECK_FALSE(testutil::bitwise_equal(n1.psi, n2.psi));
  CHECK(std::fabs(a1 - a2) < 1e-9);
  const auto [n1again, a1again] = add_noise(clean, NoiseSpec{40.0, 1});
  CHECK(testutil::bitwise_equal(n1.psi, n1again.psi));
}

TEST_CASE("add_noise calibrates across the experimental SNR range") {
  const WrappedPhase clean =
      wrap(generate_scene(ramp_spec(32, 32, 4.0 * kPi, kPi)));
  for (double target : {20.0, 40.0, 60.0, 80.0, 100.0}) {
    const auto [noisy, achieved] = add_noise(clean, NoiseSpec{target, 3});
    CHECK(std::fabs(achieved - target) <= 0.1);
  }
}

TEST_CASE("add_noise rejects an all-zero signal") {
  CHECK_THROWS_AS(add_noise(WrappedPhase{Field2D(16, 16, 0.0)}, NoiseSpec{}),
                  ContractError);
}

TEST_CASE("metrics: a perfect result scores MSE 0 and IQI 1") {
  const WrappedPhase psi =
      wrap(generate_scene(ramp_spec(16, 16, 3.0, 0.5)));
  const PhasePair reference = decompose(psi);
  const MetricsRecord rec = compute_metrics(reference, reference, psi);
  CHECK(rec.mse_real == 0.0);
  CHECK(rec.mse_im == 0.0);
  CHECK(rec.iqi_real == 1.0);
  CHECK(rec.iqi_im == 1.0);
  CHECK(rec.pyth_mean <= 1e-14);
}

TEST_CASE("metrics: the zero pair scores IQI exactly 0") {
  const WrappedPhase psi = wrap(generate_scene(ramp_spec(16, 16, 3.0, 0.5)));
  const PhasePair reference = decompose(psi);
  const PhasePair zero(Field2D(16, 16, 0.0), Field2D(16, 16, 0.0));
  const MetricsRecord rec = compute_metrics(zero, reference, psi);
  CHECK(rec.iqi_real == 0.0);
  CHECK(rec.iqi_im == 0.0);
}

TEST_CASE("metrics match the scalar oracle on random pairs") {
  const PhasePair result = testutil::random_pair(4, 4, 201, -1.0, 1.0);
  const PhasePair reference = testutil::random_pair(4, 4, 301, -1.0, 1.0);
  const WrappedPhase psi = wrap(testutil::random_field(4, 4, 401, -3.0, 3.0));
  const MetricsRecord rec = compute_metrics(result, reference, psi);
  CHECK(testutil::rel_diff(rec.mse_real,
                           ref::mse(result.u_real, reference.u_real)) < 1e-13);
  CHECK(testutil::rel_diff(rec.mse_im,
                           ref::mse(result.u_im, reference.u_im)) < 1e-13);
  CHECK(testutil::rel_diff(rec.iqi_real,
                           ref::iqi(result.u_real, reference.u_real)) < 1e-13);
  CHECK(testutil::rel_diff(rec.iqi_im,
                           ref::iqi(result.u_im, reference.u_im)) < 1e-13);
}

TEST_CASE("metrics: MSE is symmetric, IQI is not") {
  const PhasePair a = testutil::random_pair(5, 5, 501, 0.2, 1.0);
  Field2D doubled_re = a.u_real;
  Field2D doubled_im = a.u_im;
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) {
      doubled_re(i, j) *= 2.0;
      doubled_im(i, j) *= 2.0;
    }
  }
  const PhasePair b(doubled_re, doubled_im);
  CHECK(ref::mse(a.u_real, b.u_real) == ref::mse(b.u_real, a.u_real));
  // result twice the reference: error energy equals reference energy
  CHECK(ref::iqi(b.u_real, a.u_real) == doctest::Approx(0.0).epsilon(1e-12));
  // reference twice the result: error energy is a quarter of it
  CHECK(ref::iqi(a.u_real, b.u_real) == doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("metrics recover the calibrated SNR from the noisy phase") {
  const WrappedPhase clean =
      wrap(generate_scene(ramp_spec(64, 64, 6.0 * kPi, kPi)));
  const auto [noisy, achieved] = add_noise(clean, NoiseSpec{43.34, 17});
  const MetricsRecord rec =
      compute_metrics(decompose(noisy), decompose(clean), noisy);
  CHECK(rec.snr_db == doctest::Approx(achieved).epsilon(1e-6));
}

TEST_CASE("metrics reject mismatched shapes and zero reference channels") {
  const PhasePair small = testutil::random_pair(4, 4, 601, -1.0, 1.0);
  const PhasePair big = testutil::random_pair(5, 5, 602, -1.0, 1.0);
  const WrappedPhase psi = wrap(testutil::random_field(4, 4, 603, -1.0, 1.0));
  CHECK_THROWS_AS(compute_metrics(small, big, psi), ShapeError);
  const PhasePair zero_ref(Field2D(4, 4, 0.0), Field2D(4, 4, 1.0));
  CHECK_THROWS_AS(compute_metrics(small, zero_ref, psi), ContractError);
}
