#include "wptv/synth.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "reduce.hpp"

namespace wptv {

namespace {

constexpr double kPi = std::numbers::pi;

inline double sq(double x) { return x * x; }

// N(0,1) stream built from the exactly-specified mt19937_64 engine and
// Box-Muller, so the draws do not depend on the standard library's
// normal_distribution implementation.
class GaussianSampler {
 public:
  explicit GaussianSampler(std::uint64_t seed) : engine_(seed) {}

  double next() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = to_unit(engine_());  // (0, 1]; log stays finite
    const double u2 = to_unit(engine_());
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 2.0 * kPi * u2;
    spare_ = r * std::sin(t);
    have_spare_ = true;
    return r * std::cos(t);
  }

 private:
  static double to_unit(std::uint64_t x) {
    return static_cast<double>((x >> 11) + 1) * 0x1.0p-53;
  }

  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace

Field2D generate_scene(const SceneSpec& spec) {
  if (spec.rows < 16 || spec.cols < 16) {
    throw ContractError("generate_scene: experiment scenes need >= 16x16");
  }
  if (!std::isfinite(spec.phase_range) || !std::isfinite(spec.jump_height)) {
    throw ContractError("generate_scene: non-finite scene parameter");
  }
  const int m = spec.rows;
  const int n = spec.cols;
  Field2D phi(m, n);
  switch (spec.kind) {
    case SceneKind::ramp_with_vertical_jump: {
      const int jump_col = n / 2;
      for (int i = 0; i < m; ++i) {
        const double ramp = spec.phase_range * (static_cast<double>(i) / (m - 1));
        for (int j = 0; j < n; ++j) {
          phi(i, j) = ramp + (j >= jump_col ? spec.jump_height : 0.0);
        }
      }
      break;
    }
    case SceneKind::gaussian_peak: {
      const double ci = (m - 1) / 2.0;
      const double cj = (n - 1) / 2.0;
      const double sigma = std::min(m, n) / 6.0;
      for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) {
          const double d2 = sq(i - ci) + sq(j - cj);
          phi(i, j) = spec.phase_range * std::exp(-d2 / (2.0 * sigma * sigma));
        }
      }
      break;
    }
  }
  return phi;
}

std::pair<WrappedPhase, double> add_noise(const WrappedPhase& psi,
                                          const NoiseSpec& spec) {
  if (!std::isfinite(spec.target_snr_db)) {
    throw ContractError("add_noise: non-finite target SNR");
  }
  const int m = psi.rows();
  const int n = psi.cols();

  const double signal_power = detail::sum_rows(m, [&](int i) {
    double acc = 0.0;
    for (int j = 0; j < n; ++j) acc += sq(psi.psi(i, j));
    return acc;
  });
  if (signal_power == 0.0) {
    throw ContractError("add_noise: all-zero signal, cannot calibrate SNR");
  }

  // Draw first, then rescale the realized sample to hit the target exactly.
  Field2D eta(m, n);
  GaussianSampler sampler(spec.seed);
  double raw_power = 0.0;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      const double z = sampler.next();
      eta(i, j) = z;
      raw_power += z * z;
    }
  }
  const double target_ratio = std::pow(10.0, spec.target_snr_db / 10.0);
  const double scale = std::sqrt(signal_power / (target_ratio * raw_power));

  Field2D noisy(m, n);
  double noise_power = 0.0;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      const double e = scale * eta(i, j);
      noise_power += e * e;
      noisy(i, j) = psi.psi(i, j) + e;
    }
  }
  const double achieved = 10.0 * std::log10(signal_power / noise_power);
  return {wrap(noisy), achieved};
}

}  // namespace wptv
