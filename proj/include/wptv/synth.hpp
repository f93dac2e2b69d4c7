#pragma once

#include <cstdint>
#include <utility>

#include "wptv/phase.hpp"

namespace wptv {

enum class SceneKind { ramp_with_vertical_jump, gaussian_peak };

/// Deterministic synthetic absolute-phase scene. Experiment scenes need at
/// least 16x16 pixels.
struct SceneSpec {
  SceneKind kind = SceneKind::ramp_with_vertical_jump;
  int rows = 128;
  int cols = 128;
  double phase_range = 0.0;   // peak-to-peak of phi before wrapping, radians
  double jump_height = 3.141592653589793;  // vertical discontinuity, radians
  std::uint64_t seed = 0;
};

/// Ground-truth absolute phase phi:
///   ramp_with_vertical_jump: phi(i,j) = phase_range * i/(rows-1)
///                                     + jump_height * [j >= cols/2]
///   gaussian_peak: phi = phase_range * exp(-(dist to center)^2 / (2 sigma^2))
///                  with sigma = min(rows, cols)/6.
Field2D generate_scene(const SceneSpec& spec);

struct NoiseSpec {
  double target_snr_db = 43.34;
  std::uint64_t seed = 0;
};

/// Adds i.i.d. zero-mean Gaussian noise to the wrapped phase, rescaled after
/// the draw so that 10*log10(sum psi^2 / sum eta^2) hits the target exactly
/// on the realized sample, then re-wraps the sum into (-pi, pi]. Returns the
/// noisy phase and the achieved SNR in dB. Deterministic in the seed.
std::pair<WrappedPhase, double> add_noise(const WrappedPhase& psi,
                                          const NoiseSpec& spec);

}  // namespace wptv
