#pragma once

#include "wptv/phase.hpp"

namespace wptv {

/// Quality figures for one restored pair against a reference pair.
struct MetricsRecord {
  double mse_real = 0.0;
  double mse_im = 0.0;
  double iqi_real = 0.0;  // 1 - error energy / reference energy, in [-1, 1]
  double iqi_im = 0.0;
  double snr_db = 0.0;    // of the noisy wrapped phase against the reference
  double pyth_mean = 0.0;
  double pyth_max = 0.0;
};

/// Per-channel MSE and IQI of `result` against `reference` (the reference is
/// the IQI denominator — the index is not symmetric), Pythagorean-deviation
/// statistics of `result`, and the SNR of `noisy` recomputed against the
/// reference wrapped phase. Throws on shape mismatches and on an all-zero
/// reference channel (IQI undefined).
MetricsRecord compute_metrics(const PhasePair& result,
                              const PhasePair& reference,
                              const WrappedPhase& noisy);

}  // namespace wptv
