#include "wptv/metrics.hpp"

#include <cmath>
#include <limits>

#include "reduce.hpp"

namespace wptv {

namespace {

inline double sq(double x) { return x * x; }

struct ChannelStats {
  double err_energy;
  double ref_energy;
};

ChannelStats channel_stats(const Field2D& result, const Field2D& reference) {
  const int m = result.rows();
  const int n = result.cols();
  const auto sums = detail::sum_rows_multi<2>(m, [&](int i) {
    std::array<double, 2> acc{};
    for (int j = 0; j < n; ++j) {
      acc[0] += sq(reference(i, j) - result(i, j));
      acc[1] += sq(reference(i, j));
    }
    return acc;
  });
  return ChannelStats{sums[0], sums[1]};
}

}  // namespace

MetricsRecord compute_metrics(const PhasePair& result,
                              const PhasePair& reference,
                              const WrappedPhase& noisy) {
  if (!result.same_shape(reference) ||
      !result.u_real.same_shape(noisy.psi)) {
    throw ShapeError("compute_metrics: shapes differ");
  }
  const int m = result.rows();
  const int n = result.cols();
  const double pixels = static_cast<double>(m) * static_cast<double>(n);

  const ChannelStats real_stats = channel_stats(result.u_real, reference.u_real);
  const ChannelStats im_stats = channel_stats(result.u_im, reference.u_im);
  if (real_stats.ref_energy == 0.0 || im_stats.ref_energy == 0.0) {
    throw ContractError("compute_metrics: all-zero reference channel, IQI undefined");
  }

  MetricsRecord rec;
  rec.mse_real = real_stats.err_energy / pixels;
  rec.mse_im = im_stats.err_energy / pixels;
  rec.iqi_real = 1.0 - real_stats.err_energy / real_stats.ref_energy;
  rec.iqi_im = 1.0 - im_stats.err_energy / im_stats.ref_energy;

  const Field2D dev = pythagorean_deviation(result);
  double dev_sum = 0.0;
  double dev_max = 0.0;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      dev_sum += dev(i, j);
      dev_max = std::max(dev_max, dev(i, j));
    }
  }
  rec.pyth_mean = dev_sum / pixels;
  rec.pyth_max = dev_max;

  // Effective noise as the wrapped difference, so re-wrapping of psi + eta
  // across the branch cut does not inflate it.
  const WrappedPhase psi_ref = reconstruct(reference);
  const auto snr_sums = detail::sum_rows_multi<2>(m, [&](int i) {
    std::array<double, 2> acc{};
    for (int j = 0; j < n; ++j) {
      const double d = noisy.psi(i, j) - psi_ref.psi(i, j);
      const double wrapped = std::atan2(std::sin(d), std::cos(d));
      acc[0] += sq(psi_ref.psi(i, j));
      acc[1] += sq(wrapped);
    }
    return acc;
  });
  rec.snr_db = snr_sums[1] == 0.0
                   ? std::numeric_limits<double>::infinity()
                   : 10.0 * std::log10(snr_sums[0] / snr_sums[1]);
  return rec;
}

}  // namespace wptv
