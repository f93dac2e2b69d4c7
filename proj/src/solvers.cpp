#include "wptv/solvers.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "reduce.hpp"
#include "wptv/grid.hpp"

namespace wptv {

namespace {

inline double sq(double x) { return x * x; }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

// The four reciprocal regularized magnitudes 1/sqrt(|grad w|^2 + beta) of a
// channel, frozen once per outer iteration.
struct Diffusivities {
  Field2D e, w, n, s;
};

Diffusivities freeze_diffusivities(const Field2D& channel, double beta) {
  const GradMagnitudes g = grad_magnitudes(channel);
  const int m = channel.rows();
  const int n = channel.cols();
  Diffusivities d{Field2D(m, n), Field2D(m, n), Field2D(m, n), Field2D(m, n)};
#pragma omp parallel for schedule(static)
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      d.e(i, j) = 1.0 / std::sqrt(sq(g.g_e(i, j)) + beta);
      d.w(i, j) = 1.0 / std::sqrt(sq(g.g_w(i, j)) + beta);
      d.n(i, j) = 1.0 / std::sqrt(sq(g.g_n(i, j)) + beta);
      d.s(i, j) = 1.0 / std::sqrt(sq(g.g_s(i, j)) + beta);
    }
  }
  return d;
}

double joint_relative_change(const PhasePair& now, const PhasePair& before) {
  const int m = now.rows();
  const int n = now.cols();
  const auto sums = detail::sum_rows_multi<2>(m, [&](int i) {
    std::array<double, 2> acc{};
    for (int j = 0; j < n; ++j) {
      acc[0] += sq(now.u_real(i, j) - before.u_real(i, j)) +
                sq(now.u_im(i, j) - before.u_im(i, j));
      acc[1] += sq(before.u_real(i, j)) + sq(before.u_im(i, j));
    }
    return acc;
  });
  if (sums[1] == 0.0) {
    return sums[0] == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  }
  return std::sqrt(sums[0] / sums[1]);
}

bool pair_all_finite(const PhasePair& p) {
  return p.u_real.all_finite() && p.u_im.all_finite();
}

// One in-place lexicographic Gauss-Seidel sweep of the frozen linear system.
// West/south neighbors are read after their in-sweep update, east/north
// before theirs; replicate ghosts fold out-of-range reads onto the pixel's
// own pre-update value. Diffusivities and every coupling term stay at the
// frozen outer iterate, so the two channels never see each other's in-sweep
// values.
void gauss_seidel_sweep(PhasePair& u, const PhasePair& frozen,
                        const PhasePair& data, const Diffusivities& dre,
                        const Diffusivities& dim, const ModelParams& p) {
  const int m = u.rows();
  const int n = u.cols();
  Field2D& re = u.u_real;
  Field2D& im = u.u_im;
  for (int i = 0; i < m; ++i) {
    const int ie = i + 1 < m ? i + 1 : i;
    const int iw = i > 0 ? i - 1 : i;
    for (int j = 0; j < n; ++j) {
      const int jn = j + 1 < n ? j + 1 : j;
      const int js = j > 0 ? j - 1 : j;
      const double shift =
          2.0 * p.lambda3 *
          (sq(frozen.u_real(i, j)) + sq(frozen.u_im(i, j)));
      {
        const double ce = dre.e(i, j), cw = dre.w(i, j);
        const double cn = dre.n(i, j), cs = dre.s(i, j);
        const double num = ce * re(ie, j) + cw * re(iw, j) + cn * re(i, jn) +
                           cs * re(i, js) + p.lambda1 * data.u_real(i, j) +
                           2.0 * p.lambda3 * frozen.u_real(i, j);
        const double den = p.lambda1 + shift + ce + cw + cn + cs;
        re(i, j) = num / den;
      }
      {
        const double ce = dim.e(i, j), cw = dim.w(i, j);
        const double cn = dim.n(i, j), cs = dim.s(i, j);
        const double num = ce * im(ie, j) + cw * im(iw, j) + cn * im(i, jn) +
                           cs * im(i, js) + p.lambda2 * data.u_im(i, j) +
                           2.0 * p.lambda3 * frozen.u_im(i, j);
        const double den = p.lambda2 + shift + ce + cw + cn + cs;
        im(i, j) = num / den;
      }
    }
  }
}

}  // namespace

void SolveConfig::validate() const {
  params.validate();
  if (!(epsilon > 0.0)) {
    throw ContractError("SolveConfig: epsilon must be positive");
  }
  if (max_outer < 1) {
    throw ContractError("SolveConfig: max_outer must be at least 1");
  }
  if (gs_sweeps_per_outer < 1) {
    throw ContractError("SolveConfig: gs_sweeps_per_outer must be at least 1");
  }
}

std::pair<PhasePair, SolveReport> fixed_point_denoise(
    const PhasePair& data, const SolveConfig& config) {
  config.validate();
  const auto t0 = std::chrono::steady_clock::now();
  PhasePair u = data;
  SolveReport report;
  if (config.record_energy) {
    report.energies.push_back(evaluate(u, data, config.params));
  }
  for (int outer = 1; outer <= config.max_outer; ++outer) {
    const PhasePair frozen = u;
    if (config.record_dominance) {
      report.dominance_margins.push_back(
          check_diagonal_dominance(frozen, config.params).worst_margin);
    }
    const Diffusivities dre =
        freeze_diffusivities(frozen.u_real, config.params.beta);
    const Diffusivities dim =
        freeze_diffusivities(frozen.u_im, config.params.beta);
    for (int sweep = 0; sweep < config.gs_sweeps_per_outer; ++sweep) {
      gauss_seidel_sweep(u, frozen, data, dre, dim, config.params);
    }
    const double rel = joint_relative_change(u, frozen);
    report.relative_changes.push_back(rel);
    report.outer_iterations = outer;
    if (!pair_all_finite(u) || !std::isfinite(rel)) {
      report.wall_time_seconds = seconds_since(t0);
      throw DivergenceError(
          "fixed_point_denoise: non-finite iterate at outer iteration " +
              std::to_string(outer),
          outer, report);
    }
    if (config.record_energy) {
      report.energies.push_back(evaluate(u, data, config.params));
    }
    if (rel < config.epsilon) {
      report.converged = true;
      break;
    }
  }
  report.wall_time_seconds = seconds_since(t0);
  return {std::move(u), std::move(report)};
}

std::pair<PhasePair, SolveReport> gradient_descent_denoise(
    const PhasePair& data, const SolveConfig& config, double tau) {
  config.validate();
  if (!(tau > 0.0)) {
    throw ContractError("gradient_descent_denoise: tau must be positive");
  }
  const auto t0 = std::chrono::steady_clock::now();
  const int m = data.rows();
  const int n = data.cols();
  PhasePair u = data;
  SolveReport report;
  EnergyBreakdown energy = evaluate(u, data, config.params);
  if (config.record_energy) report.energies.push_back(energy);
  int bad_streak = 0;
  for (int k = 1; k <= config.max_outer; ++k) {
    const PhasePair g = gradient(u, data, config.params);
    PhasePair next = u;
#pragma omp parallel for schedule(static)
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < n; ++j) {
        next.u_real(i, j) = u.u_real(i, j) - tau * g.u_real(i, j);
        next.u_im(i, j) = u.u_im(i, j) - tau * g.u_im(i, j);
      }
    }
    const double rel = joint_relative_change(next, u);
    report.relative_changes.push_back(rel);
    report.outer_iterations = k;
    if (!pair_all_finite(next) || !std::isfinite(rel)) {
      report.wall_time_seconds = seconds_since(t0);
      throw DivergenceError(
          "gradient_descent_denoise: non-finite iterate at iteration " +
              std::to_string(k) + "; try a smaller tau",
          k, report);
    }
    const EnergyBreakdown next_energy = evaluate(next, data, config.params);
    if (config.record_energy) report.energies.push_back(next_energy);
    if (next_energy.total > 1.10 * energy.total) {
      if (++bad_streak >= 5) {
        report.wall_time_seconds = seconds_since(t0);
        throw DivergenceError(
            "gradient_descent_denoise: energy grew by more than 10% for 5 "
            "consecutive steps at iteration " +
                std::to_string(k) + "; try a smaller tau",
            k, report);
      }
    } else {
      bad_streak = 0;
    }
    energy = next_energy;
    u = std::move(next);
    if (rel < config.epsilon) {
      report.converged = true;
      break;
    }
  }
  report.wall_time_seconds = seconds_since(t0);
  return {std::move(u), std::move(report)};
}

double suggested_gd_step(const PhasePair& initial, const ModelParams& params) {
  params.validate();
  const int m = initial.rows();
  const int n = initial.cols();
  double s_max = 0.0;
#pragma omp parallel for schedule(static) reduction(max : s_max)
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      s_max = std::max(s_max, sq(initial.u_real(i, j)) + sq(initial.u_im(i, j)));
    }
  }
  const double hessian_bound = std::max(params.lambda1, params.lambda2) +
                               2.0 * params.lambda3 * 3.0 * sq(s_max) +
                               8.0 / std::sqrt(params.beta);
  return 0.9 / hessian_bound;
}

Field2D filter_field(const Field2D& f, StrobelFilter filter, double sigma) {
  std::vector<double> kernel;
  if (filter == StrobelFilter::mean3) {
    kernel.assign(3, 1.0 / 3.0);
  } else {
    if (!(sigma > 0.0)) {
      throw ContractError("filter_field: sigma must be positive");
    }
    const int radius = std::max(1, static_cast<int>(std::ceil(3.0 * sigma)));
    kernel.resize(2 * radius + 1);
    double total = 0.0;
    for (int t = -radius; t <= radius; ++t) {
      const double w = std::exp(-0.5 * sq(t / sigma));
      kernel[t + radius] = w;
      total += w;
    }
    for (double& w : kernel) w /= total;
  }

  const int m = f.rows();
  const int n = f.cols();
  const int radius = static_cast<int>(kernel.size()) / 2;
  Field2D tmp(m, n);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      double acc = 0.0;
      for (int t = -radius; t <= radius; ++t) {
        const int jj = std::clamp(j + t, 0, n - 1);
        acc += kernel[t + radius] * f(i, jj);
      }
      tmp(i, j) = acc;
    }
  }
  Field2D out(m, n);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      double acc = 0.0;
      for (int t = -radius; t <= radius; ++t) {
        const int ii = std::clamp(i + t, 0, m - 1);
        acc += kernel[t + radius] * tmp(ii, j);
      }
      out(i, j) = acc;
    }
  }
  return out;
}

PhasePair strobel_denoise(const PhasePair& data, StrobelFilter filter,
                          double sigma) {
  return PhasePair(filter_field(data.u_real, filter, sigma),
                   filter_field(data.u_im, filter, sigma));
}

}  // namespace wptv
