#include "wptv/energy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "reduce.hpp"
#include "wptv/grid.hpp"

namespace wptv {

namespace {
inline double sq(double x) { return x * x; }
}

void ModelParams::validate() const {
  if (!(lambda1 > 0.0) || !(lambda2 > 0.0)) {
    throw ContractError("ModelParams: lambda1 and lambda2 must be positive");
  }
  if (!(lambda3 >= 0.0)) {
    throw ContractError("ModelParams: lambda3 must be non-negative");
  }
  if (!(beta > 0.0)) {
    throw ContractError("ModelParams: beta must be positive");
  }
}

EnergyBreakdown evaluate(const PhasePair& pair, const PhasePair& data,
                         const ModelParams& params) {
  params.validate();
  if (!pair.same_shape(data)) {
    throw ShapeError("evaluate: pair and data shapes differ");
  }
  const int m = pair.rows();
  const int n = pair.cols();
  const Field2D& re = pair.u_real;
  const Field2D& im = pair.u_im;
  const double beta = params.beta;

  const auto sums = detail::sum_rows_multi<5>(m, [&](int i) {
    std::array<double, 5> acc{};
    for (int j = 0; j < n; ++j) {
      const double dre = re(i, j) - data.u_real(i, j);
      const double dim = im(i, j) - data.u_im(i, j);
      const double s = sq(re(i, j)) + sq(im(i, j)) - 1.0;
      acc[0] += dre * dre;
      acc[1] += dim * dim;
      acc[2] += s * s;
      const double gxr = i + 1 < m ? re(i + 1, j) - re(i, j) : 0.0;
      const double gyr = j + 1 < n ? re(i, j + 1) - re(i, j) : 0.0;
      acc[3] += std::sqrt(gxr * gxr + gyr * gyr + beta);
      const double gxi = i + 1 < m ? im(i + 1, j) - im(i, j) : 0.0;
      const double gyi = j + 1 < n ? im(i, j + 1) - im(i, j) : 0.0;
      acc[4] += std::sqrt(gxi * gxi + gyi * gyi + beta);
    }
    return acc;
  });

  EnergyBreakdown b;
  b.fit_real = 0.5 * params.lambda1 * sums[0];
  b.fit_im = 0.5 * params.lambda2 * sums[1];
  b.pythagoras = 0.5 * params.lambda3 * sums[2];
  b.tv_real = sums[3];
  b.tv_im = sums[4];
  b.total = b.fit_real + b.fit_im + b.pythagoras + b.tv_real + b.tv_im;
  return b;
}

PhasePair gradient(const PhasePair& pair, const PhasePair& data,
                   const ModelParams& params) {
  params.validate();
  if (!pair.same_shape(data)) {
    throw ShapeError("gradient: pair and data shapes differ");
  }
  const int m = pair.rows();
  const int n = pair.cols();
  const Field2D curv_re = curvature(pair.u_real, params.beta);
  const Field2D curv_im = curvature(pair.u_im, params.beta);
  Field2D gre(m, n);
  Field2D gim(m, n);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      const double x = pair.u_real(i, j);
      const double y = pair.u_im(i, j);
      const double s = x * x + y * y - 1.0;
      gre(i, j) = -curv_re(i, j) +
                  params.lambda1 * (x - data.u_real(i, j)) +
                  2.0 * params.lambda3 * s * x;
      gim(i, j) = -curv_im(i, j) +
                  params.lambda2 * (y - data.u_im(i, j)) +
                  2.0 * params.lambda3 * s * y;
    }
  }
  return PhasePair(std::move(gre), std::move(gim));
}

DominanceCertificate check_diagonal_dominance(const PhasePair& pair,
                                              const ModelParams& params,
                                              FixedPointScheme scheme) {
  params.validate();
  const int m = pair.rows();
  const int n = pair.cols();
  const double beta = params.beta;
  const GradMagnitudes g_re = grad_magnitudes(pair.u_real);
  const GradMagnitudes g_im = grad_magnitudes(pair.u_im);

  double worst = std::numeric_limits<double>::infinity();
#pragma omp parallel for schedule(static) reduction(min : worst)
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      const double s = sq(pair.u_real(i, j)) + sq(pair.u_im(i, j));
      const double shift =
          scheme == FixedPointScheme::shifted
              ? 2.0 * params.lambda3 * s
              : 2.0 * params.lambda3 * (s - 1.0);
      const GradMagnitudes* mags[2] = {&g_re, &g_im};
      const double lambdas[2] = {params.lambda1, params.lambda2};
      for (int c = 0; c < 2; ++c) {
        const GradMagnitudes& g = *mags[c];
        const double off = 1.0 / std::sqrt(sq(g.g_e(i, j)) + beta) +
                           1.0 / std::sqrt(sq(g.g_w(i, j)) + beta) +
                           1.0 / std::sqrt(sq(g.g_n(i, j)) + beta) +
                           1.0 / std::sqrt(sq(g.g_s(i, j)) + beta);
        const double diag = lambdas[c] + shift + off;
        worst = std::min(worst, diag - off);
      }
    }
  }
  return DominanceCertificate{worst > 0.0, worst};
}

}  // namespace wptv
