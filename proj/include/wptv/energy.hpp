#pragma once

#include "wptv/phase.hpp"

namespace wptv {

/// Regularization and coupling weights of the variational model.
struct ModelParams {
  double lambda1 = 2.5;  // cos-channel fidelity weight
  double lambda2 = 2.5;  // sin-channel fidelity weight
  double lambda3 = 5.0;  // unit-circle coupling weight
  double beta = 1e-3;    // gradient-magnitude regularization

  void validate() const;
};

/// The five addends of the discrete energy, plus their sum.
struct EnergyBreakdown {
  double fit_real = 0.0;
  double fit_im = 0.0;
  double pythagoras = 0.0;
  double tv_real = 0.0;
  double tv_im = 0.0;
  double total = 0.0;
};

/// Evaluates the discrete energy
///   lambda1/2 * sum (u_real - data_real)^2
/// + lambda2/2 * sum (u_im - data_im)^2
/// + lambda3/2 * sum (u_real^2 + u_im^2 - 1)^2
/// + sum sqrt(|grad u_real|^2 + beta) + sum sqrt(|grad u_im|^2 + beta)
/// with one-sided forward differences and replicate ghosts, unit cell area.
/// Reduction order is fixed, so results are bit-stable across thread counts.
EnergyBreakdown evaluate(const PhasePair& pair, const PhasePair& data,
                         const ModelParams& params);

/// Exact gradient of the discrete energy computed by evaluate. The
/// divergence part is the algebraic transpose of the forward-difference
/// scheme, which is precisely -curvature(channel, beta).
PhasePair gradient(const PhasePair& pair, const PhasePair& data,
                   const ModelParams& params);

/// Which linearization of the coupling term the fixed-point operator uses.
/// The shifted form moves 2*lambda3*u^k to the right-hand side so the
/// diagonal gains the always-positive 2*lambda3*(u_real^2 + u_im^2); the
/// unshifted form keeps 2*lambda3*(u_real^2 + u_im^2 - 1) on the diagonal
/// and loses strict dominance inside the unit circle when 2*lambda3 is
/// large against the fidelity weight.
enum class FixedPointScheme { shifted, unshifted };

struct DominanceCertificate {
  bool dominant = false;   // strict diagonal dominance at every pixel
  double worst_margin = 0; // min over pixels/channels of diagonal - offdiag
};

/// Assembles, per pixel and channel, the diagonal entry and the off-diagonal
/// sum of the fixed-point linear operator frozen at `pair`, and reports the
/// worst dominance margin.
DominanceCertificate check_diagonal_dominance(
    const PhasePair& pair, const ModelParams& params,
    FixedPointScheme scheme = FixedPointScheme::shifted);

}  // namespace wptv
