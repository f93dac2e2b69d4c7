#pragma once

#include "wptv/energy.hpp"
#include "wptv/grid.hpp"
#include "wptv/phase.hpp"

// Naive serial re-implementations of the numerical kernels. They transcribe
// the formulas pixel by pixel, never call the parallel kernels they are used
// to check, and trade speed for obviousness. The test suites use them as
// independent oracles; the benchmark uses them as the serial baseline.
namespace wptv::ref {

/// Replicate-ghost read, one cell of slack.
double clamp_read(const Field2D& f, int i, int j);

struct MagsAt {
  double e, w, n, s;
};

/// The four one-sided gradient magnitudes addressed by pixel (i, j):
/// |grad w| at (i+1,j), (i-1,j), (i,j+1), (i,j-1).
MagsAt grad_magnitudes_at(const Field2D& f, int i, int j);

GradMagnitudes grad_magnitudes(const Field2D& f);

/// Four-flux curvature with the boundary-normal flux terms dropped
/// explicitly instead of cancelled through ghost reads.
Field2D curvature(const Field2D& f, double beta);

/// The five energy addends, one plain loop each.
EnergyBreakdown energy(const PhasePair& pair, const PhasePair& data,
                       const ModelParams& params);

/// Exact energy gradient by brute-force gather: for every pixel, every
/// energy addend that references it is differentiated and accumulated.
/// Quadratic cost; intended for tiny grids.
PhasePair energy_gradient(const PhasePair& pair, const PhasePair& data,
                          const ModelParams& params);

/// Central finite differences of ref::energy.
PhasePair energy_gradient_fd(const PhasePair& pair, const PhasePair& data,
                             const ModelParams& params, double step);

double mse(const Field2D& result, const Field2D& reference);
double iqi(const Field2D& result, const Field2D& reference);

/// One outer fixed-point iteration in the alternating order: a full
/// Gauss-Seidel sweep of the cos channel, then a full sweep of the sin
/// channel, diffusivities and coupling frozen at the incoming iterate.
PhasePair fixed_point_alternating_iteration(const PhasePair& u,
                                            const PhasePair& data,
                                            const ModelParams& params);

/// One explicit gradient-descent step u - tau * grad F(u).
PhasePair gradient_descent_step(const PhasePair& u, const PhasePair& data,
                                const ModelParams& params, double tau);

}  // namespace wptv::ref
