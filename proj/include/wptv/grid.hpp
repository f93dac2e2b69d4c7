#pragma once

#include "wptv/field2d.hpp"

namespace wptv {

/// One-sided gradient magnitudes |grad w| evaluated at the four neighbor
/// positions of every pixel (i, j): east (i+1, j), west (i-1, j),
/// north (i, j+1), south (i, j-1). Out-of-range reads use replicate ghosts,
/// so boundary-normal differences vanish. Note that the published scheme
/// reuses the forward differences of the east stencil for the north one,
/// making g_n identical to g_e; both are kept so callers can address the
/// four stencil positions uniformly.
struct GradMagnitudes {
  Field2D g_e, g_w, g_n, g_s;
};

GradMagnitudes grad_magnitudes(const Field2D& f);

/// Discrete div(grad f / sqrt(|grad f|^2 + beta)) via the four-flux stencil,
/// with the regularized magnitudes of grad_magnitudes in the denominators.
/// Equals the exact negative gradient of sum_p sqrt(|grad f|_p^2 + beta),
/// so its entries sum to zero (discrete divergence theorem).
Field2D curvature(const Field2D& f, double beta);

}  // namespace wptv
