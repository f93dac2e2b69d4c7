#pragma once

#include "wptv/field2d.hpp"

namespace wptv {

/// A wrapped phase map: radians in the half-open principal branch (-pi, pi].
struct WrappedPhase {
  Field2D psi;

  /// Validates the branch invariant. A value of exactly -pi is folded onto
  /// +pi (same phase); anything outside [-pi, pi] is rejected.
  static WrappedPhase from_field(Field2D field);

  int rows() const { return psi.rows(); }
  int cols() const { return psi.cols(); }
};

/// The coupled cosine/sine channel pair of a phase map.
struct PhasePair {
  Field2D u_real;  // cos channel
  Field2D u_im;    // sin channel

  PhasePair(Field2D real_channel, Field2D im_channel);

  int rows() const { return u_real.rows(); }
  int cols() const { return u_real.cols(); }
  bool same_shape(const PhasePair& other) const {
    return u_real.same_shape(other.u_real);
  }
};

/// Reduces absolute phase modulo 2*pi into (-pi, pi] via
/// atan2(sin(phi), cos(phi)).
WrappedPhase wrap(const Field2D& phi_radians);

/// Splits a wrapped phase into (cos psi, sin psi).
PhasePair decompose(const WrappedPhase& psi);

/// Recovers the wrapped phase as atan2(u_im, u_real). The pair need not be
/// normalized; a pixel at exactly (0, 0) throws UndefinedPhaseError.
WrappedPhase reconstruct(const PhasePair& pair);

/// Pointwise |u_real^2 + u_im^2 - 1|, the deviation from the unit circle.
Field2D pythagorean_deviation(const PhasePair& pair);

/// Pixelwise division by sqrt(u_real^2 + u_im^2). Throws
/// UndefinedPhaseError where the magnitude is exactly zero.
PhasePair normalized(const PhasePair& pair);

}  // namespace wptv
