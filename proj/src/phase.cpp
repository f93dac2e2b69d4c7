#include "wptv/phase.hpp"

#include <cmath>
#include <numbers>
#include <utility>

namespace wptv {

namespace {
constexpr double kPi = std::numbers::pi;
}

WrappedPhase WrappedPhase::from_field(Field2D field) {
  const int m = field.rows();
  const int n = field.cols();
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      double v = field(i, j);
      if (v == -kPi) {
        field(i, j) = kPi;
        continue;
      }
      if (!(v > -kPi && v <= kPi)) {
        throw ContractError("WrappedPhase: value outside (-pi, pi] at pixel (" +
                            std::to_string(i) + ", " + std::to_string(j) + ")");
      }
    }
  }
  return WrappedPhase{std::move(field)};
}

PhasePair::PhasePair(Field2D real_channel, Field2D im_channel)
    : u_real(std::move(real_channel)), u_im(std::move(im_channel)) {
  if (!u_real.same_shape(u_im)) {
    throw ShapeError("PhasePair: channel shapes differ");
  }
}

WrappedPhase wrap(const Field2D& phi_radians) {
  const int m = phi_radians.rows();
  const int n = phi_radians.cols();
  Field2D psi(m, n);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      const double p = phi_radians(i, j);
      double w = std::atan2(std::sin(p), std::cos(p));
      if (w == -kPi) w = kPi;  // the cut belongs to +pi
      psi(i, j) = w;
    }
  }
  return WrappedPhase{std::move(psi)};
}

PhasePair decompose(const WrappedPhase& psi) {
  const int m = psi.rows();
  const int n = psi.cols();
  Field2D re(m, n);
  Field2D im(m, n);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      re(i, j) = std::cos(psi.psi(i, j));
      im(i, j) = std::sin(psi.psi(i, j));
    }
  }
  return PhasePair(std::move(re), std::move(im));
}

WrappedPhase reconstruct(const PhasePair& pair) {
  const int m = pair.rows();
  const int n = pair.cols();
  Field2D psi(m, n);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      const double x = pair.u_real(i, j);
      const double y = pair.u_im(i, j);
      if (x == 0.0 && y == 0.0) throw UndefinedPhaseError(i, j);
      double w = std::atan2(y, x);
      if (w == -kPi) w = kPi;
      psi(i, j) = w;
    }
  }
  return WrappedPhase{std::move(psi)};
}

Field2D pythagorean_deviation(const PhasePair& pair) {
  const int m = pair.rows();
  const int n = pair.cols();
  Field2D dev(m, n);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      const double x = pair.u_real(i, j);
      const double y = pair.u_im(i, j);
      dev(i, j) = std::fabs(x * x + y * y - 1.0);
    }
  }
  return dev;
}

PhasePair normalized(const PhasePair& pair) {
  const int m = pair.rows();
  const int n = pair.cols();
  Field2D re(m, n);
  Field2D im(m, n);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      const double x = pair.u_real(i, j);
      const double y = pair.u_im(i, j);
      const double mag = std::sqrt(x * x + y * y);
      if (mag == 0.0) throw UndefinedPhaseError(i, j);
      re(i, j) = x / mag;
      im(i, j) = y / mag;
    }
  }
  return PhasePair(std::move(re), std::move(im));
}

}  // namespace wptv
