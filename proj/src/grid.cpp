#include "wptv/grid.hpp"

#include <cmath>

namespace wptv {

namespace {

// Replicate-ghost read; callers only ever step one cell out.
inline double ghost(const Field2D& f, int i, int j) {
  const int ci = i < 0 ? 0 : (i >= f.rows() ? f.rows() - 1 : i);
  const int cj = j < 0 ? 0 : (j >= f.cols() ? f.cols() - 1 : j);
  return f(ci, cj);
}

inline double sq(double x) { return x * x; }

}  // namespace

GradMagnitudes grad_magnitudes(const Field2D& f) {
  const int m = f.rows();
  const int n = f.cols();
  GradMagnitudes g{Field2D(m, n), Field2D(m, n), Field2D(m, n), Field2D(m, n)};
#pragma omp parallel for schedule(static)
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      const double w = f(i, j);
      const double w_ip = ghost(f, i + 1, j);
      const double w_jp = ghost(f, i, j + 1);
      const double w_im = ghost(f, i - 1, j);
      const double w_imjp = ghost(f, i - 1, j + 1);
      const double w_jm = ghost(f, i, j - 1);
      const double w_ipjm = ghost(f, i + 1, j - 1);

      g.g_e(i, j) = std::sqrt(sq(w_ip - w) + sq(w_jp - w));
      g.g_w(i, j) = std::sqrt(sq(w - w_im) + sq(w_imjp - w_im));
      g.g_n(i, j) = std::sqrt(sq(w_ip - w) + sq(w_jp - w));
      g.g_s(i, j) = std::sqrt(sq(w_ipjm - w_jm) + sq(w - w_jm));
    }
  }
  return g;
}

Field2D curvature(const Field2D& f, double beta) {
  if (!(beta > 0.0)) {
    throw ContractError("curvature: beta must be positive");
  }
  const int m = f.rows();
  const int n = f.cols();
  const GradMagnitudes g = grad_magnitudes(f);
  Field2D out(m, n);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      const double w = f(i, j);
      const double flux_e =
          (ghost(f, i + 1, j) - w) / std::sqrt(sq(g.g_e(i, j)) + beta);
      const double flux_w =
          (w - ghost(f, i - 1, j)) / std::sqrt(sq(g.g_w(i, j)) + beta);
      const double flux_n =
          (ghost(f, i, j + 1) - w) / std::sqrt(sq(g.g_n(i, j)) + beta);
      const double flux_s =
          (w - ghost(f, i, j - 1)) / std::sqrt(sq(g.g_s(i, j)) + beta);
      out(i, j) = flux_e - flux_w + flux_n - flux_s;
    }
  }
  return out;
}

}  // namespace wptv
