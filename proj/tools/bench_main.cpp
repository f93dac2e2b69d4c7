// wptv-bench — times the OpenMP kernels against the serial reference
// implementations and reports the discrepancy between the two.
//
// Usage: wptv-bench [size] [reps]

#ifdef _OPENMP
#include <omp.h>
#endif

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <random>

#include "ref/reference.hpp"
#include "wptv/energy.hpp"
#include "wptv/grid.hpp"
#include "wptv/solvers.hpp"

using namespace wptv;

namespace {

Field2D random_field(int rows, int cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Field2D f(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) f(i, j) = dist(rng);
  }
  return f;
}

template <class Fn>
double best_seconds(int reps, Fn&& fn) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const double dt =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    if (dt < best) best = dt;
  }
  return best;
}

double max_abs_diff(const Field2D& a, const Field2D& b) {
  double worst = 0.0;
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) {
      worst = std::max(worst, std::fabs(a(i, j) - b(i, j)));
    }
  }
  return worst;
}

void print_row(const char* name, double parallel_s, double serial_s,
               double diff) {
  std::printf("%-18s %10.4f ms %12.4f ms %9.2fx   %.3e\n", name,
              parallel_s * 1e3, serial_s * 1e3, serial_s / parallel_s, diff);
}

}  // namespace

int main(int argc, char** argv) {
  const int size = argc > 1 ? std::atoi(argv[1]) : 1024;
  const int reps = argc > 2 ? std::atoi(argv[2]) : 5;
  if (size < 16 || reps < 1) {
    std::fprintf(stderr, "usage: wptv-bench [size>=16] [reps>=1]\n");
    return 2;
  }

#ifdef _OPENMP
  std::printf("grid %dx%d, best of %d, %d OpenMP threads\n", size, size, reps,
              omp_get_max_threads());
#else
  std::printf("grid %dx%d, best of %d, OpenMP disabled\n", size, size, reps);
#endif
  std::printf("%-18s %13s %15s %10s   %s\n", "kernel", "parallel", "serial ref",
              "speedup", "max |diff|");

  const Field2D f = random_field(size, size, 1);
  const PhasePair pair(random_field(size, size, 2),
                       random_field(size, size, 3));
  const PhasePair data(random_field(size, size, 4),
                       random_field(size, size, 5));
  const ModelParams params{2.5, 2.5, 5.0, 1e-3};
  const double beta = params.beta;

  {
    GradMagnitudes out = grad_magnitudes(f);
    const double tp = best_seconds(reps, [&] { out = grad_magnitudes(f); });
    GradMagnitudes ref_out = ref::grad_magnitudes(f);
    const double ts =
        best_seconds(reps, [&] { ref_out = ref::grad_magnitudes(f); });
    const double diff = std::max(
        std::max(max_abs_diff(out.g_e, ref_out.g_e),
                 max_abs_diff(out.g_w, ref_out.g_w)),
        std::max(max_abs_diff(out.g_n, ref_out.g_n),
                 max_abs_diff(out.g_s, ref_out.g_s)));
    print_row("grad_magnitudes", tp, ts, diff);
  }
  {
    Field2D out = curvature(f, beta);
    const double tp = best_seconds(reps, [&] { out = curvature(f, beta); });
    Field2D ref_out = ref::curvature(f, beta);
    const double ts =
        best_seconds(reps, [&] { ref_out = ref::curvature(f, beta); });
    print_row("curvature", tp, ts, max_abs_diff(out, ref_out));
  }
  {
    EnergyBreakdown out = evaluate(pair, data, params);
    const double tp =
        best_seconds(reps, [&] { out = evaluate(pair, data, params); });
    EnergyBreakdown ref_out = ref::energy(pair, data, params);
    const double ts =
        best_seconds(reps, [&] { ref_out = ref::energy(pair, data, params); });
    print_row("energy", tp, ts,
              std::fabs(out.total - ref_out.total) / std::fabs(ref_out.total));
  }
  {
    // The production gradient against a serial gradient-descent step with
    // tau = 0 (which reduces to the reference gradient path).
    PhasePair out = gradient(pair, data, params);
    const double tp =
        best_seconds(reps, [&] { out = gradient(pair, data, params); });
    PhasePair ref_step = ref::gradient_descent_step(pair, data, params, 1.0);
    const double ts = best_seconds(reps, [&] {
      ref_step = ref::gradient_descent_step(pair, data, params, 1.0);
    });
    // ref_step = pair - 1.0 * grad, so pair - ref_step recovers the gradient.
    double diff = 0.0;
    for (int i = 0; i < size; ++i) {
      for (int j = 0; j < size; ++j) {
        diff = std::max(diff, std::fabs((pair.u_real(i, j) - ref_step.u_real(i, j)) -
                                        out.u_real(i, j)));
        diff = std::max(diff, std::fabs((pair.u_im(i, j) - ref_step.u_im(i, j)) -
                                        out.u_im(i, j)));
      }
    }
    print_row("energy gradient", tp, ts, diff);
  }
  {
    // One full fixed-point outer iteration. The Gauss-Seidel sweep itself is
    // sequential by definition; the diffusivity refresh inside it is not.
    SolveConfig config;
    config.params = params;
    config.epsilon = 1e-300;
    config.max_outer = 1;
    auto run = [&] { (void)fixed_point_denoise(data, config); };
    const double tp = best_seconds(reps, run);
    auto run_ref = [&] {
      (void)ref::fixed_point_alternating_iteration(data, data, params);
    };
    const double ts = best_seconds(reps, run_ref);
    const auto [u1, r1] = fixed_point_denoise(data, config);
    const PhasePair u2 = ref::fixed_point_alternating_iteration(data, data, params);
    const double diff = std::max(max_abs_diff(u1.u_real, u2.u_real),
                                 max_abs_diff(u1.u_im, u2.u_im));
    print_row("fixed-point iter", tp, ts, diff);
  }
  return 0;
}
