#pragma once

#include <utility>
#include <vector>

#include "wptv/energy.hpp"

namespace wptv {

struct SolveConfig {
  ModelParams params;
  double epsilon = 1e-7;        // relative-change stopping tolerance
  int max_outer = 1000;         // outer (diffusivity-refresh) iterations
  int gs_sweeps_per_outer = 1;  // Gauss-Seidel sweeps per frozen system
  bool record_energy = false;   // keep the per-iteration energy breakdowns
  bool record_dominance = false;  // keep the per-iteration dominance margins

  void validate() const;
};

struct SolveReport {
  bool converged = false;
  int outer_iterations = 0;
  std::vector<double> relative_changes;  // one entry per outer iteration
  // When recorded: energies[0] is the energy of the initial iterate, then one
  // entry per outer iteration; dominance_margins has one entry per outer
  // iteration (the margin of the linear system actually solved).
  std::vector<EnergyBreakdown> energies;
  std::vector<double> dominance_margins;
  double wall_time_seconds = 0.0;
};

/// A solver produced non-finite values or a runaway energy. Carries the
/// iteration index and the partial report accumulated so far.
class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& what, int iteration, SolveReport partial)
      : Error(what), iteration_(iteration), partial_(std::move(partial)) {}
  int iteration() const { return iteration_; }
  const SolveReport& partial_report() const { return partial_; }

 private:
  int iteration_;
  SolveReport partial_;
};

/// Lagged-diffusivity fixed-point solver. Starting from u^0 = data, each
/// outer iteration freezes the diffusivities 1/sqrt(|grad u^k|^2 + beta) at
/// the four stencil positions (via grad_magnitudes) together with the
/// coupling terms 2*lambda3*u^k and u_real^2 + u_im^2 at iteration k, then
/// relaxes the resulting linear system with in-place lexicographic
/// Gauss-Seidel sweeps; stops when the joint two-channel relative change
/// drops below epsilon.
std::pair<PhasePair, SolveReport> fixed_point_denoise(const PhasePair& data,
                                                      const SolveConfig& config);

/// Explicit gradient descent u^{k+1} = u^k - tau * grad F(u^k), same
/// stopping rule as the fixed-point solver. Throws DivergenceError when the
/// energy grows by more than 10% for five consecutive steps or an iterate
/// goes non-finite.
std::pair<PhasePair, SolveReport> gradient_descent_denoise(
    const PhasePair& data, const SolveConfig& config, double tau);

/// Conservative stable step for gradient_descent_denoise:
/// 0.9 / (max(lambda1, lambda2) + 6*lambda3*s_max^2 + 8/sqrt(beta)) with
/// s_max the largest u_real^2 + u_im^2 of the initial iterate.
double suggested_gd_step(const PhasePair& initial, const ModelParams& params);

enum class StrobelFilter { mean3, gaussian };

/// Separable linear filter with replicate borders; sigma is used by the
/// Gaussian kernel only (truncated at ceil(3*sigma)).
Field2D filter_field(const Field2D& f, StrobelFilter filter,
                     double sigma = 1.0);

/// Separate-channel baseline: the chosen linear filter applied independently
/// to u_real and u_im. No coupling, no normalization.
PhasePair strobel_denoise(const PhasePair& data, StrobelFilter filter,
                          double sigma = 1.0);

}  // namespace wptv
