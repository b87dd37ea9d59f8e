#pragma once

#include <vector>

#include "jpcm/fgo/graph.hpp"

namespace jpcm::fgo {

struct SolverConfig {
  int max_iterations = 50;
  double initial_lambda = 1e-4;
  double lambda_increase = 10.0;
  double lambda_decrease = 0.1;
  double relative_cost_tol = 1e-6;  // stop when ΔF ≤ tol·F
  double gradient_tol = 1e-8;       // stop when ‖Jᵀb‖∞ ≤ tol
  double max_lambda = 1e16;         // beyond this the solve is declared stalled
  double min_lambda = 1e-15;
};

enum class StopReason { kGradient, kRelativeCost, kMaxIterations, kStalled };

struct SolveStats {
  int iterations = 0;  // accepted steps
  double initial_cost = 0.0;
  double final_cost = 0.0;
  bool converged = false;
  StopReason reason = StopReason::kMaxIterations;
  std::vector<double> cost_history;    // initial cost, then each accepted cost
  std::vector<double> lambda_history;  // λ used by each accepted step
};

struct SolveResult {
  Values values;
  SolveStats stats;
};

// Levenberg-Marquardt over the graph's variables. Damping is λ·I on the
// normal-equation diagonal; the damped system is solved through a Jacobi
// rescaling so the wildly different block scales (rate-factor σ=1000 next to
// floored dynamics rows) stay within double-precision Cholesky territory.
// Throws std::invalid_argument for structural problems (missing keys, values
// not covered by any factor) and std::runtime_error for non-finite costs.
SolveResult solve_lm(const FactorGraph& graph, const Values& initial,
                     const SolverConfig& config = {});

}  // namespace jpcm::fgo
