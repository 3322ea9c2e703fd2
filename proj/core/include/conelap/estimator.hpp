#pragma once

#include <cstddef>
#include <vector>

#include "conelap/cone.hpp"
#include "conelap/config.hpp"
#include "conelap/linalg.hpp"

namespace conelap {

struct EstimateReport {
  SymMatrix laplacian;
  SymMatrix covariance;
  std::size_t outer_iters = 0;
  bool converged = false;
  /// Penalized objective at each projected iterate.
  std::vector<double> objective_trace;
  /// Relative Laplacian change of the last round.
  double last_change = 0.0;
};

/// Hybrid solver: each round runs cfg.max_sweeps_per_round dual BCD sweeps
/// and projects L = C^{-1} onto the prior's cone. The dual iterate C carries
/// over between rounds unchanged; the projected covariance is generally
/// outside the dual box |C - C_bar| <= rho, and a sweep started from it loses
/// positive definiteness. Stops once ||L - L_prev||_F / max(1, ||L_prev||_F)
/// <= cfg.tol. When cfg.max_outer rounds pass without that, the iterate with
/// the lowest objective is returned with converged = false.
EstimateReport proj_lasso(const SymMatrix& c_bar, const EigenPrior& prior,
                          const SolverConfig& cfg = {});

struct ConstrainedValue {
  double value = 0.0;
  bool feasible = false;
};

/// Penalized objective of L plus cone membership at tolerance 1e-6.
ConstrainedValue constrained_objective(const SymMatrix& l, const SymMatrix& c_bar, double rho,
                                       const EigenPrior& prior);

}  // namespace conelap
