#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "conelap/config.hpp"
#include "conelap/linalg.hpp"

namespace conelap {

/// Tr(L C_bar) - log det L + rho * sum_ij |L_ij|. Throws if L is not PD.
double glasso_objective(const SymMatrix& l, const SymMatrix& c_bar, double rho);

/// -log det C, the quantity the dual solver drives down.
double glasso_dual_objective(const SymMatrix& c);

/// Primal minus dual value for the pair (L = C^{-1}, C):
/// glasso_objective(L) - (log det C + n). Zero at the optimum.
double glasso_duality_gap(const SymMatrix& l, const SymMatrix& c, const SymMatrix& c_bar,
                          double rho);

/// argmin_y y^T Q y subject to |y_i - c12_bar_i| <= rho, by cyclic coordinate
/// descent with exact clamped coordinate minimizers. Stops when a full cycle
/// moves no coordinate by more than tol; ConvergenceError after max_cycles.
/// Without a warm start the iteration begins at the box projection of 0.
Vector box_qp_row(const SymMatrix& q, std::span<const double> c12_bar, double rho, double tol,
                  std::optional<std::span<const double>> warm_start = std::nullopt,
                  std::size_t max_cycles = 100000);

struct GlassoState {
  SymMatrix c_hat;  ///< current dual covariance estimate
  SymMatrix c_bar;  ///< empirical covariance
  double rho = 0.0;
  std::size_t sweep = 0;

  /// C_bar + rho I, the standard feasible starting point.
  static GlassoState initial(const SymMatrix& c_bar, double rho);
};

/// How C11^{-1} is formed for each column update.
enum class BlockInverse {
  automatic,     ///< direct below 33 nodes, rank update above
  direct,        ///< fresh Cholesky inverse of C11
  rank_update,   ///< Schur-complement update of a maintained full inverse
};

struct SweepOptions {
  double qp_tol = 1e-12;
  std::size_t qp_max_cycles = 100000;
  BlockInverse block_inverse = BlockInverse::automatic;
};

/// One pass over all columns j = 0..n-1. Column j: diagonal set to
/// c_bar_jj + rho, off-diagonal set by box_qp_row on C11^{-1}, warm-started
/// from the current column clamped to the box. Throws NotPositiveDefinite if a
/// Schur complement turns non-positive.
GlassoState bcd_sweep(GlassoState state, const SweepOptions& opts = {});

struct GlassoResult {
  SymMatrix laplacian;   ///< C^{-1}
  SymMatrix covariance;  ///< C
  std::size_t sweeps = 0;
  bool converged = false;
  double last_change = 0.0;
  std::vector<double> dual_trace;  ///< -log det C after each sweep
};

/// Dual block-coordinate descent from C_bar + rho I until the largest entry
/// change of a sweep is <= cfg.tol or cfg.max_sweeps sweeps ran.
GlassoResult solve_glasso(const SymMatrix& c_bar, double rho, const SolverConfig& cfg = {});

}  // namespace conelap
