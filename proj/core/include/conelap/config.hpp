#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>

namespace conelap {

/// Default shrinkage e^-6.
inline const double kDefaultRho = std::exp(-6.0);

struct SolverConfig {
  double rho = kDefaultRho;
  /// Convergence tolerance: max entry change per sweep for the plain solver,
  /// relative Laplacian change per round for the hybrid.
  double tol = 1e-4;
  std::size_t max_outer = 200;
  std::size_t max_sweeps_per_round = 1;
  /// Sweep cap for the plain (unconstrained) solver.
  std::size_t max_sweeps = 1000;
  double mu_floor_ratio = 1e-8;
  /// Coordinate-descent tolerance of the per-column box QP.
  double qp_tol = 1e-12;
  std::size_t qp_max_cycles = 100000;
  std::uint64_t seed = 0;

  /// Throws ValidationError naming the first offending field.
  void validate() const;
};

}  // namespace conelap
