#include "conelap/estimator.hpp"

#include <algorithm>
#include <string>

#include "conelap/errors.hpp"
#include "conelap/glasso.hpp"

namespace conelap {

void SolverConfig::validate() const {
  auto fail = [](const std::string& field, const std::string& why) {
    throw ValidationError("SolverConfig." + field + " " + why);
  };
  if (!(rho > 0.0)) fail("rho", "must be > 0");
  if (!(tol > 0.0 && tol < 1.0)) fail("tol", "must be in (0, 1)");
  if (max_outer == 0) fail("max_outer", "must be >= 1");
  if (max_sweeps_per_round == 0) fail("max_sweeps_per_round", "must be >= 1");
  if (max_sweeps == 0) fail("max_sweeps", "must be >= 1");
  if (!(mu_floor_ratio > 0.0 && mu_floor_ratio < 1.0)) fail("mu_floor_ratio", "must be in (0, 1)");
  if (!(qp_tol > 0.0)) fail("qp_tol", "must be > 0");
  if (qp_max_cycles == 0) fail("qp_max_cycles", "must be >= 1");
}

ConstrainedValue constrained_objective(const SymMatrix& l, const SymMatrix& c_bar, double rho,
                                       const EigenPrior& prior) {
  return {glasso_objective(l, c_bar, rho), cone_contains(l, prior, 1e-6)};
}

EstimateReport proj_lasso(const SymMatrix& c_bar, const EigenPrior& prior,
                          const SolverConfig& cfg) {
  cfg.validate();
  if (prior.n() != c_bar.n())
    throw ValidationError("proj_lasso: prior dimension " + std::to_string(prior.n()) +
                          " does not match covariance dimension " + std::to_string(c_bar.n()));

  const SweepOptions opts{cfg.qp_tol, cfg.qp_max_cycles, BlockInverse::automatic};
  GlassoState state = GlassoState::initial(c_bar, cfg.rho);

  EstimateReport out;
  SymMatrix best_l, best_c;
  double best_value = 0.0;

  for (std::size_t round = 0; round < cfg.max_outer; ++round) {
    for (std::size_t s = 0; s < cfg.max_sweeps_per_round; ++s)
      state = bcd_sweep(std::move(state), opts);

    ConeProjection proj = project_to_cone(inverse_pd(state.c_hat), prior, cfg);
    const double value = glasso_objective(proj.projected, c_bar, cfg.rho);
    out.objective_trace.push_back(value);
    out.outer_iters = round + 1;

    if (round > 0) {
      SymMatrix diff = proj.projected - out.laplacian;
      out.last_change = diff.frobenius_norm() / std::max(1.0, out.laplacian.frobenius_norm());
    }
    if (round == 0 || value < best_value) {
      best_value = value;
      best_l = proj.projected;
      best_c = proj.c_hat;
    }

    out.laplacian = std::move(proj.projected);
    out.covariance = std::move(proj.c_hat);

    if (round > 0 && out.last_change <= cfg.tol) {
      out.converged = true;
      break;
    }
  }
  // the alternation is not a descent method; hand back the best cone iterate seen
  out.laplacian = std::move(best_l);
  out.covariance = std::move(best_c);
  return out;
}

}  // namespace conelap
