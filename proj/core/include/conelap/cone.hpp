#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "conelap/config.hpp"
#include "conelap/linalg.hpp"

namespace conelap {

/// Ordered orthonormal vectors u_1..u_K that must be the first K
/// (smallest-eigenvalue) eigenvectors of a learned Laplacian.
class EigenPrior {
 public:
  static constexpr double kOrthonormalTolerance = 1e-10;

  /// Throws ValidationError unless 1 <= K <= n, all vectors have length n and
  /// |u_j . u_k - delta_jk| <= tol.
  EigenPrior(std::vector<Vector> vectors, double tol = kOrthonormalTolerance);

  std::size_t n() const noexcept { return n_; }
  std::size_t k() const noexcept { return vectors_.size(); }
  const Vector& operator[](std::size_t i) const { return vectors_[i]; }
  std::span<const Vector> vectors() const noexcept { return vectors_; }

  /// The first k columns of an eigendecomposition (ascending order).
  static EigenPrior leading(const EigenDecomp& eig, std::size_t k);

 private:
  std::size_t n_ = 0;
  std::vector<Vector> vectors_;
};

/// Largest |G - I| entry of the Gram matrix of a vector set.
double gram_deviation(std::span<const Vector> vectors);

struct ConeCheck {
  bool member = false;
  double min_eigenvalue = 0.0;
  /// max_k ||L u_k - (u_k^T L u_k) u_k||
  double max_eigvec_residual = 0.0;
  /// max_k |u_k^T L u_k - lambda_k| against the k-th ascending eigenvalue
  double max_eigval_mismatch = 0.0;
};

/// Membership in the cone of PSD matrices whose first K eigenvectors are the
/// prior. Under eigenvalue ties u_k only has to lie in the invariant subspace
/// of lambda_k, which is what the two residuals measure.
ConeCheck check_cone(const SymMatrix& l, const EigenPrior& prior, double tol);
bool cone_contains(const SymMatrix& l, const EigenPrior& prior, double tol);

struct PeelStep {
  double mu = 0.0;
  SymMatrix residual;
};

/// mu = clamp(<E, u u^T>, floor, mu_prev); residual = E - mu u u^T.
PeelStep rank1_peel_prior(const SymMatrix& e, std::span<const double> u, double mu_prev,
                          double floor);

/// argmax e^T v over ||v|| <= 1, v orthogonal to every basis vector.
/// Closed form: the normalized residual of e after removing its basis
/// components. When that residual is <= 1e-10 the first canonical vector
/// that survives orthogonalization is used instead.
Vector max_aligned_unit(std::span<const double> e, std::span<const Vector> basis);

struct ConeProjection {
  SymMatrix projected;  ///< Laplacian side, c_hat^{-1}
  SymMatrix c_hat;      ///< covariance side approximation
  Vector mus;           ///< non-increasing, > 0; mus[t] pairs with direction t
  std::vector<Vector> completed_basis;  ///< v_{K+1}..v_N
};

/// Greedy projection of a PD matrix P onto the cone. Works on C = P^{-1}:
/// peels the prior directions with running-minimum thresholds, then
/// completes the basis one direction at a time from the top eigenvector of
/// the residual. Thresholds are floored at cfg.mu_floor_ratio * mu_1.
ConeProjection project_to_cone(const SymMatrix& p, const EigenPrior& prior,
                               const SolverConfig& cfg = {});

/// <C, u u^T> for a PD C. Always >= 0 since it equals ||u^T B||^2 for any
/// factor C = B B^T; throws NumericError if roundoff takes it below -1e-12.
double prior_energy(const SymMatrix& c, std::span<const double> u);

}  // namespace conelap
