#pragma once

#include <cstddef>
#include <vector>

#include "conelap/cone.hpp"
#include "conelap/linalg.hpp"

namespace conelap {

struct GivensRotation {
  std::size_t i = 0;
  std::size_t j = 0;  ///< i < j
  double angle = 0.0;  ///< in (-pi/4, pi/4]
};

/// Truncated product of Givens rotations S_1..S_J and the near-diagonal
/// residual lambda_hat = S_J^T ... S_1^T L S_1 ... S_J.
struct GivensProduct {
  std::vector<GivensRotation> rotations;
  SymMatrix lambda_hat;
  /// True when the working matrix became diagonal before J rotations.
  bool stopped_early = false;

  /// T = S_J^T ... S_1^T (rows approximate eigenvectors).
  Matrix transform() const;
};

/// Greedy Jacobi: J times, zero the largest-magnitude off-diagonal entry of
/// the working matrix (ties: smallest (i, j) lexicographically).
GivensProduct greedy_givens_diagonalize(const SymMatrix& l, std::size_t j);

/// Rows of T ordered by ascending lambda_hat diagonal (stable); the first k.
EigenPrior approximate_eigenvectors(const GivensProduct& gp, std::size_t k);

/// Off-diagonal Frobenius norm of a symmetric matrix.
double off_diagonal_norm(const SymMatrix& a);

}  // namespace conelap
