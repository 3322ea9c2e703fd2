#pragma once

#include "conelap/linalg.hpp"

namespace conelap {

struct MetricTriple {
  double re = 0.0;
  double deltacon = 1.0;
  double lambda_dist = 0.0;
};

/// ||truth - learned||_F / ||truth||_F
double relative_error(const SymMatrix& truth, const SymMatrix& learned);

enum class SpectrumScaling {
  raw,
  /// each spectrum divided by its largest absolute eigenvalue
  unit_radius,
};

/// Euclidean distance between ascending eigenvalue vectors.
double lambda_distance(const SymMatrix& a, const SymMatrix& b,
                       SpectrumScaling scaling = SpectrumScaling::raw);

/// DeltaCon similarity in (0, 1] between two weighted adjacency matrices.
///
/// For each graph X: D_X holds absolute-weight degrees, eps_X = 1 / (1 + max D_X),
/// and the affinity matrix is S_X = (I + eps_X^2 D_X - eps_X A_X)^{-1}, which is
/// PD by diagonal dominance even with signed weights. Negative affinities are
/// clamped to 0, and the similarity is 1 / (1 + d) with
/// d = sqrt(sum_ij (sqrt S_A - sqrt S_B)^2).
double deltacon(const SymMatrix& a_adj, const SymMatrix& b_adj);

/// W_ij = -L_ij off the diagonal, W_ii = 0.
SymMatrix laplacian_to_adjacency(const SymMatrix& l);

/// All three metrics for a learned Laplacian against the ground truth.
MetricTriple compare_laplacians(const SymMatrix& truth, const SymMatrix& learned,
                                SpectrumScaling scaling = SpectrumScaling::raw);

}  // namespace conelap
