#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "conelap/linalg.hpp"

namespace conelap {

/// How node degrees are formed from signed weights.
enum class DegreeRule {
  /// D_ii = sum_j |W_ij|; the Laplacian of any signed graph is then PSD.
  absolute,
  /// D_ii = sum_j W_ij; negative edges usually make L + eps I indefinite.
  signed_sum,
};

struct GraphSpec {
  std::size_t n = 20;
  double er_prob = 0.6;
  double sigma = 0.5;
  double weight_threshold = 0.75;
  double flip_prob = 0.5;
  double diag_eps = 0.5;
  std::size_t m_signals = 20;
  std::uint64_t seed = 0;
  DegreeRule degree_rule = DegreeRule::absolute;

  /// Throws ValidationError naming the offending field.
  void validate() const;
};

using Point2 = std::array<double, 2>;

struct GroundTruth {
  std::vector<Point2> positions;
  SymMatrix adjacency;  ///< signed weights, zero diagonal
  SymMatrix laplacian;
  SymMatrix covariance;  ///< (laplacian + diag_eps I)^{-1}
  std::vector<Vector> signals;
  SymMatrix empirical_cov;
  /// Regeneration attempt that produced a PD covariance (0 = first).
  std::size_t attempt = 0;
};

/// D - W + diag(W). With the default rule D_ii = sum_j W_ij (signed), a
/// self-loop counted twice.
SymMatrix assemble_generalized_laplacian(const SymMatrix& w,
                                         DegreeRule rule = DegreeRule::signed_sum);

/// Random signed geometric graph and Gaussian signals drawn from it.
///
/// Attempt a draws from Rng(derive_seed(spec.seed, a)) in this order:
///   1. positions, uniform in the unit square, node by node (x then y);
///   2. one edge coin per pair i < j in row-major order (edge iff u < er_prob);
///   3. one sign coin per pair i < j in the same order (flip iff u < flip_prob),
///      drawn for every pair, applied only to surviving edges;
///   4. the m_signals Gaussian samples.
/// Edge weights are exp(-d^2 / (2 sigma^2)); weights strictly below
/// weight_threshold are dropped. The Laplacian uses spec.degree_rule. If laplacian + diag_eps I is not PD the
/// next attempt runs; after 100 failed attempts NumericError is thrown.
GroundTruth generate(const GraphSpec& spec);

}  // namespace conelap
