#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "conelap/config.hpp"
#include "conelap/metrics.hpp"
#include "conelap/synthgen.hpp"

namespace conelap {

enum class PriorSource {
  ground_truth,  ///< first K eigenvectors of the true Laplacian
  givens,        ///< first K rows of a truncated Givens transform of it
};

/// Laplacian handed to the Givens approximation when PriorSource::givens.
enum class GivensInput {
  glasso_estimate,  ///< unconstrained estimate from the trial's own data
  ground_truth,
};

struct BenchConfig {
  std::size_t trials = 50;
  std::uint64_t base_seed = 0;
  GraphSpec graph;  ///< graph.seed is replaced per trial
  SolverConfig solver;
  PriorSource prior_source = PriorSource::ground_truth;
  std::size_t givens_rotations = 200;
  GivensInput givens_input = GivensInput::glasso_estimate;
  std::vector<std::size_t> ks{1, 2, 3};
  SpectrumScaling scaling = SpectrumScaling::raw;
  /// Worker threads; 0 picks std::thread::hardware_concurrency().
  std::size_t threads = 1;

  void validate() const;
};

struct MethodResult {
  std::string method;  ///< "GLASSO" or "Proj-Lasso"
  std::size_t k = 0;   ///< prior size, 0 for GLASSO
  bool ok = false;
  std::string error;
  MetricTriple metrics;
  bool converged = false;
  std::size_t iterations = 0;
  SymMatrix learned;
};

struct TrialReport {
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  SymMatrix truth;
  std::vector<MethodResult> methods;
  std::string error;  ///< non-empty if data generation itself failed
};

struct MethodSummary {
  std::string method;
  std::size_t k = 0;
  std::size_t count = 0;  ///< successful trials averaged
  MetricTriple mean;
};

struct BenchReport {
  BenchConfig config;
  std::vector<TrialReport> trials;
  std::vector<MethodSummary> summary;
};

/// Seed of trial t: derive_seed(base_seed, t).
std::uint64_t trial_seed(std::uint64_t base_seed, std::size_t trial);

/// One synthetic trial: generate data, run every method, score against the
/// ground-truth Laplacian. Method failures are recorded, not thrown.
TrialReport run_trial(const BenchConfig& cfg, std::size_t trial);

/// All trials (possibly on several threads) plus per-method means. Output
/// order is by trial index regardless of scheduling.
BenchReport run_bench(const BenchConfig& cfg);

/// Per-trial rows followed by one mean row per method.
std::string bench_csv(const BenchReport& report);

/// Metric-by-method table with reference constants in a footnote.
std::string bench_markdown(const BenchReport& report);

}  // namespace conelap
