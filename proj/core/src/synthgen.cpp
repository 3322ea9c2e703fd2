#include "conelap/synthgen.hpp"

#include <cmath>
#include <string>

#include "conelap/errors.hpp"
#include "conelap/rng.hpp"

namespace conelap {

namespace {

constexpr std::size_t kMaxAttempts = 100;

bool is_probability(double p) { return p >= 0.0 && p <= 1.0; }

}  // namespace

void GraphSpec::validate() const {
  auto fail = [](const std::string& field, const std::string& why) {
    throw ValidationError("GraphSpec." + field + " " + why);
  };
  if (n == 0) fail("n", "must be >= 1");
  if (!is_probability(er_prob)) fail("er_prob", "must be in [0, 1]");
  if (!is_probability(flip_prob)) fail("flip_prob", "must be in [0, 1]");
  if (!(sigma > 0.0)) fail("sigma", "must be > 0");
  if (!(diag_eps > 0.0)) fail("diag_eps", "must be > 0");
  if (std::isnan(weight_threshold)) fail("weight_threshold", "must be a number");
  if (m_signals == 0) fail("m_signals", "must be >= 1");
}

SymMatrix assemble_generalized_laplacian(const SymMatrix& w, DegreeRule rule) {
  const std::size_t n = w.n();
  SymMatrix l(n);
  for (std::size_t i = 0; i < n; ++i) {
    // a self-loop enters the degree at both of its ends
    double degree = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double x = rule == DegreeRule::absolute ? std::abs(w(i, j)) : w(i, j);
      degree += i == j ? 2.0 * x : x;
    }
    for (std::size_t j = i + 1; j < n; ++j) l.set(i, j, -w(i, j));
    l.set(i, i, degree - w(i, i) + w(i, i));
  }
  return l;
}

GroundTruth generate(const GraphSpec& spec) {
  spec.validate();
  const std::size_t n = spec.n;

  for (std::size_t attempt = 0; attempt < kMaxAttempts; ++attempt) {
    Rng rng(derive_seed(spec.seed, attempt));
    GroundTruth gt;
    gt.attempt = attempt;

    gt.positions.resize(n);
    for (auto& p : gt.positions) {
      p[0] = rng.uniform();
      p[1] = rng.uniform();
    }

    std::vector<bool> edge;
    edge.reserve(n * (n - 1) / 2);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) edge.push_back(rng.uniform() < spec.er_prob);

    gt.adjacency = SymMatrix(n);
    const double two_sigma2 = 2.0 * spec.sigma * spec.sigma;
    for (std::size_t i = 0, e = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j, ++e) {
        if (!edge[e]) continue;
        const double dx = gt.positions[i][0] - gt.positions[j][0];
        const double dy = gt.positions[i][1] - gt.positions[j][1];
        const double w = std::exp(-(dx * dx + dy * dy) / two_sigma2);
        if (w < spec.weight_threshold) continue;
        gt.adjacency.set(i, j, w);
      }

    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        const bool flip = rng.uniform() < spec.flip_prob;
        if (flip && gt.adjacency(i, j) != 0.0) gt.adjacency.set(i, j, -gt.adjacency(i, j));
      }

    gt.laplacian = assemble_generalized_laplacian(gt.adjacency, spec.degree_rule);
    SymMatrix shifted = gt.laplacian;
    for (std::size_t i = 0; i < n; ++i) shifted.set(i, i, shifted(i, i) + spec.diag_eps);
    if (!is_positive_definite(shifted)) continue;

    gt.covariance = inverse_pd(shifted);
    gt.signals = sample_gaussian(gt.covariance, spec.m_signals, rng);
    gt.empirical_cov = empirical_covariance(gt.signals);
    return gt;
  }
  throw NumericError("generate: laplacian + eps I not positive definite after " +
                     std::to_string(kMaxAttempts) + " attempts");
}

}  // namespace conelap
