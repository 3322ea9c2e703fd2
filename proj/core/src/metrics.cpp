#include "conelap/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "conelap/errors.hpp"

namespace conelap {

namespace {

Vector scaled_spectrum(const SymMatrix& a, SpectrumScaling scaling) {
  Vector ev = eig_sym(a).eigenvalues;
  if (scaling == SpectrumScaling::unit_radius) {
    double radius = 0.0;
    for (double x : ev) radius = std::max(radius, std::abs(x));
    if (radius > 0.0)
      for (double& x : ev) x /= radius;
  }
  return ev;
}

SymMatrix affinity(const SymMatrix& adj) {
  const std::size_t n = adj.n();
  Vector degree(n, 0.0);
  double max_degree = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) degree[i] += std::abs(adj(i, j));
    max_degree = std::max(max_degree, degree[i]);
  }
  const double eps = 1.0 / (1.0 + max_degree);
  SymMatrix system(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      const double base = i == j ? 1.0 + eps * eps * degree[i] : 0.0;
      system.set(i, j, base - eps * adj(i, j));
    }
  return inverse_pd(system);
}

}  // namespace

double relative_error(const SymMatrix& truth, const SymMatrix& learned) {
  if (truth.n() != learned.n()) throw ValidationError("relative_error: dimension mismatch");
  const double denom = truth.frobenius_norm();
  if (denom == 0.0) throw ValidationError("relative_error: ground truth is the zero matrix");
  return (truth - learned).frobenius_norm() / denom;
}

double lambda_distance(const SymMatrix& a, const SymMatrix& b, SpectrumScaling scaling) {
  if (a.n() != b.n()) throw ValidationError("lambda_distance: dimension mismatch");
  const Vector ea = scaled_spectrum(a, scaling);
  const Vector eb = scaled_spectrum(b, scaling);
  double s = 0.0;
  for (std::size_t i = 0; i < ea.size(); ++i) s += (ea[i] - eb[i]) * (ea[i] - eb[i]);
  return std::sqrt(s);
}

double deltacon(const SymMatrix& a_adj, const SymMatrix& b_adj) {
  if (a_adj.n() != b_adj.n()) throw ValidationError("deltacon: dimension mismatch");
  const SymMatrix sa = affinity(a_adj);
  const SymMatrix sb = affinity(b_adj);
  double s = 0.0;
  for (std::size_t k = 0; k < sa.data().size(); ++k) {
    const double d = std::sqrt(std::max(sa.data()[k], 0.0)) - std::sqrt(std::max(sb.data()[k], 0.0));
    s += d * d;
  }
  return 1.0 / (1.0 + std::sqrt(s));
}

SymMatrix laplacian_to_adjacency(const SymMatrix& l) {
  SymMatrix w(l.n());
  for (std::size_t i = 0; i < l.n(); ++i)
    for (std::size_t j = i + 1; j < l.n(); ++j) w.set(i, j, 0.0 - l(i, j));
  return w;
}

MetricTriple compare_laplacians(const SymMatrix& truth, const SymMatrix& learned,
                                SpectrumScaling scaling) {
  return {relative_error(truth, learned),
          deltacon(laplacian_to_adjacency(truth), laplacian_to_adjacency(learned)),
          lambda_distance(truth, learned, scaling)};
}

}  // namespace conelap
