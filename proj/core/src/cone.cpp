#include "conelap/cone.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "conelap/errors.hpp"

namespace conelap {

namespace {

constexpr double kDegenerateResidual = 1e-10;

/// Two passes of modified Gram-Schmidt against an orthonormal basis.
Vector orthogonalize(Vector r, std::span<const Vector> basis) {
  for (int pass = 0; pass < 2; ++pass)
    for (const auto& b : basis) {
      const double c = dot(r, b);
      for (std::size_t i = 0; i < r.size(); ++i) r[i] -= c * b[i];
    }
  return r;
}

Vector normalized(Vector v) {
  const double nrm = norm2(v);
  for (auto& x : v) x /= nrm;
  return v;
}

}  // namespace

EigenPrior::EigenPrior(std::vector<Vector> vectors, double tol) : vectors_(std::move(vectors)) {
  if (vectors_.empty()) throw ValidationError("EigenPrior: need at least one vector");
  n_ = vectors_.front().size();
  if (n_ == 0) throw ValidationError("EigenPrior: vectors must be non-empty");
  if (vectors_.size() > n_)
    throw ValidationError("EigenPrior: K = " + std::to_string(vectors_.size()) + " exceeds n = " +
                          std::to_string(n_));
  for (const auto& v : vectors_)
    if (v.size() != n_) throw ValidationError("EigenPrior: vectors differ in length");
  const double dev = gram_deviation(vectors_);
  if (!(dev <= tol))
    throw ValidationError("EigenPrior: vectors are not orthonormal (Gram deviation " +
                          std::to_string(dev) + ")");
}

EigenPrior EigenPrior::leading(const EigenDecomp& eig, std::size_t k) {
  if (k == 0 || k > eig.eigenvalues.size())
    throw ValidationError("EigenPrior::leading: k out of range");
  std::vector<Vector> vs;
  vs.reserve(k);
  for (std::size_t i = 0; i < k; ++i) vs.push_back(eig.vector(i));
  return EigenPrior(std::move(vs));
}

double gram_deviation(std::span<const Vector> vectors) {
  double dev = 0.0;
  for (std::size_t j = 0; j < vectors.size(); ++j)
    for (std::size_t k = j; k < vectors.size(); ++k) {
      const double target = j == k ? 1.0 : 0.0;
      dev = std::max(dev, std::abs(dot(vectors[j], vectors[k]) - target));
    }
  return dev;
}

ConeCheck check_cone(const SymMatrix& l, const EigenPrior& prior, double tol) {
  if (l.n() != prior.n())
    throw ValidationError("cone_contains: matrix is " + std::to_string(l.n()) +
                          "-dimensional, prior is " + std::to_string(prior.n()));
  const EigenDecomp eig = eig_sym(l);
  ConeCheck out;
  out.min_eigenvalue = eig.eigenvalues.front();
  for (std::size_t k = 0; k < prior.k(); ++k) {
    const Vector& u = prior[k];
    Vector r = l * u;
    const double q = dot(u, r);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= q * u[i];
    out.max_eigvec_residual = std::max(out.max_eigvec_residual, norm2(r));
    out.max_eigval_mismatch = std::max(out.max_eigval_mismatch, std::abs(q - eig.eigenvalues[k]));
  }
  out.member = out.min_eigenvalue >= -tol && out.max_eigvec_residual <= tol &&
               out.max_eigval_mismatch <= tol;
  return out;
}

bool cone_contains(const SymMatrix& l, const EigenPrior& prior, double tol) {
  return check_cone(l, prior, tol).member;
}

PeelStep rank1_peel_prior(const SymMatrix& e, std::span<const double> u, double mu_prev,
                          double floor) {
  const double mu = std::min(std::max(quadratic_form(e, u), floor), mu_prev);
  PeelStep step{mu, e};
  step.residual.add_outer(u, -mu);
  return step;
}

Vector max_aligned_unit(std::span<const double> e, std::span<const Vector> basis) {
  const std::size_t n = e.size();
  if (basis.size() >= n)
    throw ValidationError("max_aligned_unit: basis already spans the whole space");
  Vector r = orthogonalize(Vector(e.begin(), e.end()), basis);
  if (norm2(r) > kDegenerateResidual) return normalized(orthogonalize(normalized(r), basis));

  for (std::size_t i = 0; i < n; ++i) {
    Vector c(n, 0.0);
    c[i] = 1.0;
    c = orthogonalize(std::move(c), basis);
    if (norm2(c) > kDegenerateResidual) return normalized(orthogonalize(normalized(c), basis));
  }
  throw NumericError("max_aligned_unit: no canonical vector survives orthogonalization");
}

ConeProjection project_to_cone(const SymMatrix& p, const EigenPrior& prior,
                               const SolverConfig& cfg) {
  const std::size_t n = p.n();
  if (n != prior.n())
    throw ValidationError("project_to_cone: matrix is " + std::to_string(n) +
                          "-dimensional, prior is " + std::to_string(prior.n()));
  const SymMatrix c = inverse_pd(p);

  ConeProjection out;
  out.mus.reserve(n);
  std::vector<Vector> directions(prior.vectors().begin(), prior.vectors().end());
  directions.reserve(n);

  const double mu1_raw = quadratic_form(c, prior[0]);
  // mu_1 > 0 for PD C; the floor only guards roundoff.
  const double mu1 = std::max(mu1_raw, std::numeric_limits<double>::min());
  const double floor = cfg.mu_floor_ratio * mu1;
  out.mus.push_back(std::max(mu1, floor));

  SymMatrix residual = c;
  residual.add_outer(prior[0], -out.mus[0]);

  for (std::size_t t = 1; t < prior.k(); ++t) {
    PeelStep step = rank1_peel_prior(residual, prior[t], out.mus.back(), floor);
    out.mus.push_back(step.mu);
    residual = std::move(step.residual);
  }

  for (std::size_t t = prior.k(); t < n; ++t) {
    const EigenDecomp eig = eig_sym(residual);
    const Vector top = eig.vector(n - 1);
    Vector v = max_aligned_unit(top, directions);
    const double mu = std::min(std::max(quadratic_form(residual, v), floor), out.mus.back());
    residual.add_outer(v, -mu);
    out.mus.push_back(mu);
    out.completed_basis.push_back(v);
    directions.push_back(std::move(v));
  }

  out.c_hat = SymMatrix(n);
  out.projected = SymMatrix(n);
  for (std::size_t t = 0; t < n; ++t) {
    out.c_hat.add_outer(directions[t], out.mus[t]);
    out.projected.add_outer(directions[t], 1.0 / out.mus[t]);
  }
  return out;
}

double prior_energy(const SymMatrix& c, std::span<const double> u) {
  const double v = quadratic_form(c, u);
  if (v < -1e-12) throw NumericError("prior_energy: negative energy " + std::to_string(v));
  return v;
}

}  // namespace conelap
