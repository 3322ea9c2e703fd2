#include "conelap/glasso.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "conelap/errors.hpp"

namespace conelap {

namespace {

constexpr std::size_t kRankUpdateAbove = 32;

SymMatrix principal_minor_without(const SymMatrix& a, std::size_t skip) {
  const std::size_t n = a.n();
  SymMatrix m(n - 1);
  for (std::size_t i = 0, mi = 0; i < n; ++i) {
    if (i == skip) continue;
    for (std::size_t j = i, mj = mi; j < n; ++j) {
      if (j == skip) continue;
      m.set(mi, mj, a(i, j));
      ++mj;
    }
    ++mi;
  }
  return m;
}

Vector column_without(const SymMatrix& a, std::size_t col) {
  Vector v;
  v.reserve(a.n() - 1);
  for (std::size_t i = 0; i < a.n(); ++i)
    if (i != col) v.push_back(a(i, col));
  return v;
}

}  // namespace

double glasso_objective(const SymMatrix& l, const SymMatrix& c_bar, double rho) {
  double l1 = 0.0;
  for (double x : l.data()) l1 += std::abs(x);
  return inner(l, c_bar) - log_det_pd(l) + rho * l1;
}

double glasso_dual_objective(const SymMatrix& c) { return -log_det_pd(c); }

double glasso_duality_gap(const SymMatrix& l, const SymMatrix& c, const SymMatrix& c_bar,
                          double rho) {
  return glasso_objective(l, c_bar, rho) - (log_det_pd(c) + static_cast<double>(c.n()));
}

Vector box_qp_row(const SymMatrix& q, std::span<const double> c12_bar, double rho, double tol,
                  std::optional<std::span<const double>> warm_start, std::size_t max_cycles) {
  const std::size_t m = q.n();
  if (c12_bar.size() != m) throw ValidationError("box_qp_row: dimension mismatch");
  if (!(rho > 0.0)) throw ValidationError("box_qp_row: rho must be > 0");

  Vector lo(m), hi(m), y(m);
  for (std::size_t i = 0; i < m; ++i) {
    lo[i] = c12_bar[i] - rho;
    hi[i] = c12_bar[i] + rho;
    const double start = warm_start ? (*warm_start)[i] : 0.0;
    y[i] = std::clamp(start, lo[i], hi[i]);
  }

  double max_change = 0.0;
  for (std::size_t cycle = 0; cycle < max_cycles; ++cycle) {
    max_change = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      double s = 0.0;
      for (std::size_t k = 0; k < m; ++k)
        if (k != i) s += q(i, k) * y[k];
      const double next = std::clamp(-s / q(i, i), lo[i], hi[i]);
      max_change = std::max(max_change, std::abs(next - y[i]));
      y[i] = next;
    }
    if (max_change <= tol) return y;
  }
  throw ConvergenceError("box_qp_row", max_change);
}

GlassoState GlassoState::initial(const SymMatrix& c_bar, double rho) {
  SymMatrix c = c_bar;
  for (std::size_t i = 0; i < c.n(); ++i) c.set(i, i, c_bar(i, i) + rho);
  return GlassoState{std::move(c), c_bar, rho, 0};
}

GlassoState bcd_sweep(GlassoState state, const SweepOptions& opts) {
  const std::size_t n = state.c_hat.n();
  if (state.c_bar.n() != n) throw ValidationError("bcd_sweep: dimension mismatch");
  SymMatrix& c = state.c_hat;
  const SymMatrix& c_bar = state.c_bar;
  const double rho = state.rho;

  const bool rank_update = opts.block_inverse == BlockInverse::rank_update ||
                           (opts.block_inverse == BlockInverse::automatic && n > kRankUpdateAbove);
  SymMatrix full_inverse;
  if (rank_update && n > 1) full_inverse = inverse_pd(c);

  for (std::size_t j = 0; j < n; ++j) {
    const double c22 = c_bar(j, j) + rho;
    if (n == 1) {
      c.set(0, 0, c22);
      break;
    }

    SymMatrix q;
    if (rank_update) {
      q = principal_minor_without(full_inverse, j);
      const Vector l12 = column_without(full_inverse, j);
      q.add_outer(l12, -1.0 / full_inverse(j, j));
    } else {
      q = inverse_pd(principal_minor_without(c, j));
    }

    const Vector c12_bar = column_without(c_bar, j);
    const Vector current = column_without(c, j);
    const Vector y = box_qp_row(q, c12_bar, rho, opts.qp_tol, std::span<const double>(current),
                                opts.qp_max_cycles);

    const Vector qy = q * y;
    const double schur = c22 - dot(y, qy);
    if (!(schur > 0.0)) throw NotPositiveDefinite("bcd_sweep", j, schur);

    for (std::size_t i = 0, k = 0; i < n; ++i) {
      if (i == j) continue;
      c.set(i, j, y[k++]);
    }
    c.set(j, j, c22);

    if (rank_update) {
      // Block inverse of [[C11, y], [y^T, c22]] given Q = C11^{-1}.
      const double l22 = 1.0 / schur;
      for (std::size_t a = 0, ia = 0; a < n; ++a) {
        if (a == j) continue;
        full_inverse.set(a, j, -qy[ia] * l22);
        for (std::size_t b = a, ib = ia; b < n; ++b) {
          if (b == j) continue;
          full_inverse.set(a, b, q(ia, ib) + qy[ia] * qy[ib] * l22);
          ++ib;
        }
        ++ia;
      }
      full_inverse.set(j, j, l22);
    }
  }
  ++state.sweep;
  return state;
}

GlassoResult solve_glasso(const SymMatrix& c_bar, double rho, const SolverConfig& cfg) {
  if (!(rho > 0.0)) throw ValidationError("solve_glasso: rho must be > 0");
  const SweepOptions opts{cfg.qp_tol, cfg.qp_max_cycles, BlockInverse::automatic};

  GlassoState state = GlassoState::initial(c_bar, rho);
  GlassoResult out;
  for (std::size_t s = 0; s < cfg.max_sweeps; ++s) {
    SymMatrix before = state.c_hat;
    state = bcd_sweep(std::move(state), opts);
    out.sweeps = state.sweep;
    out.last_change = max_abs_diff(before, state.c_hat);
    out.dual_trace.push_back(glasso_dual_objective(state.c_hat));
    if (out.last_change <= cfg.tol) {
      out.converged = true;
      break;
    }
  }
  out.covariance = state.c_hat;
  out.laplacian = inverse_pd(state.c_hat);
  return out;
}

}  // namespace conelap
