#include "conelap/fgft.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "conelap/errors.hpp"
#include "jacobi_rotation.hpp"

namespace conelap {

Matrix GivensProduct::transform() const {
  const std::size_t n = lambda_hat.n();
  // V = S_1 ... S_J, T = V^T.
  Matrix v = Matrix::identity(n);
  for (const auto& r : rotations) {
    const double t = std::tan(r.angle);
    const double c = std::cos(r.angle);
    detail::rotate_columns(v, r.i, r.j, {c, std::sin(r.angle), t});
  }
  return v.transposed();
}

GivensProduct greedy_givens_diagonalize(const SymMatrix& l, std::size_t j_count) {
  const std::size_t n = l.n();
  Matrix work = l.to_matrix();
  GivensProduct out;
  out.rotations.reserve(j_count);

  for (std::size_t step = 0; step < j_count; ++step) {
    std::size_t bi = 0, bj = 0;
    double best = 0.0;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q)
        if (std::abs(work(p, q)) > best) {
          best = std::abs(work(p, q));
          bi = p;
          bj = q;
        }
    if (best == 0.0) {
      out.stopped_early = true;
      break;
    }
    const auto r = detail::annihilating_rotation(work(bi, bi), work(bj, bj), work(bi, bj));
    detail::rotate_symmetric(work, bi, bj, r);
    out.rotations.push_back({bi, bj, std::atan(r.t)});
  }
  out.lambda_hat = SymMatrix::symmetrized(work);
  return out;
}

EigenPrior approximate_eigenvectors(const GivensProduct& gp, std::size_t k) {
  const std::size_t n = gp.lambda_hat.n();
  if (k == 0 || k > n) throw ValidationError("approximate_eigenvectors: k must be in [1, n]");
  const Matrix t = gp.transform();
  const Vector diag = gp.lambda_hat.diag();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return diag[a] < diag[b]; });
  std::vector<Vector> rows;
  rows.reserve(k);
  for (std::size_t i = 0; i < k; ++i) rows.push_back(t.row(order[i]));
  return EigenPrior(std::move(rows));
}

double off_diagonal_norm(const SymMatrix& a) { return detail::off_diagonal_norm(a.to_matrix()); }

}  // namespace conelap
