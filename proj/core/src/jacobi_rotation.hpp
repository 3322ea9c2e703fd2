#pragma once

#include <cmath>
#include <cstddef>

#include "conelap/linalg.hpp"

namespace conelap::detail {

/// Rotation J(p, q) with J_pp = J_qq = c, J_pq = s, J_qp = -s that zeroes
/// entry (p, q) of J^T A J. t = tan(angle) with |t| <= 1.
struct Rotation {
  double c = 1.0;
  double s = 0.0;
  double t = 0.0;
};

inline Rotation annihilating_rotation(double app, double aqq, double apq) {
  if (apq == 0.0) return {};
  const double tau = (aqq - app) / (2.0 * apq);
  const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  return {c, t * c, t};
}

/// A <- J^T A J on a full row-major square matrix; (p, q) becomes exactly 0.
inline void rotate_symmetric(Matrix& a, std::size_t p, std::size_t q, const Rotation& r) {
  const std::size_t n = a.rows();
  const double apq = a(p, q);
  for (std::size_t k = 0; k < n; ++k) {
    if (k == p || k == q) continue;
    const double akp = a(k, p);
    const double akq = a(k, q);
    const double nkp = r.c * akp - r.s * akq;
    const double nkq = r.s * akp + r.c * akq;
    a(k, p) = a(p, k) = nkp;
    a(k, q) = a(q, k) = nkq;
  }
  a(p, p) -= r.t * apq;
  a(q, q) += r.t * apq;
  a(p, q) = a(q, p) = 0.0;
}

/// V <- V J
inline void rotate_columns(Matrix& v, std::size_t p, std::size_t q, const Rotation& r) {
  for (std::size_t k = 0; k < v.rows(); ++k) {
    const double vkp = v(k, p);
    const double vkq = v(k, q);
    v(k, p) = r.c * vkp - r.s * vkq;
    v(k, q) = r.s * vkp + r.c * vkq;
  }
}

inline double off_diagonal_norm(const Matrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) s += a(i, j) * a(i, j);
  return std::sqrt(s);
}

}  // namespace conelap::detail
