#include "conelap/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "conelap/errors.hpp"
#include "jacobi_rotation.hpp"

namespace conelap {

namespace {

void require_same_dim(std::size_t a, std::size_t b, const char* where) {
  if (a != b)
    throw ValidationError(std::string(where) + ": dimension mismatch (" + std::to_string(a) +
                          " vs " + std::to_string(b) + ")");
}

constexpr double kJacobiTolerance = 1e-12;
constexpr int kJacobiMaxSweeps = 100;
constexpr double kPivotFloor = 1e-12;

}  // namespace

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Vector Matrix::column(std::size_t j) const {
  Vector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

Vector Matrix::row(std::size_t i) const {
  return Vector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  require_same_dim(a.cols(), b.rows(), "matrix product");
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

SymMatrix::SymMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {
  if (n == 0) throw ValidationError("SymMatrix: dimension must be >= 1");
}

SymMatrix SymMatrix::identity(std::size_t n) {
  SymMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = 1.0;
  return m;
}

SymMatrix SymMatrix::diagonal(std::span<const double> diag) {
  SymMatrix m(diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m.data_[i * m.n_ + i] = diag[i];
  return m;
}

SymMatrix SymMatrix::from_rows(std::size_t n, std::span<const double> row_major) {
  if (row_major.size() != n * n)
    throw ValidationError("SymMatrix::from_rows: expected " + std::to_string(n * n) +
                          " entries, got " + std::to_string(row_major.size()));
  SymMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    m.data_[i * n + i] = row_major[i * n + i];
    for (std::size_t j = i + 1; j < n; ++j)
      m.set(i, j, 0.5 * (row_major[i * n + j] + row_major[j * n + i]));
  }
  return m;
}

SymMatrix SymMatrix::outer(std::span<const double> v, double scale) {
  SymMatrix m(v.size());
  m.add_outer(v, scale);
  return m;
}

SymMatrix SymMatrix::symmetrized(const Matrix& m) {
  require_same_dim(m.rows(), m.cols(), "SymMatrix::symmetrized");
  return from_rows(m.rows(), m.data());
}

Vector SymMatrix::diag() const {
  Vector d(n_);
  for (std::size_t i = 0; i < n_; ++i) d[i] = data_[i * n_ + i];
  return d;
}

Matrix SymMatrix::to_matrix() const {
  Matrix m(n_, n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) m(i, j) = (*this)(i, j);
  return m;
}

double SymMatrix::trace() const {
  double t = 0.0;
  for (std::size_t i = 0; i < n_; ++i) t += data_[i * n_ + i];
  return t;
}

double SymMatrix::frobenius_norm() const { return std::sqrt(inner(*this, *this)); }

double SymMatrix::max_abs() const {
  double m = 0.0;
  for (double x : data_) m = std::max(m, std::abs(x));
  return m;
}

void SymMatrix::add_outer(std::span<const double> v, double scale) {
  require_same_dim(n_, v.size(), "SymMatrix::add_outer");
  for (std::size_t i = 0; i < n_; ++i) {
    const double si = scale * v[i];
    data_[i * n_ + i] += si * v[i];
    for (std::size_t j = i + 1; j < n_; ++j) {
      const double x = si * v[j];
      data_[i * n_ + j] += x;
      data_[j * n_ + i] += x;
    }
  }
}

SymMatrix& SymMatrix::operator+=(const SymMatrix& o) {
  require_same_dim(n_, o.n_, "SymMatrix +");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
  return *this;
}

SymMatrix& SymMatrix::operator-=(const SymMatrix& o) {
  require_same_dim(n_, o.n_, "SymMatrix -");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
  return *this;
}

SymMatrix& SymMatrix::operator*=(double s) {
  for (double& x : data_) x *= s;
  return *this;
}

SymMatrix operator+(SymMatrix a, const SymMatrix& b) { return a += b; }
SymMatrix operator-(SymMatrix a, const SymMatrix& b) { return a -= b; }
SymMatrix operator*(double s, SymMatrix a) { return a *= s; }

Matrix operator*(const SymMatrix& a, const SymMatrix& b) { return a.to_matrix() * b.to_matrix(); }

Vector operator*(const SymMatrix& a, std::span<const double> x) {
  require_same_dim(a.n(), x.size(), "SymMatrix * vector");
  Vector y(a.n(), 0.0);
  for (std::size_t i = 0; i < a.n(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.n(); ++j) s += a(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

double dot(std::span<const double> a, std::span<const double> b) {
  require_same_dim(a.size(), b.size(), "dot");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

double inner(const SymMatrix& p, const SymMatrix& q) {
  require_same_dim(p.n(), q.n(), "inner");
  const auto pd = p.data();
  const auto qd = q.data();
  double s = 0.0;
  for (std::size_t k = 0; k < pd.size(); ++k) s += pd[k] * qd[k];
  return s;
}

double quadratic_form(const SymMatrix& a, std::span<const double> x) {
  require_same_dim(a.n(), x.size(), "quadratic_form");
  double s = 0.0;
  for (std::size_t i = 0; i < a.n(); ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < a.n(); ++j) row += a(i, j) * x[j];
    s += x[i] * row;
  }
  return s;
}

double max_abs_diff(const SymMatrix& a, const SymMatrix& b) {
  require_same_dim(a.n(), b.n(), "max_abs_diff");
  double m = 0.0;
  for (std::size_t k = 0; k < a.data().size(); ++k)
    m = std::max(m, std::abs(a.data()[k] - b.data()[k]));
  return m;
}

EigenDecomp eig_sym(const SymMatrix& a) {
  const std::size_t n = a.n();
  Matrix work = a.to_matrix();
  Matrix v = Matrix::identity(n);
  const double threshold = kJacobiTolerance * a.frobenius_norm();

  double off = detail::off_diagonal_norm(work);
  for (int sweep = 0; off > threshold; ++sweep) {
    if (sweep == kJacobiMaxSweeps) throw ConvergenceError("eig_sym", off);
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        const auto r = detail::annihilating_rotation(work(p, p), work(q, q), work(p, q));
        if (r.s == 0.0) continue;
        detail::rotate_symmetric(work, p, q, r);
        detail::rotate_columns(v, p, q, r);
      }
    off = detail::off_diagonal_norm(work);
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return work(i, i) < work(j, j); });

  EigenDecomp out{Vector(n), Matrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t src = order[k];
    out.eigenvalues[k] = work(src, src);
    std::size_t arg = 0;
    for (std::size_t i = 1; i < n; ++i)
      if (std::abs(v(i, src)) > std::abs(v(arg, src))) arg = i;
    const double sign = v(arg, src) < 0.0 ? -1.0 : 1.0;
    for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, k) = sign * v(i, src);
  }
  return out;
}

Matrix cholesky(const SymMatrix& a) {
  const std::size_t n = a.n();
  double max_diag = 0.0;
  for (std::size_t i = 0; i < n; ++i) max_diag = std::max(max_diag, a(i, i));
  const double floor = kPivotFloor * max_diag;

  Matrix b(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double d = a(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= b(j, k) * b(j, k);
    if (!(d > floor) || max_diag <= 0.0) throw NotPositiveDefinite("cholesky", j, d);
    const double bjj = std::sqrt(d);
    b(j, j) = bjj;
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = a(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= b(i, k) * b(j, k);
      b(i, j) = s / bjj;
    }
  }
  return b;
}

SymMatrix inverse_pd(const SymMatrix& a) {
  const std::size_t n = a.n();
  const Matrix b = cholesky(a);
  // Forward substitution for B^{-1} (lower triangular).
  Matrix binv(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    binv(j, j) = 1.0 / b(j, j);
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = 0.0;
      for (std::size_t k = j; k < i; ++k) s -= b(i, k) * binv(k, j);
      binv(i, j) = s / b(i, i);
    }
  }
  // A^{-1} = B^{-T} B^{-1}
  SymMatrix inv(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = j; k < n; ++k) s += binv(k, i) * binv(k, j);
      inv.set(i, j, s);
    }
  return inv;
}

double log_det_pd(const SymMatrix& a) {
  const Matrix b = cholesky(a);
  double s = 0.0;
  for (std::size_t i = 0; i < a.n(); ++i) s += std::log(b(i, i));
  return 2.0 * s;
}

bool is_positive_definite(const SymMatrix& a) {
  try {
    (void)cholesky(a);
    return true;
  } catch (const NotPositiveDefinite&) {
    return false;
  }
}

std::vector<Vector> sample_gaussian(const SymMatrix& cov, std::size_t m, Rng& rng) {
  const std::size_t n = cov.n();
  const Matrix b = cholesky(cov);
  std::vector<Vector> out(m, Vector(n, 0.0));
  Vector z(n);
  for (auto& x : out) {
    for (auto& zi : z) zi = rng.normal();
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t k = 0; k <= i; ++k) s += b(i, k) * z[k];
      x[i] = s;
    }
  }
  return out;
}

std::vector<Vector> sample_gaussian(const SymMatrix& cov, std::size_t m, std::uint64_t seed) {
  Rng rng(seed);
  return sample_gaussian(cov, m, rng);
}

SymMatrix empirical_covariance(std::span<const Vector> samples) {
  if (samples.empty()) throw ValidationError("empirical_covariance: no samples");
  const std::size_t n = samples.front().size();
  if (n == 0) throw ValidationError("empirical_covariance: zero-length samples");
  for (const auto& x : samples) require_same_dim(n, x.size(), "empirical_covariance");

  const double inv_m = 1.0 / static_cast<double>(samples.size());
  Vector mean(n, 0.0);
  for (const auto& x : samples)
    for (std::size_t i = 0; i < n; ++i) mean[i] += x[i];
  for (auto& v : mean) v *= inv_m;

  SymMatrix c(n);
  Vector d(n);
  for (const auto& x : samples) {
    for (std::size_t i = 0; i < n; ++i) d[i] = x[i] - mean[i];
    c.add_outer(d, inv_m);
  }
  return c;
}

}  // namespace conelap
