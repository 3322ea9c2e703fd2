#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "conelap/rng.hpp"

namespace conelap {

using Vector = std::vector<double>;

/// Dense row-major n x n matrix with no structural assumptions.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

  static Matrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }

  Vector column(std::size_t j) const;
  Vector row(std::size_t i) const;
  Matrix transposed() const;

  std::span<const double> data() const noexcept { return data_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);

/// Real symmetric n x n matrix. Storage is full row-major; every write goes to
/// both (i, j) and (j, i), so entries are exactly symmetric at all times.
/// A default-constructed SymMatrix is an empty placeholder with n() == 0.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(std::size_t n);

  static SymMatrix identity(std::size_t n);
  static SymMatrix diagonal(std::span<const double> diag);
  /// Symmetrizes (A + A^T) / 2 from a row-major n*n buffer.
  static SymMatrix from_rows(std::size_t n, std::span<const double> row_major);
  /// scale * v v^T
  static SymMatrix outer(std::span<const double> v, double scale = 1.0);
  /// Symmetric part of a general square matrix.
  static SymMatrix symmetrized(const Matrix& m);

  std::size_t n() const noexcept { return n_; }

  double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  void set(std::size_t i, std::size_t j, double v) {
    data_[i * n_ + j] = v;
    data_[j * n_ + i] = v;
  }

  std::span<const double> data() const noexcept { return data_; }
  Vector diag() const;
  Matrix to_matrix() const;

  double trace() const;
  double frobenius_norm() const;
  double max_abs() const;

  /// this += scale * v v^T
  void add_outer(std::span<const double> v, double scale);

  SymMatrix& operator+=(const SymMatrix& o);
  SymMatrix& operator-=(const SymMatrix& o);
  SymMatrix& operator*=(double s);

  friend bool operator==(const SymMatrix&, const SymMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

SymMatrix operator+(SymMatrix a, const SymMatrix& b);
SymMatrix operator-(SymMatrix a, const SymMatrix& b);
SymMatrix operator*(double s, SymMatrix a);
Matrix operator*(const SymMatrix& a, const SymMatrix& b);
Vector operator*(const SymMatrix& a, std::span<const double> x);

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);

/// Frobenius inner product sum_ij P_ij Q_ij.
double inner(const SymMatrix& p, const SymMatrix& q);

/// x^T A x, equal to inner(A, x x^T).
double quadratic_form(const SymMatrix& a, std::span<const double> x);

/// max_ij |a_ij - b_ij|
double max_abs_diff(const SymMatrix& a, const SymMatrix& b);

struct EigenDecomp {
  Vector eigenvalues;  ///< ascending
  Matrix eigenvectors;  ///< column k pairs with eigenvalues[k]

  Vector vector(std::size_t k) const { return eigenvectors.column(k); }
};

/// Cyclic Jacobi eigensolver. Sweeps rotate (p, q) pairs in row-major order
/// until the off-diagonal Frobenius norm is <= 1e-12 * ||A||_F, capped at 100
/// sweeps (ConvergenceError otherwise). Eigenvalues come back ascending; each
/// eigenvector is signed so its largest-magnitude entry (lowest index on
/// ties) is positive.
EigenDecomp eig_sym(const SymMatrix& a);

/// Lower-triangular Cholesky factor B with B B^T = A. Fails with
/// NotPositiveDefinite when a pivot drops to 1e-12 * max diagonal or below.
Matrix cholesky(const SymMatrix& a);

SymMatrix inverse_pd(const SymMatrix& a);

/// log det A for symmetric positive definite A.
double log_det_pd(const SymMatrix& a);

bool is_positive_definite(const SymMatrix& a);

/// m draws x = B z, z ~ N(0, I), B = cholesky(cov). Draw order: sample by
/// sample, coordinate by coordinate.
std::vector<Vector> sample_gaussian(const SymMatrix& cov, std::size_t m, Rng& rng);
std::vector<Vector> sample_gaussian(const SymMatrix& cov, std::size_t m, std::uint64_t seed);

/// (1/M) sum (x - mean)(x - mean)^T
SymMatrix empirical_covariance(std::span<const Vector> samples);

}  // namespace conelap
