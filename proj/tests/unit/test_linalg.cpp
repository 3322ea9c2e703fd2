#include <doctest.h>

#include <cmath>

#include "conelap/errors.hpp"
#include "conelap/linalg.hpp"
#include "conelap/rng.hpp"
#include "oracles.hpp"

using namespace conelap;

namespace {
SymMatrix sym2(double a, double b, double c) {
  const double rows[] = {a, b, b, c};
  return SymMatrix::from_rows(2, rows);
}
SymMatrix diag(std::initializer_list<double> d) {
  std::vector<double> v(d);
  return SymMatrix::diagonal(v);
}
}  // namespace

TEST_SUITE("linalg") {
  TEST_CASE("inner product examples") {
    CHECK(inner(SymMatrix::identity(3), SymMatrix::identity(3)) == doctest::Approx(3.0));
    CHECK(inner(sym2(1, 2, 0), sym2(0, 1, 3)) == doctest::Approx(4.0));
    Rng rng(1);
    const SymMatrix p = oracle::random_symmetric(5, rng);
    CHECK(inner(p, p) == doctest::Approx(p.frobenius_norm() * p.frobenius_norm()));
    CHECK_THROWS_AS(inner(SymMatrix::identity(2), SymMatrix::identity(3)), ValidationError);
  }

  TEST_CASE("inner is bilinear and symmetric") {
    Rng rng(2);
    for (int rep = 0; rep < 20; ++rep) {
      const SymMatrix p = oracle::random_symmetric(4, rng);
      const SymMatrix q = oracle::random_symmetric(4, rng);
      const SymMatrix r = oracle::random_symmetric(4, rng);
      CHECK(inner(p, q) == doctest::Approx(inner(q, p)).epsilon(1e-12));
      CHECK(inner(2.5 * p + q, r) ==
            doctest::Approx(2.5 * inner(p, r) + inner(q, r)).epsilon(1e-12));
      CHECK(inner(p, p) > 0.0);
    }
    CHECK(inner(SymMatrix(3), SymMatrix(3)) == 0.0);
  }

  TEST_CASE("eig_sym examples") {
    const EigenDecomp d = eig_sym(diag({3, 1, 2}));
    CHECK(d.eigenvalues == Vector{1, 2, 3});
    CHECK(d.vector(0) == Vector{0, 1, 0});
    CHECK(d.vector(1) == Vector{0, 0, 1});
    CHECK(d.vector(2) == Vector{1, 0, 0});

    const EigenDecomp id = eig_sym(SymMatrix::identity(4));
    for (double v : id.eigenvalues) CHECK(v == 1.0);

    const EigenDecomp e = eig_sym(sym2(2, 1, 2));
    const double h = 1.0 / std::sqrt(2.0);
    CHECK(e.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(e.eigenvalues[1] == doctest::Approx(3.0).epsilon(1e-14));
    // largest-magnitude entry positive, lowest index on ties
    CHECK(e.vector(0)[0] == doctest::Approx(h).epsilon(1e-14));
    CHECK(e.vector(0)[1] == doctest::Approx(-h).epsilon(1e-14));
    CHECK(e.vector(1)[0] == doctest::Approx(h).epsilon(1e-14));
    CHECK(e.vector(1)[1] == doctest::Approx(h).epsilon(1e-14));
  }

  TEST_CASE("eig_sym invariants on random input") {
    Rng rng(3);
    for (std::size_t n : {2u, 5u, 10u, 20u, 40u}) {
      const SymMatrix a = oracle::random_symmetric(n, rng);
      const EigenDecomp d = eig_sym(a);
      const Matrix v = d.eigenvectors;
      const Matrix vtv = v.transposed() * v;
      CHECK(oracle::frobenius_diff(vtv, Matrix::identity(n)) <= 1e-10);
      for (std::size_t k = 1; k < n; ++k) CHECK(d.eigenvalues[k - 1] <= d.eigenvalues[k]);
      CHECK(quadratic_form(a, d.vector(0)) == doctest::Approx(d.eigenvalues[0]).epsilon(1e-9));
      // A v_k = lambda_k v_k
      for (std::size_t k = 0; k < n; ++k) {
        const Vector av = a * d.vector(k);
        for (std::size_t i = 0; i < n; ++i)
          CHECK(std::abs(av[i] - d.eigenvalues[k] * v(i, k)) <= 1e-9 * (1 + a.max_abs()));
      }
      CHECK(eig_sym(a).eigenvectors.data().size() == v.data().size());
      CHECK(std::equal(v.data().begin(), v.data().end(), eig_sym(a).eigenvectors.data().begin()));
    }
  }

  TEST_CASE("cholesky examples and errors") {
    const Matrix l1 = cholesky(SymMatrix::identity(3));
    CHECK(oracle::frobenius_diff(l1, Matrix::identity(3)) == 0.0);
    const Matrix l2 = cholesky(diag({4, 9}));
    CHECK(l2(0, 0) == 2.0);
    CHECK(l2(1, 1) == 3.0);
    CHECK(l2(1, 0) == 0.0);
    const Matrix l3 = cholesky(sym2(4, 2, 5));
    CHECK(l3(0, 0) == 2.0);
    CHECK(l3(0, 1) == 0.0);
    CHECK(l3(1, 0) == 1.0);
    CHECK(l3(1, 1) == 2.0);

    try {
      (void)cholesky(diag({1, -1, 2}));
      FAIL("expected NotPositiveDefinite");
    } catch (const NotPositiveDefinite& e) {
      CHECK(e.pivot() == 1);
    }
    CHECK_FALSE(is_positive_definite(sym2(1, 2, 1)));
    CHECK(is_positive_definite(sym2(2, 1, 2)));
  }

  TEST_CASE("cholesky reproduces its input") {
    Rng rng(4);
    for (std::size_t n : {1u, 3u, 8u, 25u}) {
      const SymMatrix a = oracle::random_pd(n, rng);
      const Matrix l = cholesky(a);
      const Matrix llt = l * l.transposed();
      CHECK(oracle::frobenius_diff(llt, a.to_matrix()) <= 1e-10 * a.frobenius_norm());
    }
  }

  TEST_CASE("inverse_pd examples") {
    CHECK(inverse_pd(SymMatrix::identity(3)) == SymMatrix::identity(3));
    const SymMatrix d = inverse_pd(diag({2, 4}));
    CHECK(d(0, 0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(d(1, 1) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(d(0, 1) == 0.0);
    Rng rng(5);
    const SymMatrix p = oracle::random_pd(12, rng);
    const Matrix pq = p * inverse_pd(p);
    CHECK(oracle::frobenius_diff(pq, Matrix::identity(12)) <= 1e-9);
    CHECK(oracle::frobenius_diff(inverse_pd(p).to_matrix(), oracle::gauss_jordan_inverse(p)) <=
          1e-9);
    CHECK_THROWS_AS(inverse_pd(diag({1, 0})), NotPositiveDefinite);
  }

  TEST_CASE("log_det_pd matches eigenvalues") {
    Rng rng(6);
    const SymMatrix p = oracle::random_pd(7, rng);
    double s = 0.0;
    for (double v : eig_sym(p).eigenvalues) s += std::log(v);
    CHECK(log_det_pd(p) == doctest::Approx(s).epsilon(1e-12));
  }

  TEST_CASE("sample_gaussian statistics and determinism") {
    const auto a = sample_gaussian(SymMatrix::identity(2), 100000, 11);
    const SymMatrix ca = empirical_covariance(a);
    CHECK(max_abs_diff(ca, SymMatrix::identity(2)) <= 0.05);
    CHECK(sample_gaussian(SymMatrix::identity(2), 50, 11) ==
          sample_gaussian(SymMatrix::identity(2), 50, 11));
    CHECK(sample_gaussian(SymMatrix::identity(2), 50, 11) !=
          sample_gaussian(SymMatrix::identity(2), 50, 12));

    const auto b = sample_gaussian(sym2(1, 0.9, 1), 100000, 12);
    const SymMatrix cb = empirical_covariance(b);
    const double corr = cb(0, 1) / std::sqrt(cb(0, 0) * cb(1, 1));
    CHECK(std::abs(corr - 0.9) <= 0.02);
  }

  TEST_CASE("empirical_covariance examples") {
    const std::vector<Vector> same(5, Vector{1.5, -2.0, 3.0});
    CHECK(empirical_covariance(same).max_abs() == 0.0);
    const std::vector<Vector> x{{1, 0}, {-1, 0}};
    const SymMatrix c = empirical_covariance(x);
    CHECK(c(0, 0) == 1.0);
    CHECK(c(0, 1) == 0.0);
    CHECK(c(1, 1) == 0.0);
    CHECK_THROWS_AS(empirical_covariance(std::vector<Vector>{}), ValidationError);

    Rng rng(7);
    std::vector<Vector> few;
    for (int i = 0; i < 4; ++i) few.push_back(oracle::random_vector(9, rng));
    for (double v : eig_sym(empirical_covariance(few)).eigenvalues) CHECK(v >= -1e-10);
  }

  TEST_CASE("rng streams") {
    Rng a(42), b(42);
    for (int i = 0; i < 10; ++i) CHECK(a.next_u64() == b.next_u64());
    Rng u(1);
    for (int i = 0; i < 1000; ++i) {
      const double x = u.uniform();
      CHECK(x >= 0.0);
      CHECK(x < 1.0);
    }
    CHECK(derive_seed(5, 0) != derive_seed(5, 1));
    CHECK(derive_seed(5, 0) != derive_seed(6, 0));
    CHECK(derive_seed(5, 3) == derive_seed(5, 3));
  }
}
