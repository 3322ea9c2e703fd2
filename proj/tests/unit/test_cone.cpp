#include <doctest.h>

#include <cmath>

#include "conelap/cone.hpp"
#include "conelap/errors.hpp"
#include "oracles.hpp"

using namespace conelap;

namespace {
Vector unit(std::size_t n, std::size_t i) {
  Vector v(n, 0.0);
  v[i] = 1.0;
  return v;
}
SymMatrix diag(std::initializer_list<double> d) {
  std::vector<double> v(d);
  return SymMatrix::diagonal(v);
}
double rel_diff(const SymMatrix& a, const SymMatrix& b) {
  return (a - b).frobenius_norm() / b.frobenius_norm();
}
}  // namespace

TEST_SUITE("cone") {
  TEST_CASE("EigenPrior validation") {
    CHECK_THROWS_AS(EigenPrior({}), ValidationError);
    CHECK_THROWS_AS(EigenPrior({{1, 0}, {1, 0}}), ValidationError);
    CHECK_THROWS_AS(EigenPrior({{1, 0}, {0, 1, 0}}), ValidationError);
    CHECK_THROWS_AS(EigenPrior({{1, 0}, {0, 1}, {0, 1}}), ValidationError);
    CHECK_THROWS_AS(EigenPrior({{2, 0}}), ValidationError);
    const EigenPrior p({{1, 0, 0}, {0, 0, 1}});
    CHECK(p.k() == 2);
    CHECK(p.n() == 3);
  }

  TEST_CASE("cone_contains examples") {
    const EigenPrior e1({unit(3, 0)});
    CHECK(cone_contains(diag({1, 2, 3}), e1, 1e-10));
    CHECK_FALSE(cone_contains(diag({3, 2, 1}), e1, 1e-10));
    CHECK_FALSE(cone_contains(diag({-1, 2, 3}), e1, 1e-10));

    Rng rng(10);
    for (int rep = 0; rep < 20; ++rep) {
      const auto v = oracle::random_orthonormal(6, 6, rng);
      const SymMatrix l = oracle::compose(v, oracle::spaced_values(6, rng));
      CHECK(cone_contains(l, EigenPrior({v[0]}), 1e-9));
      CHECK(cone_contains(l, EigenPrior({v[0], v[1], v[2]}), 1e-9));
      CHECK_FALSE(cone_contains(l, EigenPrior({v[1]}), 1e-6));
    }
  }

  TEST_CASE("cone_contains handles eigenvalue ties") {
    // e2 and e3 share eigenvalue 1; any unit vector in their span is acceptable
    const double h = 1.0 / std::sqrt(2.0);
    CHECK(cone_contains(diag({3, 1, 1}), EigenPrior({{0, h, h}}), 1e-10));
    CHECK(cone_contains(diag({1, 1, 2}), EigenPrior({{h, h, 0}, {h, -h, 0}}), 1e-10));
  }

  TEST_CASE("rank1_peel_prior examples") {
    const Vector u = unit(2, 0);
    const PeelStep a = rank1_peel_prior(diag({0.4, 0.7}), u, 1.0, 1e-8);
    CHECK(a.mu == doctest::Approx(0.4));
    CHECK(a.residual(0, 0) == doctest::Approx(0.0));
    CHECK(a.residual(1, 1) == doctest::Approx(0.7));

    const PeelStep b = rank1_peel_prior(diag({1.7, 0.2}), u, 1.0, 1e-8);
    CHECK(b.mu == 1.0);
    CHECK(b.residual(0, 0) == doctest::Approx(0.7));

    const PeelStep c = rank1_peel_prior(diag({-0.2, 0.2}), u, 1.0, 1e-8);
    CHECK(c.mu == 1e-8);
    // E_next recomputed independently
    SymMatrix expect = diag({-0.2, 0.2});
    expect.add_outer(u, -1e-8);
    CHECK(max_abs_diff(c.residual, expect) <= 1e-15);
  }

  TEST_CASE("max_aligned_unit examples") {
    CHECK(max_aligned_unit(unit(3, 0), std::vector<Vector>{unit(3, 1)}) == unit(3, 0));
    const double h = 1.0 / std::sqrt(2.0);
    const Vector v = max_aligned_unit(Vector{h, h, 0}, std::vector<Vector>{unit(3, 0)});
    CHECK(v[0] == doctest::Approx(0.0));
    CHECK(v[1] == doctest::Approx(1.0));
    CHECK(v[2] == doctest::Approx(0.0));
    CHECK_THROWS_AS(max_aligned_unit(unit(2, 0), std::vector<Vector>{unit(2, 0), unit(2, 1)}),
                    ValidationError);
  }

  TEST_CASE("max_aligned_unit degenerate residual falls back to canonical basis") {
    // e lies in span(basis); first canonical vector with a residual is e3
    const Vector v = max_aligned_unit(unit(3, 0), std::vector<Vector>{unit(3, 0), unit(3, 1)});
    CHECK(v == unit(3, 2));
    const double h = 1.0 / std::sqrt(2.0);
    const Vector w = max_aligned_unit(Vector{h, h, 0}, std::vector<Vector>{{h, h, 0}});
    CHECK(std::abs(dot(w, Vector{h, h, 0})) <= 1e-12);
    CHECK(norm2(w) == doctest::Approx(1.0));
  }

  TEST_CASE("max_aligned_unit matches projected-ascent oracle") {
    Rng rng(11);
    for (int rep = 0; rep < 50; ++rep) {
      const std::size_t n = 3 + static_cast<std::size_t>(rep % 6);
      const std::size_t k = 1 + static_cast<std::size_t>(rep % (n - 1));
      const auto basis = oracle::random_orthonormal(n, k, rng);
      const Vector e = oracle::random_unit(n, rng);
      const Vector v = max_aligned_unit(e, basis);
      const Vector ref = oracle::projected_ascent_aligned(e, basis, rng);
      CHECK(dot(e, v) >= dot(e, ref) - 1e-6);
      CHECK(norm2(v) == doctest::Approx(1.0).epsilon(1e-12));
      for (const Vector& b : basis) CHECK(std::abs(dot(v, b)) <= 1e-12);
    }
  }

  TEST_CASE("projection of diag(3,1) onto e1 cone") {
    const ConeProjection p = project_to_cone(diag({3, 1}), EigenPrior({unit(2, 0)}));
    CHECK(p.mus.size() == 2);
    CHECK(p.mus[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(p.mus[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(max_abs_diff(p.c_hat, (1.0 / 3.0) * SymMatrix::identity(2)) <= 1e-10);
    CHECK(max_abs_diff(p.projected, 3.0 * SymMatrix::identity(2)) <= 1e-10);
    CHECK(p.completed_basis.size() == 1);
    CHECK(std::abs(p.completed_basis[0][1]) == doctest::Approx(1.0));
    CHECK(cone_contains(p.projected, EigenPrior({unit(2, 0)}), 1e-10));
    const ConeProjection again = project_to_cone(p.projected, EigenPrior({unit(2, 0)}));
    CHECK(max_abs_diff(again.projected, p.projected) <= 1e-10);
  }

  TEST_CASE("diag(1,2,3) is a fixed point for prior e1") {
    const SymMatrix p = diag({1, 2, 3});
    const ConeProjection out = project_to_cone(p, EigenPrior({unit(3, 0)}));
    CHECK(max_abs_diff(out.projected, p) <= 1e-10);
    REQUIRE(out.mus.size() == 3);
    CHECK(out.mus[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(out.mus[1] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(out.mus[2] == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  }

  TEST_CASE("fixed point when the prior already carries the largest covariance modes") {
    Rng rng(12);
    for (int rep = 0; rep < 20; ++rep) {
      const std::size_t n = 6;
      const auto v = oracle::random_orthonormal(n, n, rng);
      const SymMatrix p = oracle::compose(v, oracle::spaced_values(n, rng, 0.5, 0.2));
      const EigenPrior prior({v[0], v[1]});
      REQUIRE(cone_contains(p, prior, 1e-10));
      const ConeProjection out = project_to_cone(p, prior);
      CHECK(rel_diff(out.projected, p) <= 1e-8);
    }
  }

  TEST_CASE("projection invariants on random inputs") {
    Rng rng(13);
    for (int rep = 0; rep < 60; ++rep) {
      const std::size_t n = 4 + static_cast<std::size_t>(rep % 9);
      const std::size_t k = 1 + static_cast<std::size_t>(rep % 3);
      const SymMatrix p = oracle::random_pd(n, rng);
      const EigenPrior prior(oracle::random_orthonormal(n, k, rng));
      const ConeProjection out = project_to_cone(p, prior);

      CHECK(cone_contains(out.projected, prior, 1e-6));
      for (std::size_t t = 1; t < out.mus.size(); ++t) CHECK(out.mus[t] <= out.mus[t - 1]);
      for (double mu : out.mus) CHECK(mu > 0.0);

      std::vector<Vector> all(prior.vectors().begin(), prior.vectors().end());
      all.insert(all.end(), out.completed_basis.begin(), out.completed_basis.end());
      CHECK(all.size() == n);
      CHECK(gram_deviation(all) <= 1e-8);

      const ConeProjection twice = project_to_cone(out.projected, prior);
      CHECK(rel_diff(twice.projected, out.projected) <= 1e-8);
    }
  }

  TEST_CASE("projection rejects bad input") {
    CHECK_THROWS_AS(project_to_cone(diag({1, -1}), EigenPrior({unit(2, 0)})),
                    NotPositiveDefinite);
    CHECK_THROWS_AS(project_to_cone(diag({1, 1, 1}), EigenPrior({unit(2, 0)})), ValidationError);
  }

  TEST_CASE("convex cone property") {
    Rng rng(14);
    for (int rep = 0; rep < 50; ++rep) {
      const std::size_t n = 5, k = 2;
      const auto shared = oracle::random_orthonormal(n, n, rng);
      auto v2 = shared;
      const auto tail = oracle::random_orthonormal(n - k, n - k, rng);
      for (std::size_t c = k; c < n; ++c) {
        Vector col(n, 0.0);
        for (std::size_t r = 0; r < n - k; ++r)
          for (std::size_t i = 0; i < n; ++i) col[i] += tail[c - k][r] * shared[k + r][i];
        v2[c] = col;
      }
      auto vals1 = oracle::spaced_values(n, rng);
      auto vals2 = oracle::spaced_values(n, rng);
      // keep prior eigenvalues below the tail in both matrices and in any mix
      vals1[0] = vals2[0] = 0.1;
      vals1[1] = vals2[1] = 0.3;
      for (std::size_t i = k; i < n; ++i) {
        vals1[i] += 0.5;
        vals2[i] += 0.5;
      }
      const SymMatrix l1 = oracle::compose(shared, vals1);
      const SymMatrix l2 = oracle::compose(v2, vals2);
      const EigenPrior prior({shared[0], shared[1]});
      REQUIRE(cone_contains(l1, prior, 1e-9));
      REQUIRE(cone_contains(l2, prior, 1e-9));
      const double c1 = rng.uniform(), c2 = rng.uniform() + 1e-3;
      CHECK(cone_contains(c1 * l1 + c2 * l2, prior, 1e-7));
    }
  }

  TEST_CASE("prior_energy examples") {
    CHECK(prior_energy(SymMatrix::identity(4), Vector{0.5, 0.5, 0.5, 0.5}) ==
          doctest::Approx(1.0));
    CHECK(prior_energy(diag({2, 5}), unit(2, 1)) == 5.0);
    Rng rng(15);
    for (int rep = 0; rep < 100; ++rep) {
      const SymMatrix c = oracle::random_pd(6, rng);
      const Vector u = oracle::random_unit(6, rng);
      const Matrix b = cholesky(c);
      double s = 0.0;
      for (std::size_t j = 0; j < 6; ++j) {
        double t = 0.0;
        for (std::size_t i = 0; i < 6; ++i) t += u[i] * b(i, j);
        s += t * t;
      }
      CHECK(prior_energy(c, u) >= -1e-12);
      CHECK(std::abs(prior_energy(c, u) - s) <= 1e-10);
    }
  }

  TEST_CASE("EigenPrior::leading") {
    const EigenDecomp d = eig_sym(diag({3, 1, 2}));
    const EigenPrior p = EigenPrior::leading(d, 2);
    CHECK(p[0] == unit(3, 1));
    CHECK(p[1] == unit(3, 2));
  }
}
