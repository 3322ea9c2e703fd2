#include <doctest.h>

#include <cmath>

#include "conelap/errors.hpp"
#include "conelap/metrics.hpp"
#include "conelap/synthgen.hpp"
#include "oracles.hpp"

using namespace conelap;

namespace {
SymMatrix diag(std::initializer_list<double> d) {
  std::vector<double> v(d);
  return SymMatrix::diagonal(v);
}
SymMatrix path3(double w01, double w12) {
  SymMatrix a(3);
  a.set(0, 1, w01);
  a.set(1, 2, w12);
  return a;
}
}  // namespace

TEST_SUITE("metrics") {
  TEST_CASE("relative_error examples") {
    Rng rng(50);
    const SymMatrix t = oracle::random_symmetric(5, rng);
    CHECK(relative_error(t, t) == 0.0);
    CHECK(relative_error(t, SymMatrix(5)) == doctest::Approx(1.0));
    CHECK(relative_error(t, 2.0 * t) == doctest::Approx(1.0));
    for (double a : {-1.0, 0.3, 1.7, 4.0})
      CHECK(relative_error(t, a * t) == doctest::Approx(std::abs(1.0 - a)));
    CHECK_THROWS_AS(relative_error(SymMatrix(3), SymMatrix::identity(3)), ValidationError);
  }

  TEST_CASE("lambda_distance examples") {
    CHECK(lambda_distance(diag({1, 2}), diag({1, 2})) == 0.0);
    CHECK(lambda_distance(diag({1, 2}), diag({2, 1})) == 0.0);
    CHECK(lambda_distance(SymMatrix::identity(2), 2.0 * SymMatrix::identity(2)) ==
          doctest::Approx(std::sqrt(2.0)));
    CHECK(lambda_distance(SymMatrix::identity(2), 2.0 * SymMatrix::identity(2),
                          SpectrumScaling::unit_radius) == doctest::Approx(0.0));
  }

  TEST_CASE("lambda_distance is a pseudometric") {
    Rng rng(51);
    for (int rep = 0; rep < 30; ++rep) {
      const SymMatrix a = oracle::random_symmetric(6, rng);
      const SymMatrix b = oracle::random_symmetric(6, rng);
      const SymMatrix c = oracle::random_symmetric(6, rng);
      CHECK(std::abs(lambda_distance(a, b) - lambda_distance(b, a)) <= 1e-9);
      CHECK(lambda_distance(a, c) <= lambda_distance(a, b) + lambda_distance(b, c) + 1e-9);
    }
  }

  TEST_CASE("deltacon examples") {
    const SymMatrix p = path3(1.0, 1.0);
    CHECK(deltacon(p, p) == 1.0);
    CHECK(deltacon(SymMatrix(4), SymMatrix(4)) == 1.0);
    CHECK(deltacon(p, path3(1.5, 1.0)) < 1.0);
    CHECK(deltacon(p, path3(1.5, 1.0)) > deltacon(p, path3(2.0, 1.0)));
    const double s = deltacon(p, path3(1.0, -1.0));
    CHECK(s > 0.0);
    CHECK(s <= 1.0);
  }

  TEST_CASE("deltacon is symmetric") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      GraphSpec s;
      s.seed = seed;
      const SymMatrix a = generate(s).adjacency;
      s.seed = seed + 100;
      const SymMatrix b = generate(s).adjacency;
      CHECK(std::abs(deltacon(a, b) - deltacon(b, a)) <= 1e-12);
      CHECK(deltacon(a, a) == 1.0);
    }
  }

  TEST_CASE("laplacian_to_adjacency") {
    const double rows[] = {1, -1, -1, 1};
    const SymMatrix w = laplacian_to_adjacency(SymMatrix::from_rows(2, rows));
    CHECK(w(0, 1) == 1.0);
    CHECK(w(0, 0) == 0.0);
    CHECK(laplacian_to_adjacency(diag({1, 2, 3})).max_abs() == 0.0);
    GraphSpec s;
    s.seed = 3;
    const SymMatrix adj = generate(s).adjacency;
    CHECK(laplacian_to_adjacency(assemble_generalized_laplacian(adj)) == adj);
  }

  TEST_CASE("compare_laplacians on identical input") {
    GraphSpec s;
    const SymMatrix l = generate(s).laplacian;
    const MetricTriple m = compare_laplacians(l, l);
    CHECK(m.re == 0.0);
    CHECK(m.deltacon == 1.0);
    CHECK(m.lambda_dist == 0.0);
  }
}
