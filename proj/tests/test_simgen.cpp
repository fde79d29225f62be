#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "fnc/rng.hpp"
#include "fnc/simgen.hpp"

using namespace fnc;

TEST_CASE("empty graph gives the identity precision") {
  const PrecisionGraph g = gen_precision_er(10, 0.0, 0.4, 0.8, 3);
  CHECK(g.s_max == 0);
  for (std::size_t i = 0; i < 10; ++i)
    for (std::size_t j = 0; j < 10; ++j) CHECK(g.theta(i, j) == (i == j ? 1.0 : 0.0));
}

TEST_CASE("complete 2x2 graph is left unshifted") {
  // both eigenvalues of [[1, m], [m, 1]] are 1 +- m >= 0.05 for m in [0.4, 0.8]
  const PrecisionGraph g = gen_precision_er(2, 1.0, 0.5, 0.5, 7);
  CHECK(g.theta(0, 1) == 0.5);
  CHECK(g.theta(1, 0) == 0.5);
  CHECK(g.theta(0, 0) == 1.0);
  CHECK(g.s_max == 1);
  const std::vector<double> ev = symmetric_eigenvalues(g.theta);
  CHECK(ev.front() == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(ev.back() == doctest::Approx(1.5).epsilon(1e-12));
}

TEST_CASE("generated precision is symmetric, unit diagonal, eigenvalue floored") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const std::size_t p = 30 + static_cast<std::size_t>(seed % 4) * 15;
    const PrecisionGraph g = gen_precision_er(p, 0.15, 0.4, 0.8, seed);
    for (std::size_t i = 0; i < p; ++i) {
      CHECK(g.theta(i, i) == 1.0);
      for (std::size_t j = i + 1; j < p; ++j) CHECK(g.theta(i, j) == g.theta(j, i));
    }
    CHECK(min_symmetric_eigenvalue(g.theta) >= 0.05 - 1e-10);

    // realized s_max matches the assembled matrix
    std::size_t worst = 0;
    for (std::size_t i = 0; i < p; ++i) {
      std::size_t cnt = 0;
      for (std::size_t j = 0; j < p; ++j)
        if (j != i && g.theta(i, j) != 0.0) ++cnt;
      worst = std::max(worst, cnt);
    }
    CHECK(worst == g.s_max);
  }
}

TEST_CASE("edge count per row tracks the binomial mean") {
  // p = 200, theta = 0.02: mean off-diagonal edges per row about 3.98
  double total_rows = 0.0, total_edges = 0.0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const PrecisionGraph g = gen_precision_er(200, 0.02, 0.4, 0.8, 7000 + seed);
    for (std::size_t i = 0; i < 200; ++i) {
      std::size_t cnt = 0;
      for (std::size_t j = 0; j < 200; ++j)
        if (j != i && g.theta(i, j) != 0.0) ++cnt;
      total_edges += static_cast<double>(cnt);
      total_rows += 1.0;
    }
  }
  const double mean_edges = total_edges / total_rows;
  CHECK(mean_edges > 3.0);
  CHECK(mean_edges < 5.0);
}

TEST_CASE("design rows follow the requested covariance") {
  SUBCASE("identity precision gives iid standard normals") {
    const Matrix x = gen_design(10000, Matrix::identity(5), 11);
    Matrix cov(5, 5);
    for (std::size_t a = 0; a < 5; ++a)
      for (std::size_t b = 0; b < 5; ++b) {
        double s = 0.0;
        for (std::size_t i = 0; i < 10000; ++i) s += x(i, a) * x(i, b);
        cov(a, b) = s / 10000.0;
      }
    for (std::size_t a = 0; a < 5; ++a)
      for (std::size_t b = 0; b < 5; ++b)
        CHECK(std::abs(cov(a, b) - (a == b ? 1.0 : 0.0)) < 0.1);
  }
  SUBCASE("single row has the right shape") {
    const Matrix x = gen_design(1, Matrix::identity(4), 2);
    CHECK(x.rows == 1);
    CHECK(x.cols == 4);
  }
  SUBCASE("fixed seed reproduces the matrix bit for bit") {
    const PrecisionGraph g = gen_precision_er(12, 0.2, 0.4, 0.8, 5);
    const Matrix a = gen_design(20, g.theta, 99);
    const Matrix b = gen_design(20, g.theta, 99);
    CHECK(a.data == b.data);
  }
  SUBCASE("correlated precision is honored") {
    Matrix prec = Matrix::identity(2);
    prec(0, 1) = prec(1, 0) = 0.5;
    // covariance = prec^{-1} = (1/0.75) [[1, -0.5], [-0.5, 1]]
    const Matrix x = gen_design(20000, prec, 4);
    double c01 = 0.0, c00 = 0.0;
    for (std::size_t i = 0; i < 20000; ++i) {
      c01 += x(i, 0) * x(i, 1);
      c00 += x(i, 0) * x(i, 0);
    }
    c01 /= 20000.0;
    c00 /= 20000.0;
    CHECK(c00 == doctest::Approx(1.0 / 0.75).epsilon(0.05));
    CHECK(c01 == doctest::Approx(-0.5 / 0.75).epsilon(0.08));
  }
  SUBCASE("non positive definite input is rejected") {
    Matrix bad = Matrix::identity(3);
    bad(0, 1) = bad(1, 0) = 2.0;
    CHECK_THROWS_AS(gen_design(5, bad, 1), std::runtime_error);
  }
}

TEST_CASE("make_beta") {
  const GroundTruth t = make_beta(5, 2, 0.3);
  CHECK(t.beta == std::vector<double>{0.3, 0.3, 0.0, 0.0, 0.0});
  CHECK(t.support == std::vector<std::size_t>{0, 1});
  CHECK(t.s == 2);
  validate(t);

  const GroundTruth zero = make_beta(4, 0, 0.5);
  CHECK(zero.s == 0);
  CHECK(zero.support.empty());
  for (double b : zero.beta) CHECK(b == 0.0);

  CHECK_THROWS_AS(make_beta(4, 2, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(make_beta(4, 5, 0.3), std::invalid_argument);
}

TEST_CASE("gen_response") {
  SplitMix64 rng(6);
  Matrix x(50, 3);
  for (double& v : x.data) v = rng.normal();
  const std::vector<double> beta{1.0, -2.0, 0.5};

  SUBCASE("noiseless response is exact") {
    const Response r = gen_response(x, beta, 0.0, 12);
    const std::vector<double> xb = matvec(x, beta);
    CHECK(r.y == xb);
    for (double e : r.eps) CHECK(e == 0.0);
  }
  SUBCASE("noise scale is recovered at large n") {
    Matrix big(10000, 1);
    for (double& v : big.data) v = 0.0;
    const Response r = gen_response(big, {0.0}, 1.7, 13);
    double ss = 0.0;
    for (double v : r.y) ss += v * v;
    const double sd = std::sqrt(ss / 10000.0);
    CHECK(std::abs(sd - 1.7) / 1.7 < 0.03);
  }
  SUBCASE("deterministic in the seed") {
    const Response a = gen_response(x, beta, 1.0, 21);
    const Response b = gen_response(x, beta, 1.0, 21);
    CHECK(a.y == b.y);
    CHECK(a.eps == b.eps);
  }
  SUBCASE("y equals X beta plus the returned noise") {
    const Response r = gen_response(x, beta, 2.0, 33);
    const std::vector<double> xb = matvec(x, beta);
    for (std::size_t i = 0; i < 50; ++i)
      CHECK(r.y[i] == doctest::Approx(xb[i] + r.eps[i]).epsilon(1e-15));
  }
}
