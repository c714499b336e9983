#include <doctest.h>

#include <limits>
#include <random>
#include <vector>

#include "uiap/lp.hpp"

using namespace uiap;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

LinearProgram inequality_program(const RMat& A, const RVec& b, const RVec& c) {
  LinearProgram lp;
  lp.objective = c;
  lp.le_lhs = A;
  lp.le_rhs = b;
  lp.eq_lhs = RMat(0, c.size());
  lp.eq_rhs = RVec(0);
  lp.lower = RVec::Zero(c.size());
  return lp;
}

// brute-force optimum of min c.x s.t. Ax <= b, x >= 0 by enumerating all
// basic solutions (n active constraints out of rows + sign constraints)
double enumerate_optimum(const RMat& A, const RVec& b, const RVec& c) {
  const int n = static_cast<int>(c.size());
  const int m = static_cast<int>(A.rows());
  const int total = m + n;
  std::vector<int> pick(n);
  double best = kInf;
  std::function<void(int, int)> rec = [&](int start, int depth) {
    if (depth == n) {
      RMat M(n, n);
      RVec r(n);
      for (int i = 0; i < n; ++i) {
        if (pick[i] < m) {
          M.row(i) = A.row(pick[i]);
          r[i] = b[pick[i]];
        } else {
          M.row(i) = RVec::Unit(n, pick[i] - m).transpose();
          r[i] = 0.0;
        }
      }
      const auto lu = M.fullPivLu();
      if (lu.rank() < n) return;
      const RVec x = lu.solve(r);
      if ((A * x - b).maxCoeff() > 1e-9) return;
      if (x.minCoeff() < -1e-9) return;
      best = std::min(best, c.dot(x));
      return;
    }
    for (int i = start; i <= total - (n - depth); ++i) {
      pick[depth] = i;
      rec(i + 1, depth + 1);
    }
  };
  rec(0, 0);
  return best;
}

} // namespace

TEST_SUITE_BEGIN("lp");

TEST_CASE("one-variable programs") {
  SUBCASE("min x subject to x >= 3 via the bound") {
    LinearProgram lp;
    lp.objective = RVec::Ones(1);
    lp.lower = RVec::Constant(1, 3.0);
    lp.eq_lhs = RMat(0, 1);
    lp.eq_rhs = RVec(0);
    lp.le_lhs = RMat(0, 1);
    lp.le_rhs = RVec(0);
    const LpSolution s = solve_lp(lp);
    REQUIRE(s.status == LpStatus::Optimal);
    CHECK(s.x[0] == doctest::Approx(3.0).epsilon(1e-10));
    CHECK(s.objective == doctest::Approx(3.0).epsilon(1e-10));
  }
  SUBCASE("min x subject to x >= 3 via an inequality row") {
    RMat A(1, 1);
    A << -1.0;
    RVec b(1);
    b << -3.0;
    RVec c(1);
    c << 1.0;
    const LpSolution s = solve_lp(inequality_program(A, b, c));
    REQUIRE(s.status == LpStatus::Optimal);
    CHECK(s.objective == doctest::Approx(3.0).epsilon(1e-10));
  }
  SUBCASE("x >= 1 together with x <= 0 is infeasible") {
    RMat A(2, 1);
    A << -1.0, 1.0;
    RVec b(2);
    b << -1.0, 0.0;
    RVec c(1);
    c << 1.0;
    CHECK(solve_lp(inequality_program(A, b, c)).status == LpStatus::Infeasible);
  }
  SUBCASE("unbounded direction is detected") {
    LinearProgram lp;
    lp.objective = RVec::Constant(1, -1.0);
    lp.lower = RVec::Zero(1);
    lp.eq_lhs = RMat(0, 1);
    lp.eq_rhs = RVec(0);
    lp.le_lhs = RMat(0, 1);
    lp.le_rhs = RVec(0);
    CHECK(solve_lp(lp).status == LpStatus::Unbounded);
  }
}

TEST_CASE("free variables and equality rows") {
  // min x1 - x2 with x1 - x2 = -5, both free: objective forced to -5
  LinearProgram lp;
  lp.objective = RVec(2);
  lp.objective << 1.0, -1.0;
  lp.lower = RVec::Constant(2, -kInf);
  lp.eq_lhs = RMat(1, 2);
  lp.eq_lhs << 1.0, -1.0;
  lp.eq_rhs = RVec::Constant(1, -5.0);
  lp.le_lhs = RMat(0, 2);
  lp.le_rhs = RVec(0);
  const LpSolution s = solve_lp(lp);
  REQUIRE(s.status == LpStatus::Optimal);
  CHECK(s.objective == doctest::Approx(-5.0).epsilon(1e-10));
  CHECK(std::abs(s.x[0] - s.x[1] + 5.0) < 1e-9);
}

TEST_CASE("non-finite input is rejected") {
  LinearProgram lp;
  lp.objective = RVec::Constant(1, std::numeric_limits<double>::quiet_NaN());
  lp.lower = RVec::Zero(1);
  lp.eq_lhs = RMat(0, 1);
  lp.eq_rhs = RVec(0);
  lp.le_lhs = RMat(0, 1);
  lp.le_rhs = RVec(0);
  CHECK_THROWS_AS(solve_lp(lp), std::invalid_argument);

  LinearProgram bad;
  bad.objective = RVec::Ones(2);
  bad.lower = RVec::Zero(1);  // size mismatch
  CHECK_THROWS_AS(solve_lp(bad), std::invalid_argument);
}

TEST_CASE("transportation toy matches enumeration") {
  // two sources, two sinks, one arc dropped
  RMat A(4, 3);
  A << 1, 1, 0,   // source A capacity
      0, 0, 1,    // source B capacity
      -1, 0, -1,  // sink 1 demand >= 2
      0, -1, 0;   // sink 2 demand >= 1
  RVec b(4);
  b << 4, 3, -2, -1;
  RVec c(3);
  c << 4, 3, 5;
  const LpSolution s = solve_lp(inequality_program(A, b, c));
  REQUIRE(s.status == LpStatus::Optimal);
  CHECK(s.objective == doctest::Approx(11.0).epsilon(1e-10));
  CHECK(s.objective == doctest::Approx(enumerate_optimum(A, b, c)).epsilon(1e-9));
}

TEST_CASE("random small programs match basic-solution enumeration") {
  std::mt19937 rng(101);
  std::uniform_real_distribution<double> entry(-1.0, 1.0);
  std::uniform_real_distribution<double> rhs_dist(0.5, 2.0);
  for (int trial = 0; trial < 20; ++trial) {
    CAPTURE(trial);
    const int n = 2 + static_cast<int>(rng() % 2);
    const int m = 3 + static_cast<int>(rng() % 3);
    RMat A(m + 1, n);
    RVec b(m + 1);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < n; ++j) A(i, j) = entry(rng);
      b[i] = rhs_dist(rng);
    }
    A.row(m) = RVec::Ones(n).transpose();  // keeps the region bounded
    b[m] = 10.0;
    RVec c(n);
    for (int j = 0; j < n; ++j) c[j] = entry(rng);

    const LpSolution s = solve_lp(inequality_program(A, b, c));
    REQUIRE(s.status == LpStatus::Optimal);
    const double expect = enumerate_optimum(A, b, c);
    CHECK(std::abs(s.objective - expect) < 1e-8);

    // primal feasibility of the returned point
    CHECK((A * s.x - b).maxCoeff() < 1e-8);
    CHECK(s.x.minCoeff() > -1e-8);

    // dual certificate: multipliers of <= rows are nonpositive, strong
    // duality holds, and complementary slackness ties both together
    CHECK(s.dual_le.maxCoeff() < 1e-8);
    CHECK(std::abs(s.objective - s.dual_le.dot(b)) < 1e-7);
    const RVec slack = b - A * s.x;
    for (int i = 0; i <= m; ++i) CHECK(std::abs(s.dual_le[i] * slack[i]) < 1e-7);
    const RVec reduced = c - A.transpose() * s.dual_le;
    CHECK(reduced.minCoeff() > -1e-8);
    for (int j = 0; j < n; ++j) CHECK(std::abs(reduced[j] * s.x[j]) < 1e-7);
  }
}

TEST_CASE("polygonal sandwich on a grid") {
  for (int K : {8, 16, 32}) {
    const PolygonalApprox poly{K};
    const double sec = poly.overestimate_factor();
    for (int i = 0; i < 100; ++i)
      for (int j = 0; j < 100; ++j) {
        const cxd z(-2.0 + 4.0 * i / 99.0, -2.0 + 4.0 * j / 99.0);
        const double est = poly.estimate(z);
        CHECK(est <= std::abs(z) + 1e-12);
        CHECK(std::abs(z) <= sec * est + 1e-12);
      }
  }
}

TEST_CASE("direction escalation keeps the slack inside budget") {
  CHECK(directions_for_slack(0.1) == 32);
  const int k = directions_for_slack(1e-3);
  CHECK(1.0 / std::cos(kPi / k) <= 1.0 + 1e-3);
  CHECK(k > 32);
}

TEST_CASE("complex l1 minimization") {
  SUBCASE("a single pinned coefficient") {
    Mat A(1, 1);
    A << cxd(1.0, 0.0);
    Vec b(1);
    b << cxd(1.0, 0.0);
    const auto sol = complex_l1_minimize(A, b, 32);
    REQUIRE(sol.status == LpStatus::Optimal);
    CHECK(std::abs(sol.a[0] - cxd(1.0, 0.0)) < 1e-9);
    CHECK(sol.objective == doctest::Approx(1.0).epsilon(1e-9));
  }
  SUBCASE("c1 + c2 = 1 has minimal norm one") {
    Mat A(1, 2);
    A << cxd(1.0, 0.0), cxd(1.0, 0.0);
    Vec b(1);
    b << cxd(1.0, 0.0);
    const auto sol = complex_l1_minimize(A, b, 32);
    REQUIRE(sol.status == LpStatus::Optimal);
    CHECK(sol.residual < 1e-8);
    CHECK(sol.objective <= 1.0 / std::cos(kPi / 32) + 1e-12);  // the LP contract
    CHECK(sol.objective == doctest::Approx(1.0).epsilon(1e-8));  // polished value
  }
  SUBCASE("random system against a grid-search oracle") {
    std::mt19937 rng(211);
    std::normal_distribution<double> dist;
    Mat A(2, 4);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 4; ++j) A(i, j) = cxd(dist(rng), dist(rng));
    Vec b(2);
    for (int i = 0; i < 2; ++i) b[i] = cxd(dist(rng), dist(rng));

    const auto sol = complex_l1_minimize(A, b, 32);
    REQUIRE(sol.status == LpStatus::Optimal);
    CHECK(sol.residual < 1e-8);

    // parameterize the solution manifold: particular solution + kernel
    const auto cod = A.completeOrthogonalDecomposition();
    const Vec c0 = cod.solve(b);
    Eigen::JacobiSVD<Mat> svd(A, Eigen::ComputeFullV);
    const Mat kernel = svd.matrixV().rightCols(2);
    double grid_best = kInf;
    for (double w0 = -2.0; w0 <= 2.0; w0 += 0.25)
      for (double w1 = -2.0; w1 <= 2.0; w1 += 0.25)
        for (double w2 = -2.0; w2 <= 2.0; w2 += 0.25)
          for (double w3 = -2.0; w3 <= 2.0; w3 += 0.25) {
            const Vec c = c0 + kernel * Vec{{cxd(w0, w1), cxd(w2, w3)}};
            grid_best = std::min(grid_best, c.cwiseAbs().sum());
          }
    CHECK(sol.objective <= grid_best / std::cos(kPi / 32) + 1e-9);
    CHECK(sol.objective <= grid_best + 1e-9);  // polished, so at least as good
  }
  SUBCASE("doubling the direction count never inflates the norm beyond the slack ratio") {
    std::mt19937 rng(223);
    std::normal_distribution<double> dist;
    Mat A(2, 5);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 5; ++j) A(i, j) = cxd(dist(rng), dist(rng));
    Vec b(2);
    for (int i = 0; i < 2; ++i) b[i] = cxd(dist(rng), dist(rng));
    double prev = -1.0;
    for (int K : {8, 16, 32}) {
      const auto sol = complex_l1_minimize(A, b, K);
      REQUIRE(sol.status == LpStatus::Optimal);
      if (prev >= 0.0) {
        // allowed growth factor sec(pi/(K/2)) / sec(pi/K) > 1
        const double factor = std::cos(kPi / K) / std::cos(kPi / (K / 2));
        CHECK(sol.objective <= prev * factor + 1e-12);
      }
      prev = sol.objective;
    }
  }
  SUBCASE("inconsistent constraints report infeasible") {
    Mat A(2, 1);
    A << cxd(1.0, 0.0), cxd(1.0, 0.0);
    Vec b(2);
    b << cxd(1.0, 0.0), cxd(2.0, 0.0);
    CHECK(complex_l1_minimize(A, b, 16).status == LpStatus::Infeasible);
  }
}

TEST_SUITE_END();
