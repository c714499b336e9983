#include "uiap/lp.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <vector>

namespace uiap {

namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kReducedCostTol = 1e-9;
constexpr double kFeasTol = 1e-7;
constexpr long kMaxIterations = 500000;

struct Tableau {
  RMat rows;          // m x (ncols + 1), last column is the rhs
  RVec cost;          // reduced-cost row, [ncols] = -objective
  std::vector<int> basis;
  int ncols = 0;

  int m() const { return static_cast<int>(rows.rows()); }

  void pivot(int r, int j) {
    rows.row(r) /= rows(r, j);
    for (int i = 0; i < m(); ++i) {
      const double f = rows(i, j);
      if (i != r && std::abs(f) > 0.0) rows.row(i) -= f * rows.row(r);
    }
    const double cf = cost[j];
    if (std::abs(cf) > 0.0) cost -= cf * rows.row(r).transpose();
    basis[r] = j;
  }

  // Bland's rule: entering = lowest eligible index with negative reduced cost;
  // leaving = lowest basis index among the minimum-ratio rows.
  LpStatus run(const std::vector<char>& enterable, long& iterations) {
    for (;;) {
      int enter = -1;
      for (int j = 0; j < ncols; ++j)
        if (enterable[j] && cost[j] < -kReducedCostTol) {
          enter = j;
          break;
        }
      if (enter < 0) return LpStatus::Optimal;
      int leave = -1;
      double best_ratio = 0.0;
      for (int i = 0; i < m(); ++i) {
        if (rows(i, enter) <= kPivotTol) continue;
        const double ratio = rows(i, ncols) / rows(i, enter);
        if (leave < 0 || ratio < best_ratio - kPivotTol ||
            (ratio < best_ratio + kPivotTol && basis[i] < basis[leave])) {
          leave = i;
          best_ratio = ratio;
        }
      }
      if (leave < 0) return LpStatus::Unbounded;
      pivot(leave, enter);
      if (++iterations > kMaxIterations)
        throw std::runtime_error("simplex iteration limit exceeded");
    }
  }
};

void validate(const LinearProgram& lp) {
  const auto n = lp.objective.size();
  if (lp.lower.size() != n) throw std::invalid_argument("lp: lower bound size mismatch");
  if (lp.eq_lhs.rows() != lp.eq_rhs.size() || (lp.eq_lhs.rows() > 0 && lp.eq_lhs.cols() != n))
    throw std::invalid_argument("lp: equality block dimension mismatch");
  if (lp.le_lhs.rows() != lp.le_rhs.size() || (lp.le_lhs.rows() > 0 && lp.le_lhs.cols() != n))
    throw std::invalid_argument("lp: inequality block dimension mismatch");
  auto finite = [](const auto& m) { return m.size() == 0 || m.allFinite(); };
  if (!finite(lp.objective) || !finite(lp.eq_lhs) || !finite(lp.eq_rhs) || !finite(lp.le_lhs) ||
      !finite(lp.le_rhs))
    throw std::invalid_argument("lp: non-finite entry");
  for (Eigen::Index j = 0; j < n; ++j)
    if (!std::isfinite(lp.lower[j]) && !(lp.lower[j] < 0))
      throw std::invalid_argument("lp: lower bound must be finite or -inf");
}

} // namespace

LpSolution solve_lp(const LinearProgram& lp) {
  validate(lp);
  const int n = static_cast<int>(lp.objective.size());
  const int me = static_cast<int>(lp.eq_lhs.rows());
  const int ml = static_cast<int>(lp.le_lhs.rows());
  const int m = me + ml;

  // standard form: shift finite lower bounds, split free variables
  std::vector<int> pos_col(n), neg_col(n, -1);
  int nstd = 0;
  for (int j = 0; j < n; ++j) {
    pos_col[j] = nstd++;
    if (!std::isfinite(lp.lower[j])) neg_col[j] = nstd++;
  }
  double shift_const = 0.0;
  RVec rhs(m);
  RMat A = RMat::Zero(m, nstd);
  for (int i = 0; i < m; ++i) {
    const bool eq = i < me;
    const auto row = eq ? lp.eq_lhs.row(i) : lp.le_lhs.row(i - me);
    double b = eq ? lp.eq_rhs[i] : lp.le_rhs[i - me];
    for (int j = 0; j < n; ++j) {
      A(i, pos_col[j]) = row[j];
      if (neg_col[j] >= 0) A(i, neg_col[j]) = -row[j];
      else b -= row[j] * lp.lower[j];
    }
    rhs[i] = b;
  }
  RVec cstd = RVec::Zero(nstd);
  for (int j = 0; j < n; ++j) {
    cstd[pos_col[j]] = lp.objective[j];
    if (neg_col[j] >= 0) cstd[neg_col[j]] = -lp.objective[j];
    else shift_const += lp.objective[j] * lp.lower[j];
  }

  const int slack0 = nstd;
  const int art0 = nstd + ml;
  const int ncols = nstd + ml + m;

  Tableau tab;
  tab.ncols = ncols;
  tab.rows = RMat::Zero(m, ncols + 1);
  tab.basis.assign(m, -1);
  std::vector<int> row_sign(m, 1);
  for (int i = 0; i < m; ++i) {
    double s = rhs[i] < 0 ? -1.0 : 1.0;
    row_sign[i] = rhs[i] < 0 ? -1 : 1;
    tab.rows.block(i, 0, 1, nstd) = s * A.row(i);
    if (i >= me) tab.rows(i, slack0 + (i - me)) = s;
    tab.rows(i, art0 + i) = 1.0;
    tab.rows(i, ncols) = s * rhs[i];
    tab.basis[i] = art0 + i;
  }

  // phase 1: minimize the sum of artificials
  tab.cost = RVec::Zero(ncols + 1);
  for (int i = 0; i < m; ++i) tab.cost -= tab.rows.row(i).transpose();
  for (int i = 0; i < m; ++i) tab.cost[art0 + i] = 0.0;
  std::vector<char> enterable(ncols, 1);
  for (int i = 0; i < m; ++i) enterable[art0 + i] = 0;

  long iterations = 0;
  if (tab.run(enterable, iterations) == LpStatus::Unbounded)
    throw std::runtime_error("simplex phase 1 broke down");
  LpSolution out;
  if (-tab.cost[ncols] > kFeasTol) {
    out.status = LpStatus::Infeasible;
    return out;
  }

  // drive remaining artificials out of the basis; drop redundant rows
  for (int i = 0; i < tab.m();) {
    if (tab.basis[i] < art0) {
      ++i;
      continue;
    }
    int j = 0;
    for (; j < art0; ++j)
      if (std::abs(tab.rows(i, j)) > kPivotTol) break;
    if (j < art0) {
      tab.pivot(i, j);
      ++i;
    } else {
      const int last = tab.m() - 1;
      if (i != last) {
        tab.rows.row(i).swap(tab.rows.row(last));
        std::swap(tab.basis[i], tab.basis[last]);
      }
      tab.rows.conservativeResize(last, Eigen::NoChange);
      tab.basis.pop_back();
    }
  }

  // phase 2: rebuild the reduced-cost row for the real objective
  tab.cost = RVec::Zero(ncols + 1);
  tab.cost.head(nstd) = cstd;
  for (int i = 0; i < tab.m(); ++i)
    if (tab.basis[i] < nstd && cstd[tab.basis[i]] != 0.0)
      tab.cost -= cstd[tab.basis[i]] * tab.rows.row(i).transpose();

  const LpStatus st = tab.run(enterable, iterations);
  if (st == LpStatus::Unbounded) {
    out.status = LpStatus::Unbounded;
    return out;
  }

  RVec xstd = RVec::Zero(ncols);
  for (int i = 0; i < tab.m(); ++i) xstd[tab.basis[i]] = tab.rows(i, ncols);
  out.x = RVec(n);
  for (int j = 0; j < n; ++j) {
    double v = xstd[pos_col[j]];
    if (neg_col[j] >= 0) v -= xstd[neg_col[j]];
    else v += lp.lower[j];
    out.x[j] = v;
  }
  out.objective = lp.objective.dot(out.x);
  out.dual_eq = RVec::Zero(me);
  out.dual_le = RVec::Zero(ml);
  for (int i = 0; i < m; ++i) {
    const double y = -tab.cost[art0 + i] * row_sign[i];
    if (i < me) out.dual_eq[i] = y;
    else out.dual_le[i - me] = y;
  }
  out.status = LpStatus::Optimal;
  return out;
}

int directions_for_slack(double slack, int min_directions) {
  int k = min_directions;
  while (1.0 / std::cos(kPi / k) > 1.0 + slack) k *= 2;
  return k;
}

namespace {

// Real view of the complex affine terms: L_i(a) = u_i + M_i xi with
// xi = (Re a_0, Im a_0, ...) and M_i the 2 x 2n realification.
struct RealModel {
  RMat M;      // 2m x 2n stacked term maps
  RVec u;      // 2m
  RMat A;      // 2p x 2n equality rows
  RVec b;      // 2p
  int m = 0, n = 0;

  RVec residuals(const RVec& xi) const { return u + M * xi; }

  double objective(const RVec& xi, const RVec& w) const {
    const RVec r = residuals(xi);
    double s = 0.0;
    for (int i = 0; i < m; ++i) s += w[i] * std::hypot(r[2 * i], r[2 * i + 1]);
    return s;
  }

  double smoothed(const RVec& xi, const RVec& w, double eps) const {
    const RVec r = residuals(xi);
    double s = 0.0;
    for (int i = 0; i < m; ++i)
      s += w[i] * std::sqrt(r[2 * i] * r[2 * i] + r[2 * i + 1] * r[2 * i + 1] + eps * eps);
    return s;
  }
};

RealModel realify(const ComplexAffineL1Problem& p) {
  RealModel rm;
  rm.m = static_cast<int>(p.term_const.size());
  rm.n = static_cast<int>(p.term_coeffs.cols());
  rm.M = RMat::Zero(2 * rm.m, 2 * rm.n);
  rm.u = RVec(2 * rm.m);
  for (int i = 0; i < rm.m; ++i) {
    rm.u[2 * i] = p.term_const[i].real();
    rm.u[2 * i + 1] = p.term_const[i].imag();
    for (int j = 0; j < rm.n; ++j) {
      const cxd c = p.term_coeffs(i, j);
      rm.M(2 * i, 2 * j) = c.real();
      rm.M(2 * i, 2 * j + 1) = -c.imag();
      rm.M(2 * i + 1, 2 * j) = c.imag();
      rm.M(2 * i + 1, 2 * j + 1) = c.real();
    }
  }
  const int pr = static_cast<int>(p.eq_lhs.rows());
  rm.A = RMat::Zero(2 * pr, 2 * rm.n);
  rm.b = RVec(2 * pr);
  for (int i = 0; i < pr; ++i) {
    rm.b[2 * i] = p.eq_rhs[i].real();
    rm.b[2 * i + 1] = p.eq_rhs[i].imag();
    for (int j = 0; j < rm.n; ++j) {
      const cxd c = p.eq_lhs(i, j);
      rm.A(2 * i, 2 * j) = c.real();
      rm.A(2 * i, 2 * j + 1) = -c.imag();
      rm.A(2 * i + 1, 2 * j) = c.imag();
      rm.A(2 * i + 1, 2 * j + 1) = c.real();
    }
  }
  return rm;
}

// Iteratively reweighted least squares on the epsilon-smoothed objective,
// keeping the equality constraints exact through a KKT solve each step.
// The smoothed problem is convex, so this converges to within eps * sum(w)
// of the true constrained minimum.
RVec polish(const RealModel& rm, const RVec& w, RVec xi) {
  const int nn = 2 * rm.n;
  const int pp = static_cast<int>(rm.A.rows());
  double scale = 0.0;
  {
    const RVec r = rm.residuals(xi);
    for (int i = 0; i < rm.m; ++i) scale = std::max(scale, std::hypot(r[2 * i], r[2 * i + 1]));
    scale = std::max(scale, 1e-12);
  }
  for (double eps = 1e-1 * scale; eps > 1e-13 * scale; eps *= 0.1) {
    for (int iter = 0; iter < 40; ++iter) {
      const RVec r = rm.residuals(xi);
      RMat H = RMat::Zero(nn, nn);
      RVec g = RVec::Zero(nn);
      for (int i = 0; i < rm.m; ++i) {
        const double wi =
            w[i] / std::sqrt(r[2 * i] * r[2 * i] + r[2 * i + 1] * r[2 * i + 1] + eps * eps);
        const auto Mi = rm.M.middleRows(2 * i, 2);
        H.noalias() += wi * Mi.transpose() * Mi;
        g.noalias() -= wi * Mi.transpose() * rm.u.segment(2 * i, 2);
      }
      RMat kkt = RMat::Zero(nn + pp, nn + pp);
      kkt.topLeftCorner(nn, nn) = H;
      if (pp > 0) {
        kkt.topRightCorner(nn, pp) = rm.A.transpose();
        kkt.bottomLeftCorner(pp, nn) = rm.A;
      }
      RVec rhs(nn + pp);
      rhs.head(nn) = g;
      if (pp > 0) rhs.tail(pp) = rm.b;
      const RVec sol = kkt.completeOrthogonalDecomposition().solve(rhs);
      RVec cand = sol.head(nn);

      const double before = rm.smoothed(xi, w, eps);
      double t = 1.0;
      RVec next = cand;
      while (rm.smoothed(next, w, eps) > before && t > 1e-7) {
        t *= 0.5;
        next = xi + t * (cand - xi);
      }
      const double after = rm.smoothed(next, w, eps);
      if (after > before) break;
      const bool converged = before - after <= 1e-15 * (1.0 + std::abs(before));
      xi = next;
      if (converged) break;
    }
  }
  return xi;
}

} // namespace

ComplexAffineL1Solution minimize_weighted_moduli(const ComplexAffineL1Problem& problem) {
  const int m = static_cast<int>(problem.term_const.size());
  const int n = static_cast<int>(problem.term_coeffs.cols());
  const int p = static_cast<int>(problem.eq_lhs.rows());
  if (problem.term_coeffs.rows() != m || problem.weights.size() != m)
    throw std::invalid_argument("weighted moduli problem: term dimensions mismatch");
  if (problem.eq_rhs.size() != p || (p > 0 && problem.eq_lhs.cols() != n))
    throw std::invalid_argument("weighted moduli problem: equality dimensions mismatch");
  if (problem.directions < 3) throw std::invalid_argument("need at least 3 directions");

  ComplexAffineL1Solution out;
  if (n == 0) {
    out.status = LpStatus::Optimal;
    out.a = Vec(0);
    for (int i = 0; i < m; ++i) out.objective += problem.weights[i] * std::abs(problem.term_const[i]);
    return out;
  }

  const int K = problem.directions;
  const int nvar = 2 * n + m;  // interleaved re/im, then epigraph variables
  LinearProgram lp;
  lp.objective = RVec::Zero(nvar);
  for (int i = 0; i < m; ++i) lp.objective[2 * n + i] = problem.weights[i];
  lp.lower = RVec::Constant(nvar, -std::numeric_limits<double>::infinity());
  for (int i = 0; i < m; ++i) lp.lower[2 * n + i] = 0.0;

  lp.eq_lhs = RMat::Zero(2 * p, nvar);
  lp.eq_rhs = RVec(2 * p);
  for (int i = 0; i < p; ++i) {
    lp.eq_rhs[2 * i] = problem.eq_rhs[i].real();
    lp.eq_rhs[2 * i + 1] = problem.eq_rhs[i].imag();
    for (int j = 0; j < n; ++j) {
      const cxd c = problem.eq_lhs(i, j);
      lp.eq_lhs(2 * i, 2 * j) = c.real();
      lp.eq_lhs(2 * i, 2 * j + 1) = -c.imag();
      lp.eq_lhs(2 * i + 1, 2 * j) = c.imag();
      lp.eq_lhs(2 * i + 1, 2 * j + 1) = c.real();
    }
  }

  lp.le_lhs = RMat::Zero(m * K, nvar);
  lp.le_rhs = RVec(m * K);
  for (int i = 0; i < m; ++i)
    for (int k = 0; k < K; ++k) {
      const double ck = std::cos(2.0 * kPi * k / K);
      const double sk = std::sin(2.0 * kPi * k / K);
      const int row = i * K + k;
      for (int j = 0; j < n; ++j) {
        const cxd c = problem.term_coeffs(i, j);
        lp.le_lhs(row, 2 * j) = ck * c.real() + sk * c.imag();
        lp.le_lhs(row, 2 * j + 1) = -ck * c.imag() + sk * c.real();
      }
      lp.le_lhs(row, 2 * n + i) = -1.0;
      lp.le_rhs[row] = -(ck * problem.term_const[i].real() + sk * problem.term_const[i].imag());
    }

  const LpSolution sol = solve_lp(lp);
  if (sol.status != LpStatus::Optimal) {
    out.status = sol.status;
    return out;
  }

  const RealModel rm = realify(problem);
  RVec xi = sol.x.head(2 * n);
  const double lp_obj = rm.objective(xi, problem.weights);
  const RVec polished = polish(rm, problem.weights, xi);
  const double pol_obj = rm.objective(polished, problem.weights);
  const double pol_res =
      rm.A.rows() > 0 ? (rm.A * polished - rm.b).cwiseAbs().maxCoeff() : 0.0;
  // prefer the polished point on ties: it is the unique smoothed optimum,
  // which keeps the result invariant under reindexing of the variables
  if (pol_obj <= lp_obj + 1e-10 * (1.0 + std::abs(lp_obj)) && pol_res <= 1e-9) xi = polished;

  out.status = LpStatus::Optimal;
  out.a = Vec(n);
  for (int j = 0; j < n; ++j) out.a[j] = cxd(xi[2 * j], xi[2 * j + 1]);
  out.objective = rm.objective(xi, problem.weights);
  out.residual = rm.A.rows() > 0 ? (rm.A * xi - rm.b).cwiseAbs().maxCoeff() : 0.0;
  return out;
}

ComplexAffineL1Solution complex_l1_minimize(const Mat& constraints, const Vec& rhs,
                                            int directions) {
  if (constraints.rows() != rhs.size())
    throw std::invalid_argument("complex_l1_minimize: constraint dimensions mismatch");
  ComplexAffineL1Problem p;
  const int n = static_cast<int>(constraints.cols());
  p.term_coeffs = Mat::Identity(n, n);
  p.term_const = Vec::Zero(n);
  p.weights = RVec::Ones(n);
  p.eq_lhs = constraints;
  p.eq_rhs = rhs;
  p.directions = directions;
  return minimize_weighted_moduli(p);
}

} // namespace uiap
