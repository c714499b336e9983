#pragma once

#include <cmath>

#include "uiap/types.hpp"

namespace uiap {

enum class LpStatus { Optimal, Infeasible, Unbounded };

/// min objective.x  subject to  eq_lhs x = eq_rhs,  le_lhs x <= le_rhs,
/// x >= lower componentwise (-inf entries mark free variables).
struct LinearProgram {
  RVec objective;
  RMat eq_lhs;
  RVec eq_rhs;
  RMat le_lhs;
  RVec le_rhs;
  RVec lower;
};

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  RVec x;
  double objective = 0.0;
  RVec dual_eq;   // row multipliers; objective = eq_rhs.dual_eq + le_rhs.dual_le at optimum
  RVec dual_le;   // <= 0 at an optimum of the minimization
};

/// Dense two-phase simplex with Bland's rule; ties broken by lowest index.
LpSolution solve_lp(const LinearProgram& lp);

/// Polygonal outer approximation of the complex modulus by K supporting
/// half-planes: estimate(z) <= |z| <= sec(pi/K) * estimate(z).
struct PolygonalApprox {
  int directions = 32;

  double estimate(cxd z) const {
    double best = 0.0;
    for (int k = 0; k < directions; ++k) {
      const double th = 2.0 * kPi * k / directions;
      best = std::max(best, std::cos(th) * z.real() + std::sin(th) * z.imag());
    }
    return best;
  }
  double overestimate_factor() const { return 1.0 / std::cos(kPi / directions); }
};

/// Smallest K with sec(pi/K) <= 1 + slack (never below min_directions).
int directions_for_slack(double slack, int min_directions = 32);

/// min sum_i weights_i |term_const_i + term_coeffs.row(i).a|  over a in C^n,
/// subject to eq_lhs a = eq_rhs. Solved as an LP through the polygonal
/// epigraph, then polished on the true objective; the returned objective is
/// within a factor sec(pi/K) of the minimum and the constraint residual is
/// at solver precision.
struct ComplexAffineL1Problem {
  Mat term_coeffs;   // m x n
  Vec term_const;    // m
  RVec weights;      // m, nonnegative
  Mat eq_lhs;        // p x n (may be 0 x n)
  Vec eq_rhs;        // p
  int directions = 32;
};

struct ComplexAffineL1Solution {
  LpStatus status = LpStatus::Infeasible;
  Vec a;
  double objective = 0.0;   // true weighted sum of moduli at a
  double residual = 0.0;    // max |eq_lhs a - eq_rhs|
};

ComplexAffineL1Solution minimize_weighted_moduli(const ComplexAffineL1Problem& problem);

/// min sum_i |c_i|  subject to  constraints c = rhs  (complex m x n system).
ComplexAffineL1Solution complex_l1_minimize(const Mat& constraints, const Vec& rhs,
                                            int directions = 32);

} // namespace uiap
