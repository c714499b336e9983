#include "uiap/oracle.hpp"

#include <algorithm>
#include <stdexcept>

#include "uiap/lp.hpp"

namespace uiap {

namespace {

constexpr double kBudgetTol = 1e-8;

// f = f_R + sum_j a_j d_j chi_j over the free part of S; returns the values
// matrix of the free columns and the fixed R part.
struct CentralModel {
  Vec fixed;       // sum_{sigma in R} d chi_sigma
  Mat free_cols;   // |G| x |S \ R|, column j = d_j chi_j
  std::vector<int> free_idx;
};

CentralModel central_model(const GroupSystem& sys, const SpectralSet& R, const SpectralSet& S) {
  const FiniteGroup& g = *sys.group;
  const Dual& dual = *sys.dual;
  for (int idx : R.indices)
    if (!S.contains(idx)) throw std::invalid_argument("S must contain R");

  CentralModel m;
  m.fixed = Vec::Zero(g.order);
  for (int idx : R.indices) {
    const GroupFunction chi = character(g, dual.irreps[idx]);
    m.fixed += static_cast<double>(dual.irreps[idx].dim) * chi.values;
  }
  for (int idx : S.indices)
    if (!R.contains(idx)) m.free_idx.push_back(idx);
  m.free_cols = Mat(g.order, m.free_idx.size());
  for (std::size_t j = 0; j < m.free_idx.size(); ++j) {
    const GroupFunction chi = character(g, dual.irreps[m.free_idx[j]]);
    m.free_cols.col(j) = static_cast<double>(dual.irreps[m.free_idx[j]].dim) * chi.values;
  }
  return m;
}

} // namespace

OracleInterpolation min_l1_interpolation(const GroupSystem& sys, const SpectralSet& R,
                                         const SpectralSet& S, int lp_directions) {
  const FiniteGroup& g = *sys.group;
  const CentralModel m = central_model(sys, R, S);

  OracleInterpolation out;
  if (m.free_idx.empty()) {
    out.f = GroupFunction{&g, m.fixed};
    out.norm = norm_l1(out.f);
    return out;
  }

  ComplexAffineL1Problem p;
  p.term_coeffs = m.free_cols;
  p.term_const = m.fixed;
  p.weights = RVec::Constant(g.order, 1.0 / g.order);
  p.eq_lhs = Mat(0, m.free_idx.size());
  p.eq_rhs = Vec(0);
  p.directions = lp_directions;
  const auto sol = minimize_weighted_moduli(p);
  if (sol.status != LpStatus::Optimal)
    throw std::runtime_error("oracle interpolation unexpectedly " +
                             std::string(sol.status == LpStatus::Infeasible ? "infeasible"
                                                                            : "unbounded"));
  out.f = GroupFunction{&g, m.fixed + m.free_cols * sol.a};
  out.norm = norm_l1(out.f);
  return out;
}

SupportSearchResult minimal_support_search(const GroupSystem& sys, const SpectralSet& R,
                                           double budget, SearchStrategy strategy,
                                           int lp_directions) {
  const Dual& dual = *sys.dual;
  if (budget < 1.0 - kBudgetTol)
    throw std::invalid_argument(
        "budget below 1 is infeasible: every interpolant has l1 norm at least 1");

  std::vector<int> others;
  for (int s = 0; s < dual.size(); ++s)
    if (!R.contains(s)) others.push_back(s);

  const bool tractable = others.size() <= 12;
  if (strategy == SearchStrategy::Exhaustive && tractable) {
    // all supersets of R, walked in (v(S), lexicographic) order; the first
    // one within budget is the minimum
    std::vector<SpectralSet> candidates;
    const std::size_t count = std::size_t{1} << others.size();
    for (std::size_t mask = 0; mask < count; ++mask) {
      std::vector<int> idx = R.indices;
      for (std::size_t b = 0; b < others.size(); ++b)
        if (mask & (std::size_t{1} << b)) idx.push_back(others[b]);
      candidates.push_back(make_spectral_set(dual, idx));
    }
    std::sort(candidates.begin(), candidates.end(), [](const SpectralSet& a, const SpectralSet& b) {
      if (a.weight != b.weight) return a.weight < b.weight;
      return a.indices < b.indices;
    });
    for (const auto& S : candidates) {
      OracleInterpolation oi = min_l1_interpolation(sys, R, S, lp_directions);
      if (oi.norm <= budget + kBudgetTol) {
        SupportSearchResult out;
        out.support = S;
        out.norm = oi.norm;
        out.f = std::move(oi.f);
        out.strategy = "exhaustive";
        out.upper_bound = false;
        return out;
      }
    }
    throw std::runtime_error("exhaustive search exhausted the dual without meeting the budget");
  }

  // greedy: grow S by the single irrep with the largest norm decrease
  SpectralSet S = R;
  OracleInterpolation cur = min_l1_interpolation(sys, R, S, lp_directions);
  while (cur.norm > budget + kBudgetTol) {
    int best = -1;
    OracleInterpolation best_oi;
    for (int cand : others) {
      if (S.contains(cand)) continue;
      std::vector<int> idx = S.indices;
      idx.push_back(cand);
      OracleInterpolation oi =
          min_l1_interpolation(sys, R, make_spectral_set(dual, idx), lp_directions);
      if (best < 0 || oi.norm < best_oi.norm - 1e-12) {
        best = cand;
        best_oi = std::move(oi);
      }
    }
    if (best < 0)
      throw std::runtime_error("greedy search exhausted the dual without meeting the budget");
    std::vector<int> idx = S.indices;
    idx.push_back(best);
    S = make_spectral_set(dual, idx);
    cur = std::move(best_oi);
  }
  SupportSearchResult out;
  out.support = S;
  out.norm = cur.norm;
  out.f = std::move(cur.f);
  out.strategy = "greedy";
  out.upper_bound = true;
  return out;
}

} // namespace uiap
