#pragma once

#include <string>

#include "uiap/fourier.hpp"
#include "uiap/group.hpp"

namespace uiap {

/// Ground truth for the bound comparisons: the minimal L1 norm of a central
/// function with fhat = I on R and spectral support inside S, computed by
/// minimizing over the free scalars a_sigma (sigma in S \ R) of
///   f = sum_{sigma in S} d_sigma a_sigma chi_sigma,   a_sigma = 1 on R.
struct OracleInterpolation {
  double norm = 0.0;     // (1/|G|) sum |f(x)| at the returned minimizer
  GroupFunction f;
};

OracleInterpolation min_l1_interpolation(const GroupSystem& sys, const SpectralSet& R,
                                         const SpectralSet& S, int lp_directions = 32);

enum class SearchStrategy { Exhaustive, Greedy };

/// Smallest spectral weight v(S) over S containing R with interpolation norm
/// within the budget k. Exhaustive search walks supersets in (v(S), lex)
/// order and is exact; above 2^12 subsets it falls back to greedy, which adds
/// the single irrep with the largest norm decrease and yields an upper bound
/// (flagged as such).
struct SupportSearchResult {
  SpectralSet support;
  double norm = 0.0;
  GroupFunction f;
  std::string strategy;        // "exhaustive" or "greedy"
  bool upper_bound = false;    // true when the result is only an upper bound
};

SupportSearchResult minimal_support_search(const GroupSystem& sys, const SpectralSet& R,
                                           double budget, SearchStrategy strategy,
                                           int lp_directions = 32);

} // namespace uiap
