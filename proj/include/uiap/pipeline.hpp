#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "uiap/fourier.hpp"
#include "uiap/group.hpp"
#include "uiap/types.hpp"

namespace uiap {

enum class NormingMode { Auto, Restriction, Net };

std::string to_string(NormingMode mode);
NormingMode norming_mode_from_string(const std::string& s);

struct PipelineParams {
  double delta = 0.2;                   // distortion budget, in (0,1)
  std::optional<double> epsilon;        // when set, recorded as the l1 target
  NormingMode mode = NormingMode::Auto;
  int lp_directions = 32;               // polygonal direction count K
  double lp_tol = 1e-8;
  int threads = 0;                      // 0 = UIAP_THREADS / hardware
};

/// Thrown when a stage cannot certify its contract; stage names match the
/// construction steps so failures are attributable.
struct PipelineError : std::runtime_error {
  std::string stage;
  PipelineError(std::string stage_, const std::string& what_)
      : std::runtime_error(stage_ + ": " + what_), stage(std::move(stage_)) {}
};

/// Orthonormal basis of the span of all coordinate functions of R, as columns
/// of a |G| x v(R) matrix: the scaled coordinate functions sqrt(d) u_jk in
/// dual order. Orthonormal in the normalized L2 inner product.
Mat rspan_basis(const Dual& dual, const SpectralSet& R);

/// A finite point set S on which the sup norm of every function in the R-span
/// is attained up to the certified factor gamma.
struct NormingSet {
  std::vector<int> points;     // element indices, ascending
  int size = 0;                // N = |S|
  double gamma = 1.0;          // certified: max_S |f| >= gamma * sup |f| on the span
  double delta = 0.0;          // requested distortion
  NormingMode mode = NormingMode::Restriction;
};

/// A-priori size bound of the net construction, ceil((1 + 2/delta)^(2 v)).
double net_point_bound(double delta, int v_r);

/// Restriction mode: S = G with gamma = 1. Net mode: greedy farthest-point
/// packing of the unit sphere of the R-span in sup norm, evaluation points
/// taken at each net function's maximizer, gamma certified a posteriori by
/// dense sampling plus local refinement; the packing radius shrinks and the
/// construction retries until gamma >= 1 - delta, else a PipelineError is
/// thrown (never a silently wrong gamma).
NormingSet build_norming_set(const Dual& dual, const SpectralSet& R, double delta,
                             NormingMode mode, int threads = 0);

/// T1 f(x) = sum_{s in S} c_s(x) f(s), with coefficients chosen per point as
/// the minimal-l1 functional interpolating every R-span basis function.
struct InterpolationOperator {
  const FiniteGroup* group = nullptr;
  std::vector<int> points;
  Mat coefficients;            // |G| x N, row x = c(x)
  double v_norm = 0.0;         // max_x sum_s |c_s(x)|
  double residual = 0.0;       // worst equality violation over basis functions
  double pi1_surrogate = 0.0;  // N * v_norm, the absolutely-summing chain bound

  GroupFunction apply(const GroupFunction& f) const;
};

InterpolationOperator build_interpolation_operator(const Dual& dual, const NormingSet& ns,
                                                   const Mat& rbasis, int lp_directions,
                                                   int threads = 0);

/// Double translation average h = (1/|G|^2) sum_{y,z} l_{y^-1} r_{z^-1} T1 r_z l_y
/// applied to the convolution unit: the averaged operator is invariant, hence
/// convolution by this central h.
GroupFunction average_to_central(const InterpolationOperator& op, int threads = 0);

/// g = h*h*h and the spectral cut f = sum_{|alpha(g,sigma)| > N^-4} d alpha chi.
/// Members of R are always retained (their alpha is 1 up to solver residual).
struct CubeThresholdResult {
  GroupFunction g;
  GroupFunction f;
  SpectralSet support;                    // kept set
  std::vector<cxd> alpha_f;               // scalars on the kept set, dual order
};

CubeThresholdResult cube_and_threshold(const GroupFunction& h, const Dual& dual,
                                       const SpectralSet& R, int n_points);

/// Largest delta on the 1e-4 grid whose certificate bound
/// ((1+d)/(1-d))^3 + ((1+d)/(1-d))^2 N(d)^(-1/3) stays within 1 + eps, where
/// N(d) is the a-priori point bound of the mode. Throws when even the
/// smallest grid delta overshoots.
double delta_for_epsilon(double eps, int v_r, NormingMode mode, int group_order);

struct AchievedMetrics {
  double f_l1 = 0.0;
  double f_l2 = 0.0;
  double f_linf = 0.0;          // informational only, no bound asserted
  int supp_weight = 0;
  double fhat_r_dev = 0.0;      // max_{sigma in R} ||fhat - I||_HS
  double centrality_f = 0.0;
  double centrality_h = 0.0;
  double h_l1 = 0.0;
  double h_l2 = 0.0;
  double h_inf = 0.0;
  double v_norm = 0.0;
};

struct ProvenBounds {
  double l1 = 0.0;        // ((1+d)/(1-d))^3 + ((1+d)/(1-d))^2 N^(-1/3)
  double support = 0.0;   // N^4 ((1+d)/(1-d))^2
  double h_inf = 0.0;     // N (1+d)/(1-d)
  double h_l2 = 0.0;      // sqrt(N) (1+d)/(1-d)
};

ProvenBounds bounds_for(double delta, int n_points);

/// Self-contained record of one construction: the function, its spectral
/// data, every achieved metric, and the bound each one must satisfy.
struct Certificate {
  int version = 1;
  std::string group_spec;             // catalog spec; empty for custom groups
  std::string embedded_group;         // group document JSON when custom
  std::vector<std::string> r_labels;
  int v_r = 0;
  std::string mode;
  double delta = 0.0;
  std::optional<double> epsilon;
  int lp_directions = 0;
  int n_points = 0;
  double gamma = 1.0;
  std::vector<int> norming_points;
  Vec f_values;
  Vec h_values;
  std::vector<std::string> support_labels;
  std::vector<cxd> alpha_f;
  AchievedMetrics achieved;
  ProvenBounds bounds;
};

struct PipelineRun {
  NormingSet norming;
  InterpolationOperator op;
  GroupFunction h;
  GroupFunction g;
  GroupFunction f;
  Certificate certificate;
};

/// Executes the full chain: norming set, interpolation operator, translation
/// average, cube and threshold, certificate assembly. Every achieved metric
/// is checked against its bound before returning.
PipelineRun run_pipeline(const GroupSystem& sys, const SpectralSet& R,
                         const PipelineParams& params);

std::string certificate_to_json(const Certificate& cert);
Certificate certificate_from_json(const std::string& text);

struct CertCheck {
  std::string name;
  double achieved = 0.0;
  double bound = 0.0;
  bool pass = false;
};

struct CertReport {
  std::vector<CertCheck> checks;
  bool pass = false;
  std::string summary() const;
};

struct VerifyTolerances {
  double fhat_r = 1e-6;
  double centrality = 1e-8;
  double bound_slack = 1e-9;
  double consistency = 1e-9;    // stored achieved vs recomputed
  double group_tol = 1e-10;
};

/// Recomputes every achieved metric from the stored function values (using
/// only the fourier module) and compares against the stored bounds. Throws
/// std::invalid_argument on malformed documents.
CertReport verify_certificate(const Certificate& cert, const VerifyTolerances& tol = {});
CertReport verify_certificate_json(const std::string& text, const VerifyTolerances& tol = {});

} // namespace uiap
