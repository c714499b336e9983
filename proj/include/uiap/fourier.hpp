#pragma once

#include "uiap/group.hpp"
#include "uiap/types.hpp"

namespace uiap {

/// A complex-valued function on a finite group, one value per element index.
/// Integration is against the normalized Haar measure, i.e. the average.
struct GroupFunction {
  const FiniteGroup* group = nullptr;
  Vec values;
};

GroupFunction make_function(const FiniteGroup& group, Vec values);
GroupFunction zero_function(const FiniteGroup& group);
/// |G| times the indicator of the identity: the unit of the convolution algebra.
GroupFunction convolution_unit(const FiniteGroup& group);

enum class Side { Left, Right };

/// (l_y f)(x) = f(y^-1 x)  and  (r_y f)(x) = f(x y).
GroupFunction translate(const GroupFunction& f, int y, Side side);

/// One Fourier coefficient matrix per irrep:
///   fhat(sigma) = (1/|G|) sum_x U_{x^-1} f(x).
struct FourierCoefficients {
  const Dual* dual = nullptr;
  std::vector<Mat> blocks;                      // indexed like dual.irreps

  const Mat& block(const std::string& label) const;
};

FourierCoefficients fourier_transform(const GroupFunction& f, const Dual& dual);

/// Peter-Weyl synthesis, the exact inverse transform on a finite group:
///   f(x) = sum_sigma d_sigma tr(fhat(sigma) U_x).
GroupFunction synthesize(const FourierCoefficients& c);

/// (f*g)(x) = (1/|G|) sum_y f(y) g(y^-1 x).
/// Under the transform convention above, (f*g)^(sigma) = ghat(sigma) fhat(sigma).
GroupFunction convolve(const GroupFunction& f, const GroupFunction& g);

struct FunctionNorms {
  double l1 = 0.0;
  double l2 = 0.0;
  double linf = 0.0;
};

/// Norms under the normalized Haar measure; l1 <= l2 <= linf.
FunctionNorms norms(const GroupFunction& f);
double norm_l1(const GroupFunction& f);
double norm_l2(const GroupFunction& f);
double norm_linf(const GroupFunction& f);

/// Coordinate function u_jk(x) = <U_x zeta_j, zeta_k> = U_x(k, j), with the
/// standard basis for zeta and 0-based indices j, k.
GroupFunction coordinate_function(const FiniteGroup& group, const Irrep& sigma, int j, int k);

/// Character chi_sigma(x) = tr U_x.
GroupFunction character(const FiniteGroup& group, const Irrep& sigma);

/// For a central function every block is a scalar multiple of the identity;
/// alpha(f, sigma) is that scalar, computed as tr(fhat(sigma))/d_sigma.
cxd central_scalar(const Mat& block);

/// Max over sigma of || fhat(sigma) - alpha I ||_HS with alpha = tr/d; zero
/// (within tolerance) exactly for class functions.
double centrality_defect(const FourierCoefficients& c);
double centrality_defect(const GroupFunction& f, const Dual& dual);

/// { sigma : ||fhat(sigma)||_HS > cutoff } and its weight v = sum d^2.
SpectralSet spectral_support(const FourierCoefficients& c, double cutoff);

} // namespace uiap
