#pragma once

#include <memory>
#include <string>
#include <vector>

#include "uiap/types.hpp"

namespace uiap {

/// A finite group given by its multiplication table. Elements are the
/// canonical indices 0..order-1; all structure is table-driven.
struct FiniteGroup {
  std::string name;
  int order = 0;
  std::vector<int> cayley;                      // row-major: cayley[x*order+y] = x*y
  int identity = 0;
  std::vector<int> inverses;
  std::vector<std::vector<int>> conjugacy_classes;
  std::vector<std::string> element_labels;

  int mul(int x, int y) const { return cayley[static_cast<std::size_t>(x) * order + y]; }
  int inv(int x) const { return inverses[x]; }
};

/// One irreducible unitary representation: a unitary matrix per group element.
struct Irrep {
  std::string label;
  int dim = 0;
  std::vector<Mat> matrices;                    // indexed by element
};

/// A complete system of pairwise inequivalent irreps (the dual object).
struct Dual {
  const FiniteGroup* group = nullptr;
  std::vector<Irrep> irreps;

  int size() const { return static_cast<int>(irreps.size()); }
  /// Position of the irrep with the given label; throws if unknown.
  int index_of(const std::string& label) const;
  /// Total spectral weight sum_sigma d^2 (equals |G| for a complete dual).
  int total_weight() const;
};

/// A subset of the dual together with its spectral weight v(S) = sum d^2.
struct SpectralSet {
  std::vector<int> indices;                     // sorted positions in the dual
  int weight = 0;

  bool contains(int idx) const;
  std::vector<std::string> labels(const Dual& dual) const;
};

SpectralSet make_spectral_set(const Dual& dual, const std::vector<int>& indices);
SpectralSet make_spectral_set(const Dual& dual, const std::vector<std::string>& labels);

/// Group plus verified dual, the unit the catalog hands out.
struct GroupSystem {
  std::shared_ptr<const FiniteGroup> group;
  std::shared_ptr<const Dual> dual;
};

enum class GroupFamily { Cyclic, Dihedral, Symmetric, Quaternion };

/// Builds a catalog group with its complete dual system.
///   cyclic n>=1        characters chi_k(x) = exp(2*pi*i*k*x/n)
///   dihedral n>=3      order 2n, one-dimensional signs plus rotation blocks
///   symmetric n in {3,4}  Young's orthogonal form
///   quaternion         order 8, parameter ignored
GroupSystem build_catalog_group(GroupFamily family, int parameter);

/// Parses a spec string like "Z12", "D4", "S3", "Q8" or a product "Z2xS3".
GroupSystem parse_group_spec(const std::string& spec);

/// Direct product with component-wise multiplication; the dual is the full
/// set of tensor products U_(x,y) = U_x (x) U_y.
GroupSystem direct_product(const GroupSystem& a, const GroupSystem& b);

struct InvariantCheck {
  std::string name;
  double deviation = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

/// Outcome of verify_irrep_system. Structural failures (wrong counts or
/// shapes, inconsistent tables) are reported separately from numerical
/// deviations.
struct VerifyReport {
  std::vector<InvariantCheck> checks;
  std::vector<std::string> structural_errors;
  bool pass = false;

  double max_deviation() const;
  std::string summary() const;
};

/// Exhaustively checks the group axioms, every Irrep invariant (unitarity,
/// homomorphism, identity, character norm one), dual completeness and
/// inequivalence, and Schur orthonormality of the scaled coordinate
/// functions sqrt(d) u_jk.
VerifyReport verify_irrep_system(const FiniteGroup& group, const Dual& dual,
                                 double tol = 1e-10);

/// Import/export of the custom group document:
/// {name, order, cayley (row-major), irreps: [{label, dim, matrices}]}
/// with complex entries as [re, im] pairs. Imported systems must pass
/// verify_irrep_system before use; failures throw with the failed invariant.
GroupSystem import_group_json(const std::string& json_text, double tol = 1e-10);
std::string export_group_json(const FiniteGroup& group, const Dual& dual);

} // namespace uiap
