#include "uiap/group.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace uiap {

namespace {

using json = nlohmann::json;

void compute_derived_structure(FiniteGroup& g) {
  const int n = g.order;
  // identity: the unique e with e*y = y for all y
  g.identity = -1;
  for (int e = 0; e < n; ++e) {
    bool ok = true;
    for (int y = 0; y < n && ok; ++y) ok = g.mul(e, y) == y && g.mul(y, e) == y;
    if (ok) {
      g.identity = e;
      break;
    }
  }
  if (g.identity < 0) throw std::invalid_argument("group table has no two-sided identity");

  g.inverses.assign(n, -1);
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      if (g.mul(x, y) == g.identity && g.mul(y, x) == g.identity) {
        g.inverses[x] = y;
        break;
      }
    }
    if (g.inverses[x] < 0) throw std::invalid_argument("group table has a non-invertible element");
  }

  g.conjugacy_classes.clear();
  std::vector<char> seen(n, 0);
  for (int x = 0; x < n; ++x) {
    if (seen[x]) continue;
    std::set<int> cls;
    for (int y = 0; y < n; ++y) cls.insert(g.mul(g.mul(y, x), g.inv(y)));
    std::vector<int> members(cls.begin(), cls.end());
    for (int m : members) seen[m] = 1;
    g.conjugacy_classes.push_back(std::move(members));
  }
}

FiniteGroup make_cyclic(int n) {
  FiniteGroup g;
  g.name = "Z" + std::to_string(n);
  g.order = n;
  g.cayley.resize(static_cast<std::size_t>(n) * n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) g.cayley[static_cast<std::size_t>(x) * n + y] = (x + y) % n;
  g.element_labels.resize(n);
  for (int x = 0; x < n; ++x) g.element_labels[x] = std::to_string(x);
  compute_derived_structure(g);
  return g;
}

Dual cyclic_dual(const FiniteGroup& g) {
  const int n = g.order;
  Dual dual;
  for (int k = 0; k < n; ++k) {
    Irrep ir;
    ir.label = "chi" + std::to_string(k);
    ir.dim = 1;
    ir.matrices.reserve(n);
    for (int x = 0; x < n; ++x) {
      Mat m(1, 1);
      m(0, 0) = std::polar(1.0, 2.0 * kPi * k * x / n);
      ir.matrices.push_back(m);
    }
    // exact unit at the identity
    ir.matrices[0](0, 0) = cxd(1.0, 0.0);
    dual.irreps.push_back(std::move(ir));
  }
  return dual;
}

// Dihedral group of order 2n: element (eps, a) = s^eps r^a at index eps*n + a,
// with (eps,a)*(phi,b) = (eps xor phi, (-1)^phi a + b mod n).
FiniteGroup make_dihedral(int n) {
  FiniteGroup g;
  g.name = "D" + std::to_string(n);
  g.order = 2 * n;
  g.cayley.resize(static_cast<std::size_t>(g.order) * g.order);
  auto idx = [n](int eps, int a) { return eps * n + a; };
  for (int eps = 0; eps < 2; ++eps)
    for (int a = 0; a < n; ++a)
      for (int phi = 0; phi < 2; ++phi)
        for (int b = 0; b < n; ++b) {
          int c = phi ? ((b - a) % n + n) % n : (a + b) % n;
          g.cayley[static_cast<std::size_t>(idx(eps, a)) * g.order + idx(phi, b)] =
              idx(eps ^ phi, c);
        }
  g.element_labels.resize(g.order);
  for (int a = 0; a < n; ++a) {
    g.element_labels[idx(0, a)] = "r" + std::to_string(a);
    g.element_labels[idx(1, a)] = "sr" + std::to_string(a);
  }
  compute_derived_structure(g);
  return g;
}

Dual dihedral_dual(const FiniteGroup& g, int n) {
  Dual dual;
  const int order = 2 * n;
  auto one_dim = [&](const std::string& label, bool sign_on_s, bool sign_on_r) {
    Irrep ir;
    ir.label = label;
    ir.dim = 1;
    ir.matrices.resize(order, Mat::Ones(1, 1));
    for (int eps = 0; eps < 2; ++eps)
      for (int a = 0; a < n; ++a) {
        double v = 1.0;
        if (sign_on_s && eps) v = -v;
        if (sign_on_r && (a % 2)) v = -v;
        ir.matrices[eps * n + a](0, 0) = v;
      }
    dual.irreps.push_back(std::move(ir));
  };
  one_dim("triv", false, false);
  one_dim("sgn", true, false);
  if (n % 2 == 0) {
    one_dim("alt", false, true);
    one_dim("altsgn", true, true);
  }
  const int two_dim_count = (n % 2 == 0) ? n / 2 - 1 : (n - 1) / 2;
  for (int k = 1; k <= two_dim_count; ++k) {
    Irrep ir;
    ir.label = "rho" + std::to_string(k);
    ir.dim = 2;
    ir.matrices.resize(order);
    for (int a = 0; a < n; ++a) {
      const cxd w = (a == 0) ? cxd(1.0, 0.0) : std::polar(1.0, 2.0 * kPi * k * a / n);
      Mat rot = Mat::Zero(2, 2);
      rot(0, 0) = w;
      rot(1, 1) = std::conj(w);
      ir.matrices[a] = rot;
      Mat refl = Mat::Zero(2, 2);    // rho(s r^a) = swap * rot
      refl(0, 1) = std::conj(w);
      refl(1, 0) = w;
      ir.matrices[n + a] = refl;
    }
    dual.irreps.push_back(std::move(ir));
  }
  return dual;
}

// --- symmetric groups via Young's orthogonal form -------------------------

std::vector<std::vector<int>> all_permutations(int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

FiniteGroup make_symmetric(int n) {
  auto perms = all_permutations(n);  // lexicographic; identity first
  const int order = static_cast<int>(perms.size());
  FiniteGroup g;
  g.name = "S" + std::to_string(n);
  g.order = order;
  g.cayley.resize(static_cast<std::size_t>(order) * order);
  auto find_index = [&](const std::vector<int>& q) {
    return static_cast<int>(std::lower_bound(perms.begin(), perms.end(), q) - perms.begin());
  };
  for (int i = 0; i < order; ++i)
    for (int j = 0; j < order; ++j) {
      std::vector<int> pq(n);
      for (int t = 0; t < n; ++t) pq[t] = perms[i][perms[j][t]];  // (p o q)(t) = p(q(t))
      g.cayley[static_cast<std::size_t>(i) * order + j] = find_index(pq);
    }
  g.element_labels.resize(order);
  for (int i = 0; i < order; ++i) {
    std::string s;
    for (int t = 0; t < n; ++t) s += std::to_string(perms[i][t]);
    g.element_labels[i] = s;
  }
  compute_derived_structure(g);
  return g;
}

// Standard Young tableaux of a given shape, enumerated deterministically.
struct Tableau {
  std::vector<int> row_of;  // row_of[v], col_of[v] for entries v = 0..n-1
  std::vector<int> col_of;
};

void enumerate_syt(const std::vector<int>& shape, int v, std::vector<int>& fill_count,
                   Tableau& partial, std::vector<Tableau>& out) {
  const int n = std::accumulate(shape.begin(), shape.end(), 0);
  if (v == n) {
    out.push_back(partial);
    return;
  }
  for (int r = 0; r < static_cast<int>(shape.size()); ++r) {
    if (fill_count[r] >= shape[r]) continue;
    if (r > 0 && fill_count[r - 1] <= fill_count[r]) continue;  // column must increase
    partial.row_of[v] = r;
    partial.col_of[v] = fill_count[r];
    ++fill_count[r];
    enumerate_syt(shape, v + 1, fill_count, partial, out);
    --fill_count[r];
  }
}

std::vector<Tableau> standard_tableaux(const std::vector<int>& shape) {
  const int n = std::accumulate(shape.begin(), shape.end(), 0);
  std::vector<Tableau> out;
  Tableau partial;
  partial.row_of.assign(n, -1);
  partial.col_of.assign(n, -1);
  std::vector<int> fill(shape.size(), 0);
  enumerate_syt(shape, 0, fill, partial, out);
  return out;
}

// Matrix of the adjacent transposition (i, i+1) in Young's orthogonal form:
// acting on tableau T, the diagonal entry is 1/d and the off-diagonal entry
// sqrt(1 - 1/d^2) connects to T with i and i+1 swapped, where d is the axial
// distance (col - row)(i+1) - (col - row)(i).
Mat yor_transposition(const std::vector<Tableau>& tabs, int i) {
  const int m = static_cast<int>(tabs.size());
  Mat M = Mat::Zero(m, m);
  for (int t = 0; t < m; ++t) {
    const Tableau& T = tabs[t];
    const int d = (T.col_of[i + 1] - T.row_of[i + 1]) - (T.col_of[i] - T.row_of[i]);
    M(t, t) = 1.0 / d;
    if (std::abs(d) > 1) {
      Tableau S = T;
      std::swap(S.row_of[i], S.row_of[i + 1]);
      std::swap(S.col_of[i], S.col_of[i + 1]);
      for (int u = 0; u < m; ++u) {
        if (tabs[u].row_of == S.row_of && tabs[u].col_of == S.col_of) {
          M(t, u) = std::sqrt(1.0 - 1.0 / (static_cast<double>(d) * d));
          break;
        }
      }
    }
  }
  return M;
}

Dual symmetric_dual(const FiniteGroup& g, int n) {
  std::vector<std::vector<int>> shapes;
  if (n == 3)
    shapes = {{3}, {2, 1}, {1, 1, 1}};
  else
    shapes = {{4}, {3, 1}, {2, 2}, {2, 1, 1}, {1, 1, 1, 1}};

  auto perms = all_permutations(n);
  // generator index of each adjacent transposition s_i (one-line notation)
  std::vector<int> gen_index;
  for (int i = 0; i + 1 < n; ++i) {
    std::vector<int> s(n);
    std::iota(s.begin(), s.end(), 0);
    std::swap(s[i], s[i + 1]);
    gen_index.push_back(
        static_cast<int>(std::lower_bound(perms.begin(), perms.end(), s) - perms.begin()));
  }

  Dual dual;
  for (const auto& shape : shapes) {
    auto tabs = standard_tableaux(shape);
    Irrep ir;
    ir.label = "s";
    for (int part : shape) ir.label += std::to_string(part);
    ir.dim = static_cast<int>(tabs.size());
    ir.matrices.assign(g.order, Mat());
    ir.matrices[g.identity] = Mat::Identity(ir.dim, ir.dim);

    std::vector<Mat> gens;
    gens.reserve(gen_index.size());
    for (int i = 0; i + 1 < n; ++i) gens.push_back(yor_transposition(tabs, i));

    // breadth-first extension by the homomorphism property
    std::deque<int> queue{g.identity};
    std::vector<char> known(g.order, 0);
    known[g.identity] = 1;
    while (!queue.empty()) {
      const int x = queue.front();
      queue.pop_front();
      for (std::size_t s = 0; s < gens.size(); ++s) {
        const int y = g.mul(x, gen_index[s]);
        if (!known[y]) {
          known[y] = 1;
          ir.matrices[y] = ir.matrices[x] * gens[s];
          queue.push_back(y);
        }
      }
    }
    dual.irreps.push_back(std::move(ir));
  }
  return dual;
}

// --- quaternion group ------------------------------------------------------

// Elements 1,-1,i,-i,j,-j,k,-k at indices 0..7: (sign, basis) with
// basis 0..3 = 1,i,j,k and index = 2*basis + (sign < 0).
FiniteGroup make_quaternion() {
  static const int basis_mul[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static const int sign_mul[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
  FiniteGroup g;
  g.name = "Q8";
  g.order = 8;
  g.cayley.resize(64);
  auto idx = [](int basis, int sign) { return 2 * basis + (sign < 0 ? 1 : 0); };
  for (int b1 = 0; b1 < 4; ++b1)
    for (int s1 : {1, -1})
      for (int b2 = 0; b2 < 4; ++b2)
        for (int s2 : {1, -1}) {
          const int b = basis_mul[b1][b2];
          const int s = s1 * s2 * sign_mul[b1][b2];
          g.cayley[static_cast<std::size_t>(idx(b1, s1)) * 8 + idx(b2, s2)] = idx(b, s);
        }
  g.element_labels = {"1", "-1", "i", "-i", "j", "-j", "k", "-k"};
  compute_derived_structure(g);
  return g;
}

Dual quaternion_dual(const FiniteGroup& g) {
  Dual dual;
  auto one_dim = [&](const std::string& label, double vi, double vj) {
    Irrep ir;
    ir.label = label;
    ir.dim = 1;
    ir.matrices.resize(8, Mat::Ones(1, 1));
    // value on (basis, sign): signs act trivially in the abelianization
    const double vals[4] = {1.0, vi, vj, vi * vj};
    for (int b = 0; b < 4; ++b)
      for (int s = 0; s < 2; ++s) ir.matrices[2 * b + s](0, 0) = vals[b];
    dual.irreps.push_back(std::move(ir));
  };
  one_dim("triv", 1.0, 1.0);
  one_dim("sgn_i", 1.0, -1.0);
  one_dim("sgn_j", -1.0, 1.0);
  one_dim("sgn_k", -1.0, -1.0);

  Irrep rho;
  rho.label = "rho";
  rho.dim = 2;
  rho.matrices.resize(8);
  const cxd I(0.0, 1.0);
  Mat mi(2, 2), mj(2, 2), mk(2, 2);
  mi << I, 0.0, 0.0, -I;       // i  -> i*sigma_z
  mj << 0.0, 1.0, -1.0, 0.0;   // j  -> i*sigma_y
  mk << 0.0, I, I, 0.0;        // k  -> i*sigma_x
  rho.matrices[0] = Mat::Identity(2, 2);
  rho.matrices[1] = -Mat::Identity(2, 2);
  rho.matrices[2] = mi;
  rho.matrices[3] = -mi;
  rho.matrices[4] = mj;
  rho.matrices[5] = -mj;
  rho.matrices[6] = mk;
  rho.matrices[7] = -mk;
  dual.irreps.push_back(std::move(rho));
  return dual;
}

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

GroupSystem finish(FiniteGroup group, Dual dual) {
  auto gp = std::make_shared<FiniteGroup>(std::move(group));
  dual.group = gp.get();
  auto dp = std::make_shared<Dual>(std::move(dual));
  return GroupSystem{gp, dp};
}

} // namespace

int Dual::index_of(const std::string& label) const {
  for (int i = 0; i < size(); ++i)
    if (irreps[i].label == label) return i;
  throw std::invalid_argument("unknown irrep label: " + label);
}

int Dual::total_weight() const {
  int w = 0;
  for (const auto& ir : irreps) w += ir.dim * ir.dim;
  return w;
}

bool SpectralSet::contains(int idx) const {
  return std::binary_search(indices.begin(), indices.end(), idx);
}

std::vector<std::string> SpectralSet::labels(const Dual& dual) const {
  std::vector<std::string> out;
  out.reserve(indices.size());
  for (int i : indices) out.push_back(dual.irreps[i].label);
  return out;
}

SpectralSet make_spectral_set(const Dual& dual, const std::vector<int>& indices) {
  SpectralSet s;
  s.indices = indices;
  std::sort(s.indices.begin(), s.indices.end());
  s.indices.erase(std::unique(s.indices.begin(), s.indices.end()), s.indices.end());
  for (int i : s.indices) {
    if (i < 0 || i >= dual.size()) throw std::invalid_argument("irrep index out of range");
    s.weight += dual.irreps[i].dim * dual.irreps[i].dim;
  }
  return s;
}

SpectralSet make_spectral_set(const Dual& dual, const std::vector<std::string>& labels) {
  std::vector<int> idx;
  idx.reserve(labels.size());
  for (const auto& l : labels) idx.push_back(dual.index_of(l));
  return make_spectral_set(dual, idx);
}

GroupSystem build_catalog_group(GroupFamily family, int parameter) {
  switch (family) {
    case GroupFamily::Cyclic: {
      if (parameter < 1) throw std::invalid_argument("cyclic group needs n >= 1");
      FiniteGroup g = make_cyclic(parameter);
      Dual d = cyclic_dual(g);
      return finish(std::move(g), std::move(d));
    }
    case GroupFamily::Dihedral: {
      if (parameter < 3) throw std::invalid_argument("dihedral group needs n >= 3");
      FiniteGroup g = make_dihedral(parameter);
      Dual d = dihedral_dual(g, parameter);
      return finish(std::move(g), std::move(d));
    }
    case GroupFamily::Symmetric: {
      if (parameter != 3 && parameter != 4)
        throw std::invalid_argument("symmetric group catalog covers n in {3,4} only");
      FiniteGroup g = make_symmetric(parameter);
      Dual d = symmetric_dual(g, parameter);
      return finish(std::move(g), std::move(d));
    }
    case GroupFamily::Quaternion: {
      FiniteGroup g = make_quaternion();
      Dual d = quaternion_dual(g);
      return finish(std::move(g), std::move(d));
    }
  }
  throw std::invalid_argument("unknown group family");
}

GroupSystem parse_group_spec(const std::string& spec) {
  if (spec.empty()) throw std::invalid_argument("empty group spec");
  std::vector<std::string> atoms;
  std::string cur;
  for (char c : spec) {
    if (c == 'x') {
      if (cur.empty()) throw std::invalid_argument("malformed group spec: " + spec);
      atoms.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (cur.empty()) throw std::invalid_argument("malformed group spec: " + spec);
  atoms.push_back(cur);

  auto parse_atom = [](const std::string& a) -> GroupSystem {
    if (a.size() < 2) throw std::invalid_argument("unknown group: " + a);
    const char f = a[0];
    int n = 0;
    try {
      n = std::stoi(a.substr(1));
    } catch (...) {
      throw std::invalid_argument("unknown group: " + a);
    }
    switch (f) {
      case 'Z': return build_catalog_group(GroupFamily::Cyclic, n);
      case 'D': return build_catalog_group(GroupFamily::Dihedral, n);
      case 'S': return build_catalog_group(GroupFamily::Symmetric, n);
      case 'Q':
        if (n != 8) throw std::invalid_argument("quaternion catalog entry is Q8");
        return build_catalog_group(GroupFamily::Quaternion, 0);
      default: throw std::invalid_argument("unknown group family in: " + a);
    }
  };

  GroupSystem sys = parse_atom(atoms[0]);
  for (std::size_t i = 1; i < atoms.size(); ++i) sys = direct_product(sys, parse_atom(atoms[i]));
  return sys;
}

GroupSystem direct_product(const GroupSystem& a, const GroupSystem& b) {
  const FiniteGroup& ga = *a.group;
  const FiniteGroup& gb = *b.group;
  FiniteGroup g;
  g.name = ga.name + "x" + gb.name;
  g.order = ga.order * gb.order;
  g.cayley.resize(static_cast<std::size_t>(g.order) * g.order);
  auto idx = [&](int x, int y) { return x * gb.order + y; };
  for (int x1 = 0; x1 < ga.order; ++x1)
    for (int y1 = 0; y1 < gb.order; ++y1)
      for (int x2 = 0; x2 < ga.order; ++x2)
        for (int y2 = 0; y2 < gb.order; ++y2)
          g.cayley[static_cast<std::size_t>(idx(x1, y1)) * g.order + idx(x2, y2)] =
              idx(ga.mul(x1, x2), gb.mul(y1, y2));
  g.element_labels.resize(g.order);
  for (int x = 0; x < ga.order; ++x)
    for (int y = 0; y < gb.order; ++y)
      g.element_labels[idx(x, y)] = "(" + ga.element_labels[x] + "," + gb.element_labels[y] + ")";
  compute_derived_structure(g);

  Dual dual;
  for (const auto& ia : a.dual->irreps)
    for (const auto& ib : b.dual->irreps) {
      Irrep ir;
      ir.label = ia.label + "x" + ib.label;
      ir.dim = ia.dim * ib.dim;
      ir.matrices.reserve(g.order);
      for (int x = 0; x < ga.order; ++x)
        for (int y = 0; y < gb.order; ++y)
          ir.matrices.push_back(kron(ia.matrices[x], ib.matrices[y]));
      dual.irreps.push_back(std::move(ir));
    }
  return finish(std::move(g), std::move(dual));
}

double VerifyReport::max_deviation() const {
  double m = 0.0;
  for (const auto& c : checks) m = std::max(m, c.deviation);
  return m;
}

std::string VerifyReport::summary() const {
  std::ostringstream os;
  for (const auto& e : structural_errors) os << "structural: " << e << "\n";
  for (const auto& c : checks)
    os << c.name << ": deviation " << c.deviation << (c.pass ? " (pass)" : " (FAIL)") << "\n";
  os << (pass ? "PASS" : "FAIL") << "\n";
  return os.str();
}

VerifyReport verify_irrep_system(const FiniteGroup& group, const Dual& dual, double tol) {
  VerifyReport rep;
  const int n = group.order;

  if (n <= 0 || static_cast<int>(group.cayley.size()) != n * n) {
    rep.structural_errors.push_back("cayley table size does not match order");
    rep.pass = false;
    return rep;
  }
  for (int v : group.cayley)
    if (v < 0 || v >= n) {
      rep.structural_errors.push_back("cayley entry out of range");
      rep.pass = false;
      return rep;
    }

  auto add = [&](const std::string& name, double dev, double tolerance) {
    rep.checks.push_back({name, dev, tolerance, dev <= tolerance});
  };

  // group axioms (exhaustive; deviations are violation counts)
  int assoc_bad = 0;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        if (group.mul(group.mul(x, y), z) != group.mul(x, group.mul(y, z))) ++assoc_bad;
  add("associativity", assoc_bad, 0.0);

  int unit_bad = 0;
  for (int y = 0; y < n; ++y)
    if (group.mul(group.identity, y) != y || group.mul(y, group.identity) != y) ++unit_bad;
  add("identity_element", unit_bad, 0.0);

  int inv_bad = 0;
  for (int x = 0; x < n; ++x)
    if (group.mul(x, group.inv(x)) != group.identity ||
        group.mul(group.inv(x), x) != group.identity)
      ++inv_bad;
  add("inverses", inv_bad, 0.0);

  int class_bad = 0;
  {
    std::vector<int> owner(n, -1);
    for (std::size_t c = 0; c < group.conjugacy_classes.size(); ++c)
      for (int m : group.conjugacy_classes[c]) {
        if (m < 0 || m >= n || owner[m] != -1) ++class_bad;
        else owner[m] = static_cast<int>(c);
      }
    for (int x = 0; x < n; ++x)
      if (owner[x] == -1) ++class_bad;
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) {
        const int c = group.mul(group.mul(y, x), group.inv(y));
        if (owner[x] != owner[c]) ++class_bad;
      }
  }
  add("conjugacy_partition", class_bad, 0.0);

  // structural checks on the irreps
  bool shapes_ok = true;
  for (const auto& ir : dual.irreps) {
    if (static_cast<int>(ir.matrices.size()) != n) {
      rep.structural_errors.push_back("irrep " + ir.label + ": expected " + std::to_string(n) +
                                      " matrices, got " + std::to_string(ir.matrices.size()));
      shapes_ok = false;
      continue;
    }
    for (const auto& m : ir.matrices)
      if (m.rows() != ir.dim || m.cols() != ir.dim) {
        rep.structural_errors.push_back("irrep " + ir.label + ": matrix shape mismatch");
        shapes_ok = false;
        break;
      }
  }

  const int total = dual.total_weight();
  if (total != n)
    rep.structural_errors.push_back("completeness: sum of d^2 is " + std::to_string(total) +
                                    ", group order is " + std::to_string(n));

  if (!shapes_ok) {
    rep.pass = false;
    return rep;
  }

  double unitarity = 0.0, homomorphism = 0.0, unit_matrix = 0.0, char_norm = 0.0;
  for (const auto& ir : dual.irreps) {
    const Mat eye = Mat::Identity(ir.dim, ir.dim);
    for (int x = 0; x < n; ++x)
      unitarity = std::max(unitarity,
                           (ir.matrices[x] * ir.matrices[x].adjoint() - eye).cwiseAbs().maxCoeff());
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        homomorphism = std::max(
            homomorphism,
            (ir.matrices[x] * ir.matrices[y] - ir.matrices[group.mul(x, y)]).cwiseAbs().maxCoeff());
    unit_matrix = std::max(unit_matrix, (ir.matrices[group.identity] - eye).cwiseAbs().maxCoeff());
    double s = 0.0;
    for (int x = 0; x < n; ++x) s += std::norm(ir.matrices[x].trace());
    char_norm = std::max(char_norm, std::abs(s / n - 1.0));
  }
  add("unitarity", unitarity, tol);
  add("homomorphism", homomorphism, tol);
  add("identity_matrix", unit_matrix, tol);
  add("character_norm_one", char_norm, tol);

  double char_orth = 0.0;
  for (int s = 0; s < dual.size(); ++s)
    for (int t = s + 1; t < dual.size(); ++t) {
      cxd acc = 0.0;
      for (int x = 0; x < n; ++x)
        acc += dual.irreps[s].matrices[x].trace() * std::conj(dual.irreps[t].matrices[x].trace());
      char_orth = std::max(char_orth, std::abs(acc) / n);
    }
  add("character_orthogonality", char_orth, tol);

  // Schur orthonormality of the scaled coordinate functions sqrt(d) u_jk,
  // checked as (1/|G|) B^H B = I for the |G| x (sum d^2) evaluation matrix.
  if (total == n) {
    Mat B(n, total);
    int col = 0;
    for (const auto& ir : dual.irreps) {
      const double scale = std::sqrt(static_cast<double>(ir.dim));
      for (int j = 0; j < ir.dim; ++j)
        for (int k = 0; k < ir.dim; ++k) {
          for (int x = 0; x < n; ++x) B(x, col) = scale * ir.matrices[x](k, j);
          ++col;
        }
    }
    const Mat gram = (B.adjoint() * B) / static_cast<double>(n);
    add("schur_orthonormality", (gram - Mat::Identity(total, total)).cwiseAbs().maxCoeff(), tol);
  }
  add("completeness", std::abs(total - n), 0.0);

  rep.pass = rep.structural_errors.empty();
  for (const auto& c : rep.checks) rep.pass = rep.pass && c.pass;
  return rep;
}

// --- custom group documents -------------------------------------------------

GroupSystem import_group_json(const std::string& json_text, double tol) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("group document is not valid JSON: ") + e.what());
  }
  for (const char* key : {"name", "order", "cayley", "irreps"})
    if (!doc.contains(key))
      throw std::invalid_argument(std::string("group document missing field: ") + key);

  FiniteGroup g;
  g.name = doc["name"].get<std::string>();
  g.order = doc["order"].get<int>();
  if (g.order <= 0) throw std::invalid_argument("group order must be positive");
  g.cayley = doc["cayley"].get<std::vector<int>>();
  if (static_cast<int>(g.cayley.size()) != g.order * g.order)
    throw std::invalid_argument("cayley table size does not match order^2");
  for (int v : g.cayley)
    if (v < 0 || v >= g.order) throw std::invalid_argument("cayley entry out of range");
  if (doc.contains("element_labels")) {
    g.element_labels = doc["element_labels"].get<std::vector<std::string>>();
    if (static_cast<int>(g.element_labels.size()) != g.order)
      throw std::invalid_argument("element_labels length mismatch");
  } else {
    g.element_labels.resize(g.order);
    for (int i = 0; i < g.order; ++i) g.element_labels[i] = "g" + std::to_string(i);
  }
  compute_derived_structure(g);

  Dual dual;
  for (const auto& ij : doc["irreps"]) {
    Irrep ir;
    ir.label = ij.at("label").get<std::string>();
    ir.dim = ij.at("dim").get<int>();
    if (ir.dim <= 0) throw std::invalid_argument("irrep dim must be positive");
    const auto& mats = ij.at("matrices");
    if (static_cast<int>(mats.size()) != g.order)
      throw std::invalid_argument("irrep " + ir.label + ": one matrix per element required");
    for (const auto& mj : mats) {
      if (static_cast<int>(mj.size()) != ir.dim * ir.dim)
        throw std::invalid_argument("irrep " + ir.label + ": matrix entry count mismatch");
      Mat m(ir.dim, ir.dim);
      int t = 0;
      for (int r = 0; r < ir.dim; ++r)
        for (int c = 0; c < ir.dim; ++c, ++t)
          m(r, c) = cxd(mj[t].at(0).get<double>(), mj[t].at(1).get<double>());
      ir.matrices.push_back(std::move(m));
    }
    dual.irreps.push_back(std::move(ir));
  }

  GroupSystem sys = finish(std::move(g), std::move(dual));
  VerifyReport rep = verify_irrep_system(*sys.group, *sys.dual, tol);
  if (!rep.pass)
    throw std::invalid_argument("imported group failed verification:\n" + rep.summary());
  return sys;
}

std::string export_group_json(const FiniteGroup& group, const Dual& dual) {
  json doc;
  doc["name"] = group.name;
  doc["order"] = group.order;
  doc["cayley"] = group.cayley;
  doc["element_labels"] = group.element_labels;
  json irreps = json::array();
  for (const auto& ir : dual.irreps) {
    json ij;
    ij["label"] = ir.label;
    ij["dim"] = ir.dim;
    json mats = json::array();
    for (const auto& m : ir.matrices) {
      json mj = json::array();
      for (int r = 0; r < ir.dim; ++r)
        for (int c = 0; c < ir.dim; ++c) mj.push_back({m(r, c).real(), m(r, c).imag()});
      mats.push_back(std::move(mj));
    }
    ij["matrices"] = std::move(mats);
    irreps.push_back(std::move(ij));
  }
  doc["irreps"] = std::move(irreps);
  return doc.dump(2);
}

} // namespace uiap
