#include "uiap/fourier.hpp"

#include <cmath>
#include <stdexcept>

namespace uiap {

GroupFunction make_function(const FiniteGroup& group, Vec values) {
  if (values.size() != group.order)
    throw std::invalid_argument("function length does not match group order");
  return GroupFunction{&group, std::move(values)};
}

GroupFunction zero_function(const FiniteGroup& group) {
  return GroupFunction{&group, Vec::Zero(group.order)};
}

GroupFunction convolution_unit(const FiniteGroup& group) {
  Vec v = Vec::Zero(group.order);
  v[group.identity] = static_cast<double>(group.order);
  return GroupFunction{&group, std::move(v)};
}

GroupFunction translate(const GroupFunction& f, int y, Side side) {
  const FiniteGroup& g = *f.group;
  if (y < 0 || y >= g.order) throw std::invalid_argument("translation element out of range");
  Vec out(g.order);
  if (side == Side::Left) {
    const int yi = g.inv(y);
    for (int x = 0; x < g.order; ++x) out[x] = f.values[g.mul(yi, x)];
  } else {
    for (int x = 0; x < g.order; ++x) out[x] = f.values[g.mul(x, y)];
  }
  return GroupFunction{f.group, std::move(out)};
}

const Mat& FourierCoefficients::block(const std::string& label) const {
  return blocks[dual->index_of(label)];
}

FourierCoefficients fourier_transform(const GroupFunction& f, const Dual& dual) {
  if (f.group != dual.group)
    throw std::invalid_argument("function and dual refer to different groups");
  const FiniteGroup& g = *f.group;
  FourierCoefficients c;
  c.dual = &dual;
  c.blocks.reserve(dual.size());
  for (const auto& ir : dual.irreps) {
    Mat acc = Mat::Zero(ir.dim, ir.dim);
    for (int x = 0; x < g.order; ++x) acc += ir.matrices[g.inv(x)] * f.values[x];
    c.blocks.push_back(acc / static_cast<double>(g.order));
  }
  return c;
}

GroupFunction synthesize(const FourierCoefficients& c) {
  const Dual& dual = *c.dual;
  const FiniteGroup& g = *dual.group;
  if (static_cast<int>(c.blocks.size()) != dual.size())
    throw std::invalid_argument("block count does not match dual");
  Vec out = Vec::Zero(g.order);
  for (int s = 0; s < dual.size(); ++s) {
    const Irrep& ir = dual.irreps[s];
    if (c.blocks[s].rows() != ir.dim || c.blocks[s].cols() != ir.dim)
      throw std::invalid_argument("block shape does not match irrep " + ir.label);
    for (int x = 0; x < g.order; ++x)
      out[x] += static_cast<double>(ir.dim) * (c.blocks[s] * ir.matrices[x]).trace();
  }
  return GroupFunction{&g, std::move(out)};
}

GroupFunction convolve(const GroupFunction& f, const GroupFunction& g) {
  if (f.group != g.group) throw std::invalid_argument("convolution across different groups");
  const FiniteGroup& grp = *f.group;
  Vec out = Vec::Zero(grp.order);
  for (int x = 0; x < grp.order; ++x) {
    cxd acc = 0.0;
    for (int y = 0; y < grp.order; ++y) acc += f.values[y] * g.values[grp.mul(grp.inv(y), x)];
    out[x] = acc / static_cast<double>(grp.order);
  }
  return GroupFunction{f.group, std::move(out)};
}

FunctionNorms norms(const GroupFunction& f) {
  return FunctionNorms{norm_l1(f), norm_l2(f), norm_linf(f)};
}

double norm_l1(const GroupFunction& f) {
  return f.values.cwiseAbs().sum() / static_cast<double>(f.group->order);
}

double norm_l2(const GroupFunction& f) {
  return std::sqrt(f.values.squaredNorm() / static_cast<double>(f.group->order));
}

double norm_linf(const GroupFunction& f) {
  return f.values.size() ? f.values.cwiseAbs().maxCoeff() : 0.0;
}

GroupFunction coordinate_function(const FiniteGroup& group, const Irrep& sigma, int j, int k) {
  if (j < 0 || j >= sigma.dim || k < 0 || k >= sigma.dim)
    throw std::out_of_range("coordinate function index out of range");
  Vec out(group.order);
  for (int x = 0; x < group.order; ++x) out[x] = sigma.matrices[x](k, j);
  return GroupFunction{&group, std::move(out)};
}

GroupFunction character(const FiniteGroup& group, const Irrep& sigma) {
  Vec out(group.order);
  for (int x = 0; x < group.order; ++x) out[x] = sigma.matrices[x].trace();
  return GroupFunction{&group, std::move(out)};
}

cxd central_scalar(const Mat& block) { return block.trace() / static_cast<double>(block.rows()); }

double centrality_defect(const FourierCoefficients& c) {
  double defect = 0.0;
  for (const auto& b : c.blocks) {
    const Mat dev = b - central_scalar(b) * Mat::Identity(b.rows(), b.cols());
    defect = std::max(defect, dev.norm());
  }
  return defect;
}

double centrality_defect(const GroupFunction& f, const Dual& dual) {
  return centrality_defect(fourier_transform(f, dual));
}

SpectralSet spectral_support(const FourierCoefficients& c, double cutoff) {
  if (cutoff < 0.0) throw std::invalid_argument("support cutoff must be nonnegative");
  std::vector<int> idx;
  for (int s = 0; s < c.dual->size(); ++s)
    if (c.blocks[s].norm() > cutoff) idx.push_back(s);
  return make_spectral_set(*c.dual, idx);
}

} // namespace uiap
