#include "uiap/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "uiap/lp.hpp"
#include "uiap/parallel.hpp"

namespace uiap {

namespace {

using json = nlohmann::json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double ratio_of(double delta) { return (1.0 + delta) / (1.0 - delta); }

} // namespace

std::string to_string(NormingMode mode) {
  switch (mode) {
    case NormingMode::Auto: return "auto";
    case NormingMode::Restriction: return "restriction";
    case NormingMode::Net: return "net";
  }
  return "auto";
}

NormingMode norming_mode_from_string(const std::string& s) {
  if (s == "auto") return NormingMode::Auto;
  if (s == "restriction") return NormingMode::Restriction;
  if (s == "net") return NormingMode::Net;
  throw std::invalid_argument("unknown norming mode: " + s);
}

Mat rspan_basis(const Dual& dual, const SpectralSet& R) {
  if (R.indices.empty()) throw std::invalid_argument("R must be nonempty");
  const FiniteGroup& g = *dual.group;
  Mat basis(g.order, R.weight);
  int col = 0;
  for (int s : R.indices) {
    const Irrep& ir = dual.irreps[s];
    const double scale = std::sqrt(static_cast<double>(ir.dim));
    for (int j = 0; j < ir.dim; ++j)
      for (int k = 0; k < ir.dim; ++k) {
        for (int x = 0; x < g.order; ++x) basis(x, col) = scale * ir.matrices[x](k, j);
        ++col;
      }
  }
  return basis;
}

double net_point_bound(double delta, int v_r) {
  return std::ceil(std::pow(1.0 + 2.0 / delta, 2.0 * v_r));
}

namespace {

// deterministic low-discrepancy driver for the net construction
double radical_inverse(long index, int base) {
  double result = 0.0, frac = 1.0 / base;
  while (index > 0) {
    result += (index % base) * frac;
    index /= base;
    frac /= base;
  }
  return result;
}

std::vector<int> first_primes(int count) {
  std::vector<int> primes;
  for (int p = 2; static_cast<int>(primes.size()) < count; ++p) {
    bool prime = true;
    for (int q : primes) {
      if (q * q > p) break;
      if (p % q == 0) {
        prime = false;
        break;
      }
    }
    if (prime) primes.push_back(p);
  }
  return primes;
}

// Gaussian direction in R^(2n) from Halton points via Box-Muller, giving a
// deterministic near-uniform sphere sample once normalized.
Vec halton_direction(long index, int n_complex, const std::vector<int>& primes) {
  Vec z(n_complex);
  for (int j = 0; j < n_complex; ++j) {
    const double u1 = std::max(radical_inverse(index, primes[2 * j]), 1e-12);
    const double u2 = radical_inverse(index, primes[2 * j + 1]);
    const double r = std::sqrt(-2.0 * std::log(u1));
    z[j] = cxd(r * std::cos(2.0 * kPi * u2), r * std::sin(2.0 * kPi * u2));
  }
  return z;
}

double sup_norm(const Vec& values) { return values.cwiseAbs().maxCoeff(); }

int argmax_abs(const Vec& values) {
  int best = 0;
  double bv = std::abs(values[0]);
  for (int i = 1; i < values.size(); ++i) {
    const double v = std::abs(values[i]);
    if (v > bv + 1e-15) {
      bv = v;
      best = i;
    }
  }
  return best;
}

double s_ratio(const Mat& basis, const std::vector<int>& points, const Vec& z) {
  const Vec f = basis * z;
  const double whole = sup_norm(f);
  if (whole < 1e-12) return 1.0;
  double on_s = 0.0;
  for (int s : points) on_s = std::max(on_s, std::abs(f[s]));
  return on_s / whole;
}

// coordinate pattern search pushing the attained ratio down
double refine_worst(const Mat& basis, const std::vector<int>& points, Vec z, double& ratio) {
  const int n = static_cast<int>(z.size());
  double step = 0.25;
  while (step > 1e-6) {
    bool improved = false;
    for (int j = 0; j < n; ++j)
      for (const cxd dir : {cxd(1, 0), cxd(-1, 0), cxd(0, 1), cxd(0, -1)}) {
        Vec cand = z;
        cand[j] += step * dir;
        const double r = s_ratio(basis, points, cand);
        if (r < ratio - 1e-13) {
          ratio = r;
          z = cand;
          improved = true;
        }
      }
    if (!improved) step *= 0.5;
  }
  return ratio;
}

struct NetAttempt {
  std::vector<int> points;
  double gamma = 0.0;
};

NetAttempt build_net_attempt(const Mat& basis, double net_radius) {
  const int order = static_cast<int>(basis.rows());
  const int n = static_cast<int>(basis.cols());
  const auto primes = first_primes(2 * n);

  const int pool_size = std::min(4096, 512 * n + 512);
  Mat pool(order, pool_size);
  for (int i = 0; i < pool_size; ++i) {
    Vec f = basis * halton_direction(i + 1, n, primes);
    const double s = sup_norm(f);
    pool.col(i) = s > 1e-12 ? Vec(f / s) : Vec(basis.col(0) / sup_norm(basis.col(0)));
  }

  // greedy farthest-point packing in sup distance over the pool
  const int cap = 512;
  std::vector<int> chosen{0};
  RVec dist(pool_size);
  for (int i = 0; i < pool_size; ++i) dist[i] = (pool.col(i) - pool.col(0)).cwiseAbs().maxCoeff();
  while (static_cast<int>(chosen.size()) < cap) {
    int far = 0;
    for (int i = 1; i < pool_size; ++i)
      if (dist[i] > dist[far]) far = i;
    if (dist[far] <= net_radius) break;
    chosen.push_back(far);
    for (int i = 0; i < pool_size; ++i)
      dist[i] = std::min(dist[i], (pool.col(i) - pool.col(far)).cwiseAbs().maxCoeff());
  }

  std::set<int> points;
  for (int c : chosen) points.insert(argmax_abs(pool.col(c)));

  NetAttempt out;
  out.points.assign(points.begin(), points.end());

  if (static_cast<int>(out.points.size()) == order) {
    out.gamma = 1.0;  // S = G attains the sup norm exactly
    return out;
  }

  // a posteriori certification: dense sphere sample plus refinement of the
  // worst directions found
  const int cert_samples = 4096 + 512 * n;
  double gamma = 1.0;
  std::vector<std::pair<double, long>> worst;
  for (long i = 0; i < cert_samples; ++i) {
    const Vec z = halton_direction(100000 + i, n, primes);
    const double r = s_ratio(basis, out.points, z);
    gamma = std::min(gamma, r);
    worst.emplace_back(r, i);
  }
  std::sort(worst.begin(), worst.end());
  const int refine_count = std::min<std::size_t>(12, worst.size());
  for (int w = 0; w < refine_count; ++w) {
    Vec z = halton_direction(100000 + worst[w].second, n, primes);
    double r = worst[w].first;
    refine_worst(basis, out.points, z, r);
    gamma = std::min(gamma, r);
  }
  out.gamma = gamma;
  return out;
}

} // namespace

NormingSet build_norming_set(const Dual& dual, const SpectralSet& R, double delta,
                             NormingMode mode, int threads) {
  (void)threads;
  if (!(delta > 0.0 && delta < 1.0))
    throw std::invalid_argument("delta must lie in (0,1)");
  const FiniteGroup& g = *dual.group;

  NormingSet ns;
  ns.delta = delta;
  if (mode == NormingMode::Auto)
    mode = g.order <= net_point_bound(delta, R.weight) ? NormingMode::Restriction
                                                       : NormingMode::Net;
  ns.mode = mode;

  if (mode == NormingMode::Restriction) {
    ns.points.resize(g.order);
    std::iota(ns.points.begin(), ns.points.end(), 0);
    ns.size = g.order;
    ns.gamma = 1.0;
    return ns;
  }

  const Mat basis = rspan_basis(dual, R);
  for (int attempt = 0; attempt < 8; ++attempt) {
    const double radius = delta * std::pow(0.75, attempt);
    NetAttempt net = build_net_attempt(basis, radius);
    if (net.gamma >= 1.0 - delta) {
      ns.points = std::move(net.points);
      ns.size = static_cast<int>(ns.points.size());
      ns.gamma = std::min(net.gamma, 1.0);
      return ns;
    }
  }
  throw PipelineError("norming_set",
                      "could not certify gamma >= 1 - delta after shrinking the net radius");
}

GroupFunction InterpolationOperator::apply(const GroupFunction& f) const {
  const int n = static_cast<int>(points.size());
  Vec on_s(n);
  for (int s = 0; s < n; ++s) on_s[s] = f.values[points[s]];
  return GroupFunction{group, coefficients * on_s};
}

InterpolationOperator build_interpolation_operator(const Dual& dual, const NormingSet& ns,
                                                   const Mat& rbasis, int lp_directions,
                                                   int threads) {
  const FiniteGroup& g = *dual.group;
  const int n_points = ns.size;
  const int v = static_cast<int>(rbasis.cols());

  // constraint matrix: row i, column s  ->  b_i(S[s])
  Mat constraints(v, n_points);
  for (int i = 0; i < v; ++i)
    for (int s = 0; s < n_points; ++s) constraints(i, s) = rbasis(ns.points[s], i);

  InterpolationOperator op;
  op.group = &g;
  op.points = ns.points;
  op.coefficients = Mat::Zero(g.order, n_points);

  std::vector<int> failed(g.order, 0);
  parallel_for_index(
      g.order,
      [&](int x) {
        const Vec rhs = rbasis.row(x).transpose();
        const auto sol = complex_l1_minimize(constraints, rhs, lp_directions);
        if (sol.status != LpStatus::Optimal) {
          failed[x] = 1;
          return;
        }
        op.coefficients.row(x) = sol.a.transpose();
      },
      threads);
  for (int x = 0; x < g.order; ++x)
    if (failed[x])
      throw PipelineError("interpolation_operator",
                          "interpolation constraints infeasible at element " +
                              std::to_string(x) + " (defective norming set; widen S)");

  op.residual = (op.coefficients * constraints.transpose() - rbasis).cwiseAbs().maxCoeff();
  op.v_norm = op.coefficients.cwiseAbs().rowwise().sum().maxCoeff();
  op.pi1_surrogate = n_points * op.v_norm;
  return op;
}

GroupFunction average_to_central(const InterpolationOperator& op, int threads) {
  const FiniteGroup& g = *op.group;
  const GroupFunction unit = convolution_unit(g);
  std::vector<Vec> partial(g.order);
  parallel_for_index(
      g.order,
      [&](int y) {
        Vec acc = Vec::Zero(g.order);
        const GroupFunction fy = translate(unit, y, Side::Left);
        for (int z = 0; z < g.order; ++z) {
          const GroupFunction fyz = translate(fy, z, Side::Right);
          const GroupFunction t = op.apply(fyz);
          const GroupFunction back =
              translate(translate(t, g.inv(z), Side::Right), g.inv(y), Side::Left);
          acc += back.values;
        }
        partial[y] = std::move(acc);
      },
      threads);
  Vec sum = Vec::Zero(g.order);
  for (int y = 0; y < g.order; ++y) sum += partial[y];
  return GroupFunction{&g, sum / (static_cast<double>(g.order) * g.order)};
}

CubeThresholdResult cube_and_threshold(const GroupFunction& h, const Dual& dual,
                                       const SpectralSet& R, int n_points) {
  const FiniteGroup& g = *dual.group;
  CubeThresholdResult out;
  out.g = convolve(convolve(h, h), h);

  const FourierCoefficients hhat = fourier_transform(h, dual);
  const FourierCoefficients ghat = fourier_transform(out.g, dual);
  const double threshold = std::pow(static_cast<double>(n_points), -4.0);

  double cube_dev = 0.0;
  std::vector<int> kept;
  std::vector<cxd> alpha;
  std::vector<Mat> blocks(dual.size());
  for (int s = 0; s < dual.size(); ++s) {
    const int d = dual.irreps[s].dim;
    const cxd ah = central_scalar(hhat.blocks[s]);
    const cxd ag = central_scalar(ghat.blocks[s]);
    cube_dev = std::max(cube_dev, std::abs(ag - ah * ah * ah));
    blocks[s] = Mat::Zero(d, d);
    if (R.contains(s) || std::abs(ag) > threshold) {
      kept.push_back(s);
      alpha.push_back(ag);
      blocks[s] = ag * Mat::Identity(d, d);
    }
  }
  if (cube_dev > 1e-8)
    throw PipelineError("cube_threshold",
                        "alpha(g) deviates from alpha(h)^3 by " + std::to_string(cube_dev));

  FourierCoefficients fc;
  fc.dual = &dual;
  fc.blocks = std::move(blocks);
  out.f = synthesize(fc);
  out.f.group = &g;
  out.support = make_spectral_set(dual, kept);
  out.alpha_f = std::move(alpha);
  return out;
}

double delta_for_epsilon(double eps, int v_r, NormingMode mode, int group_order) {
  if (!(eps > 0.0)) throw std::invalid_argument("epsilon must be positive");
  if (mode == NormingMode::Auto) {
    try {
      return delta_for_epsilon(eps, v_r, NormingMode::Restriction, group_order);
    } catch (const PipelineError&) {
      return delta_for_epsilon(eps, v_r, NormingMode::Net, group_order);
    }
  }
  auto bound = [&](double delta) {
    const double N = mode == NormingMode::Restriction
                         ? static_cast<double>(group_order)
                         : net_point_bound(delta, v_r);
    const double r = ratio_of(delta);
    return r * r * r + r * r * std::pow(N, -1.0 / 3.0);
  };
  const double grid = 1e-4;
  if (bound(grid) > 1.0 + eps)
    throw PipelineError("delta_for_epsilon",
                        "epsilon target unreachable: bound at the smallest grid delta is " +
                            std::to_string(bound(grid)));
  long lo = 1, hi = 9999;  // invariant: grid*lo feasible
  while (lo < hi) {
    const long mid = (lo + hi + 1) / 2;
    if (bound(grid * mid) <= 1.0 + eps) lo = mid;
    else hi = mid - 1;
  }
  return grid * lo;
}

ProvenBounds bounds_for(double delta, int n_points) {
  const double r = ratio_of(delta);
  const double n = static_cast<double>(n_points);
  ProvenBounds b;
  b.l1 = r * r * r + r * r * std::pow(n, -1.0 / 3.0);
  b.support = std::pow(n, 4.0) * r * r;
  b.h_inf = n * r;
  b.h_l2 = std::sqrt(n) * r;
  return b;
}

namespace {

// catalog groups serialize by spec string; anything else is embedded
bool matches_catalog(const GroupSystem& sys) {
  try {
    const GroupSystem ref = parse_group_spec(sys.group->name);
    if (ref.group->cayley != sys.group->cayley) return false;
    if (ref.dual->size() != sys.dual->size()) return false;
    for (int i = 0; i < ref.dual->size(); ++i)
      if (ref.dual->irreps[i].label != sys.dual->irreps[i].label ||
          ref.dual->irreps[i].dim != sys.dual->irreps[i].dim)
        return false;
    return true;
  } catch (const std::exception&) {
    return false;
  }
}

} // namespace

PipelineRun run_pipeline(const GroupSystem& sys, const SpectralSet& R,
                         const PipelineParams& params) {
  const FiniteGroup& g = *sys.group;
  const Dual& dual = *sys.dual;
  if (R.indices.empty()) throw std::invalid_argument("R must be nonempty");

  double delta = params.delta;
  if (params.epsilon)
    delta = delta_for_epsilon(*params.epsilon, R.weight, params.mode, g.order);
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in (0,1)");

  // keep the polygonal slack well inside the (1+delta) budget
  const int directions = directions_for_slack(delta / 2.0, params.lp_directions);

  PipelineRun run;
  run.norming = build_norming_set(dual, R, delta, params.mode, params.threads);
  const Mat basis = rspan_basis(dual, R);
  try {
    run.op = build_interpolation_operator(dual, run.norming, basis, directions, params.threads);
  } catch (const PipelineError&) {
    if (run.norming.mode == NormingMode::Restriction) throw;
    // retry with the largest possible S; C(G) restricted to G is isometric
    run.norming = build_norming_set(dual, R, delta, NormingMode::Restriction, params.threads);
    run.op = build_interpolation_operator(dual, run.norming, basis, directions, params.threads);
  }
  if (run.op.residual > params.lp_tol)
    throw PipelineError("interpolation_operator",
                        "equality residual " + std::to_string(run.op.residual));

  run.h = average_to_central(run.op, params.threads);

  const int N = run.norming.size;
  const ProvenBounds bounds = bounds_for(delta, N);
  const FourierCoefficients hhat = fourier_transform(run.h, dual);
  AchievedMetrics m;
  m.centrality_h = centrality_defect(hhat);
  m.h_l1 = norm_l1(run.h);
  m.h_l2 = norm_l2(run.h);
  m.h_inf = norm_linf(run.h);
  m.v_norm = run.op.v_norm;
  if (m.centrality_h > 1e-8)
    throw PipelineError("average_to_central",
                        "h centrality defect " + std::to_string(m.centrality_h));
  for (int s : R.indices) {
    const double dev = std::abs(central_scalar(hhat.blocks[s]) - 1.0);
    if (dev > 1e-6)
      throw PipelineError("average_to_central",
                          "alpha(h) deviates from 1 on R by " + std::to_string(dev));
  }
  if (m.h_inf > run.op.pi1_surrogate + 1e-9)
    throw PipelineError("average_to_central", "h exceeds the operator chain bound N*||v||");
  if (m.h_inf > bounds.h_inf + 1e-9)
    throw PipelineError("average_to_central", "h_inf bound violated");
  if (m.h_l2 > bounds.h_l2 + 1e-9)
    throw PipelineError("average_to_central", "h_l2 bound violated");

  CubeThresholdResult ct = cube_and_threshold(run.h, dual, R, N);
  run.g = std::move(ct.g);
  run.f = std::move(ct.f);

  const FourierCoefficients fhat = fourier_transform(run.f, dual);
  m.f_l1 = norm_l1(run.f);
  m.f_l2 = norm_l2(run.f);
  m.f_linf = norm_linf(run.f);
  m.supp_weight = ct.support.weight;
  m.centrality_f = centrality_defect(fhat);
  double rdev = 0.0;
  for (int s : R.indices) {
    const int d = dual.irreps[s].dim;
    rdev = std::max(rdev, (fhat.blocks[s] - Mat::Identity(d, d)).norm());
  }
  m.fhat_r_dev = rdev;

  auto require = [](bool ok, const std::string& what) {
    if (!ok) throw PipelineError("certificate", what + " violated");
  };
  require(m.fhat_r_dev <= 1e-6, "fhat = I on R");
  require(m.centrality_f <= 1e-8, "centrality of f");
  require(m.f_l1 <= bounds.l1 + 1e-9, "l1 bound");
  require(m.supp_weight <= bounds.support + 1e-9, "support bound");

  Certificate cert;
  cert.version = 1;
  if (matches_catalog(sys)) cert.group_spec = g.name;
  else cert.embedded_group = export_group_json(g, dual);
  cert.r_labels = R.labels(dual);
  cert.v_r = R.weight;
  cert.mode = to_string(run.norming.mode);
  cert.delta = delta;
  cert.epsilon = params.epsilon;
  cert.lp_directions = directions;
  cert.n_points = N;
  cert.gamma = run.norming.gamma;
  cert.norming_points = run.norming.points;
  cert.f_values = run.f.values;
  cert.h_values = run.h.values;
  cert.support_labels = ct.support.labels(dual);
  cert.alpha_f = ct.alpha_f;
  cert.achieved = m;
  cert.bounds = bounds;
  run.certificate = std::move(cert);
  return run;
}

// --- certificate document ----------------------------------------------------

namespace {

json complex_pair(cxd z) { return json::array({z.real(), z.imag()}); }

cxd pair_complex(const json& j) {
  if (!j.is_array() || j.size() != 2) throw std::invalid_argument("expected [re, im] pair");
  return cxd(j[0].get<double>(), j[1].get<double>());
}

json vec_to_json(const Vec& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_pair(v[i]));
  return out;
}

Vec json_to_vec(const json& j) {
  Vec out(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) out[static_cast<Eigen::Index>(i)] = pair_complex(j[i]);
  return out;
}

} // namespace

std::string certificate_to_json(const Certificate& cert) {
  json doc;
  doc["version"] = cert.version;
  if (!cert.group_spec.empty()) doc["group"] = cert.group_spec;
  else doc["embedded_group"] = json::parse(cert.embedded_group);
  doc["r_labels"] = cert.r_labels;
  doc["v_r"] = cert.v_r;
  doc["mode"] = cert.mode;
  doc["delta"] = cert.delta;
  if (cert.epsilon) doc["epsilon"] = *cert.epsilon;
  doc["lp_directions"] = cert.lp_directions;
  doc["n_points"] = cert.n_points;
  doc["gamma"] = cert.gamma;
  doc["norming_points"] = cert.norming_points;
  doc["f_values"] = vec_to_json(cert.f_values);
  if (cert.h_values.size() > 0) doc["h_values"] = vec_to_json(cert.h_values);
  json support = json::array();
  for (std::size_t i = 0; i < cert.support_labels.size(); ++i)
    support.push_back({{"irrep", cert.support_labels[i]}, {"alpha", complex_pair(cert.alpha_f[i])}});
  doc["support"] = std::move(support);
  json a;
  a["f_l1"] = cert.achieved.f_l1;
  a["f_l2"] = cert.achieved.f_l2;
  a["f_linf"] = cert.achieved.f_linf;
  a["supp_weight"] = cert.achieved.supp_weight;
  a["fhat_r_dev"] = cert.achieved.fhat_r_dev;
  a["centrality_f"] = cert.achieved.centrality_f;
  a["centrality_h"] = cert.achieved.centrality_h;
  a["h_l1"] = cert.achieved.h_l1;
  a["h_l2"] = cert.achieved.h_l2;
  a["h_inf"] = cert.achieved.h_inf;
  a["v_norm"] = cert.achieved.v_norm;
  doc["achieved"] = std::move(a);
  json b;
  b["l1"] = cert.bounds.l1;
  b["support"] = cert.bounds.support;
  b["h_inf"] = cert.bounds.h_inf;
  b["h_l2"] = cert.bounds.h_l2;
  doc["bounds"] = std::move(b);
  return doc.dump(2);
}

Certificate certificate_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("certificate is not valid JSON: ") + e.what());
  }
  if (!doc.contains("version"))
    throw std::invalid_argument("certificate format error: missing version field");
  Certificate cert;
  cert.version = doc["version"].get<int>();
  if (cert.version != 1)
    throw std::invalid_argument("certificate format error: unsupported version");
  if (doc.contains("group")) cert.group_spec = doc["group"].get<std::string>();
  else if (doc.contains("embedded_group")) cert.embedded_group = doc["embedded_group"].dump();
  else throw std::invalid_argument("certificate format error: no group definition");
  for (const char* key : {"r_labels", "f_values", "bounds"})
    if (!doc.contains(key))
      throw std::invalid_argument(std::string("certificate format error: missing ") + key);
  cert.r_labels = doc["r_labels"].get<std::vector<std::string>>();
  cert.v_r = doc.value("v_r", 0);
  cert.mode = doc.value("mode", std::string("restriction"));
  cert.delta = doc.value("delta", 0.0);
  if (doc.contains("epsilon")) cert.epsilon = doc["epsilon"].get<double>();
  cert.lp_directions = doc.value("lp_directions", 0);
  cert.n_points = doc.value("n_points", 0);
  cert.gamma = doc.value("gamma", 1.0);
  if (doc.contains("norming_points"))
    cert.norming_points = doc["norming_points"].get<std::vector<int>>();
  cert.f_values = json_to_vec(doc["f_values"]);
  if (doc.contains("h_values")) cert.h_values = json_to_vec(doc["h_values"]);
  if (doc.contains("support"))
    for (const auto& entry : doc["support"]) {
      cert.support_labels.push_back(entry.at("irrep").get<std::string>());
      cert.alpha_f.push_back(pair_complex(entry.at("alpha")));
    }
  const json a = doc.value("achieved", json::object());
  cert.achieved.f_l1 = a.value("f_l1", kNaN);
  cert.achieved.f_l2 = a.value("f_l2", kNaN);
  cert.achieved.f_linf = a.value("f_linf", kNaN);
  cert.achieved.supp_weight = a.value("supp_weight", -1);
  cert.achieved.fhat_r_dev = a.value("fhat_r_dev", kNaN);
  cert.achieved.centrality_f = a.value("centrality_f", kNaN);
  cert.achieved.centrality_h = a.value("centrality_h", kNaN);
  cert.achieved.h_l1 = a.value("h_l1", kNaN);
  cert.achieved.h_l2 = a.value("h_l2", kNaN);
  cert.achieved.h_inf = a.value("h_inf", kNaN);
  cert.achieved.v_norm = a.value("v_norm", kNaN);
  const json& b = doc["bounds"];
  if (!b.contains("l1") || !b.contains("support"))
    throw std::invalid_argument("certificate format error: bounds need l1 and support");
  cert.bounds.l1 = b["l1"].get<double>();
  cert.bounds.support = b["support"].get<double>();
  cert.bounds.h_inf = b.value("h_inf", kNaN);
  cert.bounds.h_l2 = b.value("h_l2", kNaN);
  return cert;
}

std::string CertReport::summary() const {
  std::ostringstream os;
  os.precision(12);
  for (const auto& c : checks)
    os << (c.pass ? "  pass  " : "  FAIL  ") << c.name << ": achieved " << c.achieved
       << " vs bound " << c.bound << "\n";
  os << (pass ? "certificate PASS" : "certificate FAIL") << "\n";
  return os.str();
}

CertReport verify_certificate(const Certificate& cert, const VerifyTolerances& tol) {
  GroupSystem sys = cert.group_spec.empty() ? import_group_json(cert.embedded_group, tol.group_tol)
                                            : parse_group_spec(cert.group_spec);
  const FiniteGroup& g = *sys.group;
  const Dual& dual = *sys.dual;

  CertReport report;
  auto check = [&](const std::string& name, double achieved, double bound) {
    report.checks.push_back({name, achieved, bound, achieved <= bound});
  };

  const VerifyReport vr = verify_irrep_system(g, dual, tol.group_tol);
  check("dual_verification", vr.max_deviation(), tol.group_tol);
  if (!vr.pass && !vr.structural_errors.empty())
    throw std::invalid_argument("group reconstruction mismatch: " + vr.structural_errors.front());

  if (cert.f_values.size() != g.order)
    throw std::invalid_argument("certificate format error: f length does not match group order");
  const GroupFunction f{&g, cert.f_values};
  const SpectralSet R = make_spectral_set(dual, cert.r_labels);
  const FourierCoefficients fhat = fourier_transform(f, dual);

  double rdev = 0.0;
  for (int s : R.indices) {
    const int d = dual.irreps[s].dim;
    rdev = std::max(rdev, (fhat.blocks[s] - Mat::Identity(d, d)).norm());
  }
  check("fhat_r_identity", rdev, tol.fhat_r);
  check("centrality_f", centrality_defect(fhat), tol.centrality);

  const double f_l1 = norm_l1(f);
  check("f_l1_bound", f_l1, cert.bounds.l1 + tol.bound_slack);
  const SpectralSet support = spectral_support(fhat, 1e-9);
  check("support_bound", support.weight, cert.bounds.support + tol.bound_slack);
  if (cert.epsilon) check("epsilon_target", f_l1, 1.0 + *cert.epsilon + tol.bound_slack);

  if (!std::isnan(cert.achieved.f_l1))
    check("f_l1_consistency", std::abs(f_l1 - cert.achieved.f_l1), tol.consistency);
  if (cert.achieved.supp_weight >= 0)
    check("support_consistency", std::abs(support.weight - cert.achieved.supp_weight), 0.0);

  if (!cert.support_labels.empty()) {
    double adev = 0.0;
    bool labels_ok = true;
    for (std::size_t i = 0; i < cert.support_labels.size(); ++i) {
      int idx = -1;
      try {
        idx = dual.index_of(cert.support_labels[i]);
      } catch (const std::exception&) {
        labels_ok = false;
        break;
      }
      adev = std::max(adev, std::abs(central_scalar(fhat.blocks[idx]) - cert.alpha_f[i]));
    }
    if (!labels_ok) throw std::invalid_argument("group reconstruction mismatch: support label");
    check("alpha_consistency", adev, tol.consistency);
    std::set<std::string> stored(cert.support_labels.begin(), cert.support_labels.end());
    std::set<std::string> recomputed;
    for (const auto& l : support.labels(dual)) recomputed.insert(l);
    check("support_match", stored == recomputed ? 0.0 : 1.0, 0.0);
  }

  if (cert.h_values.size() > 0) {
    if (cert.h_values.size() != g.order)
      throw std::invalid_argument("certificate format error: h length does not match group order");
    const GroupFunction h{&g, cert.h_values};
    const FourierCoefficients hhat = fourier_transform(h, dual);
    if (!std::isnan(cert.bounds.h_inf)) check("h_inf_bound", norm_linf(h), cert.bounds.h_inf + tol.bound_slack);
    if (!std::isnan(cert.bounds.h_l2)) check("h_l2_bound", norm_l2(h), cert.bounds.h_l2 + tol.bound_slack);
    check("centrality_h", centrality_defect(hhat), tol.centrality);
    double hdev = 0.0;
    for (int s : R.indices) hdev = std::max(hdev, std::abs(central_scalar(hhat.blocks[s]) - 1.0));
    check("alpha_h_r_identity", hdev, tol.fhat_r);

    // both spectral cuts of the proof, re-derived independently
    if (cert.n_points > 0) {
      const double g_threshold = std::pow(static_cast<double>(cert.n_points), -4.0);
      const double h_threshold = std::pow(static_cast<double>(cert.n_points), -4.0 / 3.0);
      int mismatch = 0;
      for (int s = 0; s < dual.size(); ++s) {
        const cxd ah = central_scalar(hhat.blocks[s]);
        const bool g_cut = std::abs(ah * ah * ah) > g_threshold;
        const bool h_cut = std::abs(ah) > h_threshold;
        if (g_cut != h_cut) ++mismatch;
      }
      check("threshold_cut_agreement", mismatch, 0.0);
      double cube_dev = 0.0;
      for (std::size_t i = 0; i < cert.support_labels.size(); ++i) {
        const int idx = dual.index_of(cert.support_labels[i]);
        const cxd ah = central_scalar(hhat.blocks[idx]);
        cube_dev = std::max(cube_dev, std::abs(ah * ah * ah - cert.alpha_f[i]));
      }
      if (!cert.support_labels.empty()) check("cube_link", cube_dev, 1e-6);
    }
  }

  report.pass = true;
  for (const auto& c : report.checks) report.pass = report.pass && c.pass;
  return report;
}

CertReport verify_certificate_json(const std::string& text, const VerifyTolerances& tol) {
  return verify_certificate(certificate_from_json(text), tol);
}

} // namespace uiap
