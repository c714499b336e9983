// Command-line driver: group inspection, certificate construction and
// verification, the minimal-interpolation oracle, and parameter sweeps.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "uiap/fourier.hpp"
#include "uiap/group.hpp"
#include "uiap/oracle.hpp"
#include "uiap/parallel.hpp"
#include "uiap/pipeline.hpp"

namespace {

using namespace uiap;

constexpr int kExitPass = 0;
constexpr int kExitBoundViolation = 1;
constexpr int kExitInputError = 2;

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write file: " + path);
  out << text;
}

GroupSystem load_group(const std::string& spec, const std::string& file) {
  if (!file.empty()) return import_group_json(read_file(file));
  if (spec.empty()) throw std::invalid_argument("no group given (--group or --group-file)");
  return parse_group_spec(spec);
}

int cmd_group_info(const std::string& spec, const std::string& file, double tol) {
  const GroupSystem sys = load_group(spec, file);
  const FiniteGroup& g = *sys.group;
  std::cout << "group " << g.name << ", order " << g.order << "\n";
  std::cout << "conjugacy classes (" << g.conjugacy_classes.size() << "):\n";
  for (const auto& cls : g.conjugacy_classes) {
    std::cout << "  {";
    for (std::size_t i = 0; i < cls.size(); ++i)
      std::cout << (i ? ", " : " ") << g.element_labels[cls[i]];
    std::cout << " }\n";
  }
  std::cout << "dual (" << sys.dual->size() << " irreps):\n";
  for (const auto& ir : sys.dual->irreps)
    std::cout << "  " << ir.label << "  dim " << ir.dim << "\n";
  std::cout << "sum of squared dimensions: " << sys.dual->total_weight() << "\n";
  const VerifyReport rep = verify_irrep_system(g, *sys.dual, tol);
  std::cout << rep.summary();
  return rep.pass ? kExitPass : kExitBoundViolation;
}

int cmd_construct(const std::string& spec, const std::string& file,
                  const std::vector<std::string>& irreps, std::optional<double> epsilon,
                  std::optional<double> delta, const std::string& mode, int directions,
                  const std::string& out_path) {
  const GroupSystem sys = load_group(spec, file);
  const SpectralSet R = make_spectral_set(*sys.dual, irreps);
  PipelineParams params;
  params.mode = norming_mode_from_string(mode);
  params.lp_directions = directions;
  if (epsilon && delta) throw std::invalid_argument("give either --epsilon or --delta, not both");
  if (epsilon) params.epsilon = *epsilon;
  if (delta) params.delta = *delta;

  const PipelineRun run = run_pipeline(sys, R, params);
  const std::string doc = certificate_to_json(run.certificate);
  if (!out_path.empty()) write_file(out_path, doc);

  const Certificate& c = run.certificate;
  std::cout << "constructed f on " << sys.group->name << " with R = {"
            << join(c.r_labels, ", ") << "}, v(R) = " << c.v_r << "\n";
  std::cout << "  mode " << c.mode << ", delta " << fmt(c.delta) << ", N " << c.n_points
            << ", gamma " << fmt(c.gamma) << "\n";
  std::cout << "  ||f||_1 = " << fmt(c.achieved.f_l1) << "  (bound " << fmt(c.bounds.l1) << ")\n";
  std::cout << "  v(supp fhat) = " << c.achieved.supp_weight << "  (bound "
            << fmt(c.bounds.support) << ")\n";
  std::cout << "  ||h||_inf = " << fmt(c.achieved.h_inf) << "  (bound " << fmt(c.bounds.h_inf)
            << ")\n";
  if (!out_path.empty()) std::cout << "certificate written to " << out_path << "\n";

  const CertReport rep = verify_certificate(run.certificate);
  std::cout << rep.summary();
  return rep.pass ? kExitPass : kExitBoundViolation;
}

int cmd_verify(const std::string& cert_path, double fhat_tol, double centrality_tol) {
  VerifyTolerances tol;
  tol.fhat_r = fhat_tol;
  tol.centrality = centrality_tol;
  const CertReport rep = verify_certificate_json(read_file(cert_path), tol);
  std::cout << rep.summary();
  return rep.pass ? kExitPass : kExitBoundViolation;
}

int cmd_oracle(const std::string& spec, const std::string& file,
               const std::vector<std::string>& irreps, double budget,
               const std::string& strategy, const std::string& csv_path) {
  const GroupSystem sys = load_group(spec, file);
  const SpectralSet R = make_spectral_set(*sys.dual, irreps);
  const SearchStrategy strat =
      strategy == "greedy" ? SearchStrategy::Greedy : SearchStrategy::Exhaustive;
  if (strategy != "greedy" && strategy != "exhaustive")
    throw std::invalid_argument("strategy must be exhaustive or greedy");

  const SupportSearchResult res = minimal_support_search(sys, R, budget, strat);
  std::cout << "minimal support for " << sys.group->name << ", R = {" << join(irreps, ", ")
            << "}, budget " << fmt(budget) << ":\n";
  std::cout << "  strategy " << res.strategy << (res.upper_bound ? " (upper bound)" : " (exact)")
            << "\n";
  std::cout << "  S* = {" << join(res.support.labels(*sys.dual), ", ") << "}\n";
  std::cout << "  v(S*) = " << res.support.weight << ", norm " << fmt(res.norm) << "\n";

  if (!csv_path.empty()) {
    std::ofstream out(csv_path, std::ios::app);
    if (!out) throw std::invalid_argument("cannot write file: " + csv_path);
    out << sys.group->name << "," << join(irreps, ";") << "," << res.strategy << ","
        << fmt(budget) << "," << res.support.weight << "," << fmt(res.norm) << ","
        << join(res.support.labels(*sys.dual), ";") << "\n";
  }
  return kExitPass;
}

struct SweepRow {
  bool ok = false;
  std::string text;
};

const char* kSweepHeader =
    "group,order,r_labels,v_r,mode,delta,N,gamma,f_l1,l1_bound,supp_weight,support_bound,"
    "h_inf,h_inf_bound,oracle_strategy,oracle_v_star,oracle_norm\n";

SweepRow sweep_instance(const GroupSystem& sys, const SpectralSet& R, double epsilon,
                        const std::string& mode, bool with_oracle) {
  SweepRow row;
  PipelineParams params;
  params.epsilon = epsilon;
  params.mode = norming_mode_from_string(mode);
  params.threads = 1;  // instances are the parallel unit
  const PipelineRun run = run_pipeline(sys, R, params);
  const Certificate& c = run.certificate;

  std::string oracle_strategy = "none", oracle_v = "", oracle_norm = "";
  if (with_oracle) {
    const SupportSearchResult res = minimal_support_search(
        sys, R, c.achieved.f_l1 + 1e-9,
        sys.dual->size() - static_cast<int>(R.indices.size()) <= 12 ? SearchStrategy::Exhaustive
                                                                    : SearchStrategy::Greedy);
    oracle_strategy = res.strategy;
    oracle_v = std::to_string(res.support.weight);
    oracle_norm = fmt(res.norm);
  }

  std::ostringstream os;
  os << sys.group->name << "," << sys.group->order << "," << join(c.r_labels, ";") << ","
     << c.v_r << "," << c.mode << "," << fmt(c.delta) << "," << c.n_points << ","
     << fmt(c.gamma) << "," << fmt(c.achieved.f_l1) << "," << fmt(c.bounds.l1) << ","
     << c.achieved.supp_weight << "," << fmt(c.bounds.support) << "," << fmt(c.achieved.h_inf)
     << "," << fmt(c.bounds.h_inf) << "," << oracle_strategy << "," << oracle_v << ","
     << oracle_norm << "\n";
  row.text = os.str();
  row.ok = true;
  return row;
}

int cmd_sweep(const std::string& family, int from, int to, const std::vector<int>& vr_list,
              double epsilon, const std::string& mode, bool with_oracle,
              const std::string& out_path) {
  if (family != "cyclic" && family != "dihedral")
    throw std::invalid_argument("sweep family must be cyclic or dihedral");

  struct Instance {
    GroupSystem sys;
    SpectralSet R;
  };
  std::vector<Instance> instances;
  for (int n = from; n <= to; ++n) {
    GroupSystem sys = family == "cyclic" ? build_catalog_group(GroupFamily::Cyclic, n)
                                         : build_catalog_group(GroupFamily::Dihedral, n);
    for (int vr : vr_list) {
      // R: nontrivial irreps in catalog order while the weight fits exactly
      std::vector<int> idx;
      int weight = 0;
      for (int s = 0; s < sys.dual->size() && weight < vr; ++s) {
        const auto& ir = sys.dual->irreps[s];
        if (ir.label == "chi0" || ir.label == "triv") continue;
        if (weight + ir.dim * ir.dim <= vr) {
          idx.push_back(s);
          weight += ir.dim * ir.dim;
        }
      }
      if (weight != vr || idx.empty()) continue;  // no exact match at this size
      instances.push_back({sys, make_spectral_set(*sys.dual, idx)});
    }
  }

  std::vector<SweepRow> rows(instances.size());
  parallel_for_index(static_cast<int>(instances.size()), [&](int i) {
    rows[i] = sweep_instance(instances[i].sys, instances[i].R, epsilon, mode, with_oracle);
  });

  std::ostringstream csv;
  csv << kSweepHeader;
  for (const auto& r : rows)
    if (r.ok) csv << r.text;
  if (out_path.empty()) std::cout << csv.str();
  else write_file(out_path, csv.str());
  return kExitPass;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Harmonic analysis on finite groups and certified minimal-norm spectral "
      "interpolation.\n"
      "Sweep CSV columns: group,order,r_labels,v_r,mode,delta,N,gamma,f_l1,l1_bound,"
      "supp_weight,support_bound,h_inf,h_inf_bound,oracle_strategy,oracle_v_star,oracle_norm\n"
      "Oracle CSV columns: group,r_labels,strategy,budget,v_star,norm,support_labels\n"
      "Floats are printed with 12 significant digits. UIAP_THREADS controls the worker count."};
  app.require_subcommand(1);

  std::string group_spec, group_file, irreps_arg, mode = "auto", out_path, cert_path;
  double tol = 1e-10;

  auto* group = app.add_subcommand("group", "group inspection");
  group->require_subcommand(1);
  auto* info = group->add_subcommand("info", "print order, classes, dual, verification report");
  info->add_option("--group", group_spec, "catalog spec, e.g. Z12, D4, S4, Q8, Z2xS3");
  info->add_option("--group-file", group_file, "custom group document (JSON)");
  info->add_option("--tol", tol, "verification tolerance")->capture_default_str();

  auto* construct = app.add_subcommand("construct", "run the construction, emit a certificate");
  std::optional<double> eps_opt, delta_opt;
  int directions = 32;
  construct->add_option("--group", group_spec, "catalog spec");
  construct->add_option("--group-file", group_file, "custom group document (JSON)");
  construct->add_option("--irreps", irreps_arg, "comma-separated irrep labels of R")->required();
  construct->add_option("--epsilon", eps_opt, "l1 excess target (picks delta)");
  construct->add_option("--delta", delta_opt, "distortion parameter in (0,1)");
  construct->add_option("--mode", mode, "auto | restriction | net")->capture_default_str();
  construct->add_option("--directions", directions, "polygonal direction count K")
      ->capture_default_str();
  construct->add_option("--out", out_path, "certificate output path");

  auto* verify = app.add_subcommand("verify", "re-check a certificate from its document");
  double fhat_tol = 1e-6, centrality_tol = 1e-8;
  verify->add_option("--cert", cert_path, "certificate path")->required();
  verify->add_option("--fhat-tol", fhat_tol, "tolerance for fhat = I on R")
      ->capture_default_str();
  verify->add_option("--centrality-tol", centrality_tol, "centrality tolerance")
      ->capture_default_str();

  auto* oracle = app.add_subcommand("oracle", "minimal spectral support within an l1 budget");
  double budget = 1.0;
  std::string strategy = "exhaustive", oracle_csv;
  oracle->add_option("--group", group_spec, "catalog spec");
  oracle->add_option("--group-file", group_file, "custom group document (JSON)");
  oracle->add_option("--irreps", irreps_arg, "comma-separated irrep labels of R")->required();
  oracle->add_option("--budget", budget, "l1 norm budget k >= 1")->required();
  oracle->add_option("--strategy", strategy, "exhaustive | greedy")->capture_default_str();
  oracle->add_option("--csv", oracle_csv, "append a CSV row to this file");

  auto* sweep = app.add_subcommand("sweep", "run instances over a family and emit CSV");
  std::string family = "cyclic", vr_arg = "1";
  int from = 4, to = 8;
  double sweep_eps = 0.5;
  bool with_oracle = false;
  sweep->add_option("--family", family, "cyclic | dihedral")->capture_default_str();
  sweep->add_option("--from", from, "smallest family parameter")->capture_default_str();
  sweep->add_option("--to", to, "largest family parameter")->capture_default_str();
  sweep->add_option("--vr", vr_arg, "comma-separated v(R) values")->capture_default_str();
  sweep->add_option("--epsilon", sweep_eps, "l1 excess target")->capture_default_str();
  sweep->add_option("--mode", mode, "auto | restriction | net")->capture_default_str();
  sweep->add_flag("--oracle", with_oracle, "add oracle columns (exhaustive when tractable)");
  sweep->add_option("--out", out_path, "CSV output path (stdout when omitted)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (info->parsed()) return cmd_group_info(group_spec, group_file, tol);
    if (construct->parsed())
      return cmd_construct(group_spec, group_file, split_csv(irreps_arg), eps_opt, delta_opt,
                           mode, directions, out_path);
    if (verify->parsed()) return cmd_verify(cert_path, fhat_tol, centrality_tol);
    if (oracle->parsed())
      return cmd_oracle(group_spec, group_file, split_csv(irreps_arg), budget, strategy,
                        oracle_csv);
    if (sweep->parsed()) {
      std::vector<int> vr_list;
      for (const auto& v : split_csv(vr_arg)) vr_list.push_back(std::stoi(v));
      return cmd_sweep(family, from, to, vr_list, sweep_eps, mode, with_oracle, out_path);
    }
  } catch (const PipelineError& e) {
    std::cerr << "pipeline failure at stage " << e.stage << ": " << e.what() << "\n";
    return e.stage == "delta_for_epsilon" ? kExitInputError : kExitBoundViolation;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}
