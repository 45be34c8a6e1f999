// netext: a numerical laboratory for Lipschitz functions on 1-nets of
// sup-products of l_2, Mazur maps, hyperoctahedral averaging, and the
// quantitative inequalities connecting them.
//
// Exit codes: 0 success, 1 inequality failure, 2 configuration error,
// 3 plugin contract error.

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "netext/extensions.hpp"
#include "netext/io.hpp"
#include "netext/kernels.hpp"
#include "netext/mazur.hpp"
#include "netext/modulus.hpp"
#include "netext/net.hpp"
#include "netext/verifier.hpp"

namespace {

using namespace netext;

constexpr int kExitOk = 0;
constexpr int kExitInequalityFailure = 1;
constexpr int kExitConfigError = 2;
constexpr int kExitPluginError = 3;

io::json load_config(const std::string& path) {
  if (path.empty()) return io::json::object();
  try {
    return io::read_json_file(path);
  } catch (const std::exception& e) {
    throw InvalidInput(std::string("cannot load --config: ") + e.what());
  }
}

// flags > config file > built-in defaults
template <typename T>
void merge_config(const CLI::App& cmd, const io::json& cfg, const std::string& flag, T& value) {
  const CLI::Option* opt = cmd.get_option("--" + flag);
  if (opt != nullptr && opt->count() > 0) return;
  if (cfg.contains(flag)) value = cfg.at(flag).get<T>();
}

std::vector<double> parse_grid(const std::string& csv) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos < csv.size()) {
    std::size_t comma = csv.find(',', pos);
    if (comma == std::string::npos) comma = csv.size();
    const std::string tok = csv.substr(pos, comma - pos);
    if (!tok.empty()) {
      char* end = nullptr;
      const double v = std::strtod(tok.c_str(), &end);
      if (end == tok.c_str()) throw InvalidInput("cannot parse grid value: " + tok);
      out.push_back(v);
    }
    pos = comma + 1;
  }
  if (out.empty()) throw InvalidInput("empty grid");
  return out;
}

std::string sidecar_path(const std::string& csv_path) {
  const std::size_t dot = csv_path.find_last_of('.');
  if (dot == std::string::npos || csv_path.substr(dot) != ".csv") return csv_path + ".json";
  return csv_path.substr(0, dot) + ".json";
}

std::vector<double> geometric_scales(double lo, double hi, std::size_t count) {
  if (!(lo > 0.0 && hi > lo) || count < 2) throw InvalidInput("bad scale grid parameters");
  std::vector<double> scales(count);
  for (std::size_t i = 0; i < count; ++i)
    scales[i] = lo * std::pow(hi / lo, static_cast<double>(i) / static_cast<double>(count - 1));
  scales.back() = hi;
  return scales;
}

struct CandidateSetup {
  ExtensionCandidate candidate;
  std::shared_ptr<const NetHandle> net;
};

CandidateSetup make_candidate(const std::string& extension, std::size_t dim, double net_radius,
                              std::uint64_t seed, double plugin_timeout) {
  CandidateSetup s;
  std::shared_ptr<const NetHandle> net;
  if (extension == "nearest") {
    net = std::make_shared<const NetHandle>(build_greedy_net(dim, net_radius, seed));
  }
  s.candidate = extension_by_name(extension, net, plugin_timeout);
  s.net = net;
  return s;
}

// ---------------------------------------------------------------------------
// verify-mazur
// ---------------------------------------------------------------------------

int cmd_verify_mazur(std::uint64_t trials, int p_max, std::size_t dim_max, std::uint64_t seed,
                     const std::string& out) {
  if (p_max < 2) throw InvalidInput("--p-max must be >= 2");
  if (dim_max < 1) throw InvalidInput("--dim-max must be >= 1");
  if (trials == 0) std::cerr << "warning: --trials 0, report is vacuous\n";

  struct Suite {
    std::string name;
    std::uint64_t trials = 0;
    std::uint64_t violations = 0;
    double worst_margin = 0.0;  // max lhs - rhs*(1+slack)
  };
  Suite scalar{"scalar_bound"}, holder{"holder_bound"}, identity{"norm_identity"};

  RngStream stream = derive_stream(seed, "verify-mazur");
  for (std::uint64_t i = 0; i < trials; ++i) {
    const double u = stream.uniform(-100.0, 100.0);
    const double v = stream.uniform(-100.0, 100.0);
    const int p = 2 + static_cast<int>(stream.below(p_max - 1));
    const BoundCheck c = verify_scalar_bound(u, v, p);
    ++scalar.trials;
    if (!c.holds) {
      ++scalar.violations;
      scalar.worst_margin = std::max(scalar.worst_margin, c.lhs - c.rhs);
    }
  }
  const std::uint64_t vector_trials = trials / 10;
  for (std::uint64_t i = 0; i < vector_trials; ++i) {
    const std::size_t dim = 1 + stream.below(dim_max);
    const int p = 2 + static_cast<int>(stream.below(p_max - 1));
    const RealVector x(stream.in_ball(dim, 10.0));
    const RealVector y(stream.in_ball(dim, 10.0));
    const BoundCheck c = verify_holder_bound(x, y, p);
    ++holder.trials;
    if (!c.holds) {
      ++holder.violations;
      holder.worst_margin = std::max(holder.worst_margin, c.lhs - c.rhs);
    }
    // ||M_p v||_p = ||v||_2^(2/p)
    const double lhs = lq_norm(mazur(x, p), NormExponent(p));
    const double rhs = std::pow(l2_norm(x), 2.0 / p);
    ++identity.trials;
    if (std::fabs(lhs - rhs) > 1e-12 * (1.0 + rhs)) {
      ++identity.violations;
      identity.worst_margin = std::max(identity.worst_margin, std::fabs(lhs - rhs));
    }
  }

  if (!out.empty()) {
    io::CsvWriter csv(out);
    csv.row({"check", "trials", "violations", "worst_margin"});
    for (const Suite* s : {&scalar, &holder, &identity})
      csv.row({s->name, std::to_string(s->trials), std::to_string(s->violations),
               io::format_double(s->worst_margin)});
    csv.close();
  }
  const std::uint64_t total_violations = scalar.violations + holder.violations + identity.violations;
  std::cout << "scalar_bound: " << scalar.trials << " trials, " << scalar.violations
            << " violations\n"
            << "holder_bound: " << holder.trials << " trials, " << holder.violations
            << " violations\n"
            << "norm_identity: " << identity.trials << " trials, " << identity.violations
            << " violations\n";
  return total_violations == 0 ? kExitOk : kExitInequalityFailure;
}

// ---------------------------------------------------------------------------
// build-net
// ---------------------------------------------------------------------------

int cmd_build_net(std::size_t dim, double radius, std::uint64_t seed, const std::string& out,
                  std::uint64_t covering_queries) {
  const NetHandle net = build_greedy_net(dim, radius, seed);
  const CoveringCheck covering = net.verify_covering(covering_queries, seed);
  const double covering_bound = 1.0 + net.covering_slack();

  save_net(net, out, sidecar_path(out));

  io::json summary;
  summary["points"] = net.size();
  summary["dim"] = net.dim();
  summary["radius"] = net.radius();
  summary["separation"] = net.separation();
  summary["covering_max_observed"] = covering.max_distance;
  summary["covering_bound"] = covering_bound;
  summary["covering_queries"] = covering_queries;
  summary["out_csv"] = out;
  summary["out_sidecar"] = sidecar_path(out);
  std::cout << summary.dump(2) << "\n";

  const bool ok = (net.size() < 2 || net.separation() >= 1.0) &&
                  covering.max_distance <= covering_bound;
  return ok ? kExitOk : kExitInequalityFailure;
}

// ---------------------------------------------------------------------------
// symmetrize
// ---------------------------------------------------------------------------

int cmd_symmetrize(std::size_t n, int p, std::size_t k, double t, const std::string& mode,
                   std::uint64_t samples, std::uint64_t budget, std::uint64_t seed,
                   const std::string& extension, double net_radius, const std::string& out) {
  if (p < 2) throw InvalidInput("--p must be >= 2");
  if (n < 1) throw InvalidInput("--n must be >= 1");
  if (k < 1 || k > n) throw InvalidInput("--k must be in [1, n]");
  SymmetrizeConfig sym;
  if (mode == "exact")
    sym.mode = SymmetrizeConfig::Mode::exact;
  else if (mode == "sampled")
    sym.mode = SymmetrizeConfig::Mode::sampled;
  else
    throw InvalidInput("--mode must be exact or sampled");
  sym.sample_count = samples;
  sym.seed = seed;
  sym.exact_budget = budget;

  const CandidateSetup setup = make_candidate(extension, n, net_radius, seed, 10.0);
  const VectorMap fp = setup.candidate.component_map(p);

  const RealVector input = RealVector::indicator(n, 1, k, t);
  const SymmetrizeResult g = symmetrize_full(fp, input, sym);
  const AlphaExtraction alpha = extract_alpha(fp, n, p, k, t, sym);

  io::json j;
  j["n"] = n;
  j["p"] = p;
  j["k"] = k;
  j["t"] = t;
  j["mode"] = mode;
  j["extension"] = setup.candidate.name;
  j["terms"] = g.terms;
  j["input"] = io::vector_to_json(input.coords());
  j["value"] = io::vector_to_json(g.value.coords());
  if (sym.mode == SymmetrizeConfig::Mode::sampled)
    j["std_error"] = io::vector_to_json(g.std_error.coords());
  j["alpha"] = alpha.alpha;
  j["off_support_residual"] = alpha.off_support_residual;
  j["support_variation"] = alpha.support_variation;
  j["alpha_second_set_diff"] = alpha.alpha_second_set_diff;
  if (!out.empty()) io::write_json_file(out, j);
  std::cout << j.dump(2) << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// estimate-modulus / estimate-gamma
// ---------------------------------------------------------------------------

int cmd_estimate_modulus(const std::string& extension, std::size_t dim, int p0, int p_max,
                         double scale_min, double scale_max, std::size_t scale_count,
                         std::uint64_t samples, std::uint64_t seed, double sample_radius,
                         double net_radius, const std::string& out) {
  if (p0 < 2 || p_max < p0) throw InvalidInput("need 2 <= p0 <= p-max");
  const CandidateSetup setup = make_candidate(extension, dim, net_radius, seed, 10.0);
  const ProductShape shape{p0, p_max, dim};
  const std::vector<double> scales = geometric_scales(scale_min, scale_max, scale_count);
  const ModulusTable table = estimate_modulus_product(setup.candidate.product, shape, scales,
                                                      samples, seed, sample_radius);
  write_modulus_csv(table, out);
  std::cout << "omega_hat(" << io::format_double(scales.front())
            << ") = " << io::format_double(table.estimates().front()) << ", omega_hat("
            << io::format_double(scales.back())
            << ") = " << io::format_double(table.estimates().back()) << ", written to " << out
            << "\n";
  return kExitOk;
}

int cmd_estimate_gamma(const std::string& extension, std::size_t dim, int p0, int p_max,
                       double net_radius, std::uint64_t samples, std::uint64_t seed,
                       const std::string& out) {
  if (p0 < 2 || p_max < p0) throw InvalidInput("need 2 <= p0 <= p-max");
  auto net = std::make_shared<const NetHandle>(build_greedy_net(dim, net_radius, seed));
  ExtensionCandidate candidate = extension_by_name(extension, net, 10.0);
  const ProductNet pnet(net, p0, p_max);
  const GammaEstimate gamma = estimate_gamma(candidate.product, pnet, samples, seed);

  io::json j;
  j["extension"] = candidate.name;
  j["dim"] = dim;
  j["p0"] = p0;
  j["p_max"] = p_max;
  j["net_radius"] = net_radius;
  j["net_points"] = net->size();
  j["samples"] = gamma.samples;
  j["gamma"] = gamma.value;
  io::json arg = io::json::array();
  for (const auto i : gamma.argmax) arg.push_back(i);
  j["argmax_indices"] = arg;
  if (!out.empty()) io::write_json_file(out, j);
  std::cout << j.dump(2) << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// run-contradiction / report
// ---------------------------------------------------------------------------

InequalityReport floor_report(const ContradictionReport& r) {
  InequalityReport rep;
  rep.name = "choice_floor";
  rep.mode = "analytic";
  rep.lhs = kOmegaFloor - 1e-12;
  rep.rhs = r.implied_floor;
  rep.holds = rep.lhs <= rep.rhs;
  rep.inputs = {{"t", r.t}, {"p", r.p}, {"k", r.k_overflow ? -1.0 : r.k_value}};
  return rep;
}

int cmd_run_contradiction(const std::string& extension, const std::string& t_grid_csv,
                          std::size_t dim, int p0, int p_max, double net_radius,
                          const std::string& mode, std::size_t feasible_n,
                          std::uint64_t modulus_samples, std::uint64_t gamma_samples,
                          std::uint64_t seed, double slack, const std::string& out) {
  if (p0 < 2 || p_max < p0) throw InvalidInput("need 2 <= p0 <= p-max");
  const std::vector<double> t_grid = parse_grid(t_grid_csv);
  for (const double t : t_grid)
    if (!(t > 0.0 && t < kContradictionTMax))
      throw InvalidInput("t = " + std::to_string(t) + " outside (0, 1/(sqrt(2) e^2) ~ 0.0957)");
  if (mode != "exact" && mode != "sampled") throw InvalidInput("--mode must be exact or sampled");
  if (feasible_n < 2) throw InvalidInput("--feasible-n must be >= 2");

  auto net = std::make_shared<const NetHandle>(build_greedy_net(dim, net_radius, seed));
  ExtensionCandidate candidate = extension_by_name(extension, net, 10.0);
  auto pnet = std::make_shared<const ProductNet>(net, p0, p_max);

  VerifierEstimateOptions opts;
  opts.modulus_samples = modulus_samples;
  opts.gamma_samples = gamma_samples;
  opts.slack = slack;
  const VerifierContext ctx = make_verifier_context(candidate, pnet, opts, seed);

  ContradictionOptions copts;
  copts.run_feasible = true;
  copts.feasible_n = feasible_n;

  bool all_ok = true;
  io::json runs = io::json::array();
  std::vector<InequalityReport> flat;
  for (const double t : t_grid) {
    const ContradictionReport r = contradiction_pipeline(ctx, t, copts);
    runs.push_back(r.to_json());
    InequalityReport fr = floor_report(r);
    all_ok = all_ok && fr.holds;
    flat.push_back(std::move(fr));
    for (const auto& c : r.feasible_checks) {
      all_ok = all_ok && c.holds;
      flat.push_back(c);
    }
    std::cout << "t=" << io::format_double(t) << " p=" << r.p << " implied_floor="
              << io::format_double(r.implied_floor) << " omega_hat(sqrt2 t)="
              << io::format_double(r.omega_sqrt2t) << (r.floor_holds ? " [floor ok]" : " [floor FAILS]")
              << "\n";
  }

  io::json meta;
  meta["extension"] = candidate.name;
  meta["dim"] = dim;
  meta["p0"] = p0;
  meta["p_max"] = p_max;
  meta["net_radius"] = net_radius;
  meta["net_points"] = net->size();
  meta["mode"] = mode;
  meta["feasible_n"] = feasible_n;
  meta["seed"] = seed;
  meta["slack"] = slack;
  meta["gamma"] = ctx.gamma.value;

  if (!out.empty()) {
    io::json doc;
    doc["meta"] = meta;
    doc["runs"] = runs;
    io::write_json_file(out + ".json", doc);
    write_reports_csv(flat, out + ".csv");
  }
  return all_ok ? kExitOk : kExitInequalityFailure;
}

int cmd_report(const std::string& in, const std::string& out) {
  const io::json doc = io::read_json_file(in);
  std::vector<InequalityReport> flat;
  bool all_ok = true;
  auto ingest = [&](const io::json& rj) {
    InequalityReport rep;
    rep.name = rj.at("name").get<std::string>();
    rep.lhs = rj.at("lhs").get<double>();
    rep.rhs = rj.at("rhs").get<double>();
    rep.holds = rj.at("holds").get<bool>();
    rep.mode = rj.at("mode").get<std::string>();
    rep.inputs = rj.value("inputs", io::json::object());
    rep.witness = rj.value("witness", io::json::object());
    all_ok = all_ok && rep.holds;
    flat.push_back(std::move(rep));
  };
  if (doc.contains("runs")) {
    for (const auto& run : doc.at("runs"))
      if (run.contains("feasible") && run.at("feasible").value("ran", false))
        for (const auto& c : run.at("feasible").at("checks")) ingest(c);
  }
  if (doc.contains("reports"))
    for (const auto& r : doc.at("reports")) ingest(r);

  for (const auto& r : flat)
    std::cout << (r.holds ? "PASS " : "FAIL ") << r.name << " lhs=" << io::format_double(r.lhs)
              << " rhs=" << io::format_double(r.rhs) << "\n";
  if (!out.empty()) write_reports_csv(flat, out);
  return all_ok ? kExitOk : kExitInequalityFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"netext: Mazur maps, 1-nets and uniform-continuity experiments"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "JSON config file (keys mirror flag names)");

  // verify-mazur
  auto* vm = app.add_subcommand("verify-mazur", "scalar and vector Mazur bound suites");
  std::uint64_t vm_trials = 100000;
  int vm_pmax = 64;
  std::size_t vm_dimmax = 64;
  std::uint64_t vm_seed = 0;
  std::string vm_out;
  vm->add_option("--trials", vm_trials, "number of scalar trials (vector trials = trials/10)");
  vm->add_option("--p-max", vm_pmax, "largest Mazur exponent");
  vm->add_option("--dim-max", vm_dimmax, "largest vector dimension");
  vm->add_option("--seed", vm_seed, "random seed");
  vm->add_option("--out", vm_out, "CSV output path");

  // build-net
  auto* bn = app.add_subcommand("build-net", "greedy 1-net of a euclidean ball");
  std::size_t bn_dim = 2;
  double bn_radius = 3.0;
  std::uint64_t bn_seed = 0;
  std::string bn_out;
  std::uint64_t bn_queries = 10000;
  bn->add_option("--dim", bn_dim, "ambient dimension (1..10)");
  bn->add_option("--radius", bn_radius, "ball radius (< 15)");
  bn->add_option("--seed", bn_seed, "seed for the covering verification queries");
  bn->add_option("--out", bn_out, "points CSV path (sidecar JSON written next to it)")->required();
  bn->add_option("--covering-queries", bn_queries, "number of covering check queries");

  // symmetrize
  auto* sy = app.add_subcommand("symmetrize", "hyperoctahedral averaging of an extension component");
  std::size_t sy_n = 4;
  int sy_p = 3;
  std::size_t sy_k = 2;
  double sy_t = 1.0;
  std::string sy_mode = "exact";
  std::uint64_t sy_samples = 100000;
  std::uint64_t sy_budget = 10000000;
  std::uint64_t sy_seed = 0;
  std::string sy_ext = "natural";
  double sy_netr = 3.0;
  std::string sy_out;
  sy->add_option("--n", sy_n, "dimension");
  sy->add_option("--p", sy_p, "Mazur exponent");
  sy->add_option("--k", sy_k, "indicator support size");
  sy->add_option("--t", sy_t, "indicator scale");
  sy->add_option("--mode", sy_mode, "exact|sampled");
  sy->add_option("--samples", sy_samples, "sample count (sampled mode)");
  sy->add_option("--budget", sy_budget, "exact-mode group budget");
  sy->add_option("--seed", sy_seed, "random seed");
  sy->add_option("--extension", sy_ext, "natural|nearest|zero|<plugin command>");
  sy->add_option("--net-radius", sy_netr, "net radius (for --extension nearest)");
  sy->add_option("--out", sy_out, "JSON output path");

  // estimate-modulus
  auto* em = app.add_subcommand("estimate-modulus", "empirical modulus of uniform continuity");
  std::string em_ext = "natural";
  std::size_t em_dim = 4;
  int em_p0 = 2, em_pmax = 12;
  double em_smin = 1e-3, em_smax = 2.0;
  std::size_t em_scount = 24;
  std::uint64_t em_samples = 200;
  std::uint64_t em_seed = 0;
  double em_radius = kDefaultSampleRadius;
  double em_netr = 3.0;
  std::string em_out;
  em->add_option("--extension", em_ext, "natural|nearest|zero|<plugin command>");
  em->add_option("--dim", em_dim, "component dimension");
  em->add_option("--p0", em_p0, "first product exponent");
  em->add_option("--p-max", em_pmax, "last product exponent");
  em->add_option("--scale-min", em_smin, "smallest scale");
  em->add_option("--scale-max", em_smax, "largest scale");
  em->add_option("--scales", em_scount, "number of geometric grid points");
  em->add_option("--samples", em_samples, "samples per scale and component");
  em->add_option("--seed", em_seed, "random seed");
  em->add_option("--radius", em_radius, "base-point sampling radius");
  em->add_option("--net-radius", em_netr, "net radius (for --extension nearest)");
  em->add_option("--out", em_out, "CSV output path")->required();

  // estimate-gamma
  auto* eg = app.add_subcommand("estimate-gamma", "sup distance to f over sampled net points");
  std::string eg_ext = "zero";
  std::size_t eg_dim = 4;
  int eg_p0 = 2, eg_pmax = 12;
  double eg_netr = 5.0;
  std::uint64_t eg_samples = 4096;
  std::uint64_t eg_seed = 0;
  std::string eg_out;
  eg->add_option("--extension", eg_ext, "natural|nearest|zero|<plugin command>");
  eg->add_option("--dim", eg_dim, "component dimension");
  eg->add_option("--p0", eg_p0, "first product exponent");
  eg->add_option("--p-max", eg_pmax, "last product exponent");
  eg->add_option("--net-radius", eg_netr, "component net radius");
  eg->add_option("--samples", eg_samples, "sampled net points");
  eg->add_option("--seed", eg_seed, "random seed");
  eg->add_option("--out", eg_out, "JSON output path");

  // run-contradiction
  auto* rc = app.add_subcommand("run-contradiction", "choice-mode pipeline over a t grid");
  std::string rc_ext = "natural";
  std::string rc_tgrid = "0.05";
  std::size_t rc_dim = 6;
  int rc_p0 = 2, rc_pmax = 12;
  double rc_netr = 3.0;
  std::string rc_mode = "exact";
  std::size_t rc_fn = 6;
  std::uint64_t rc_msamples = 128;
  std::uint64_t rc_gsamples = 2048;
  std::uint64_t rc_seed = 0;
  double rc_slack = 1.1;
  std::string rc_out;
  rc->add_option("--extension", rc_ext, "natural|nearest|zero|<plugin command>");
  rc->add_option("--t-grid", rc_tgrid, "comma-separated t values, each < 1/(sqrt(2)e^2)");
  rc->add_option("--n", rc_dim, "component dimension (also the net dimension)");
  rc->add_option("--p0", rc_p0, "first product exponent");
  rc->add_option("--p-max", rc_pmax, "last product exponent");
  rc->add_option("--net-radius", rc_netr, "component net radius");
  rc->add_option("--mode", rc_mode, "exact|sampled symmetrization");
  rc->add_option("--feasible-n", rc_fn, "clamped dimension for feasible-mode checks (<= 7)");
  rc->add_option("--samples", rc_msamples, "modulus samples per scale");
  rc->add_option("--gamma-samples", rc_gsamples, "gamma samples");
  rc->add_option("--seed", rc_seed, "random seed");
  rc->add_option("--slack", rc_slack, "multiplicative slack on omega-hat");
  rc->add_option("--out", rc_out, "output basename (.json and .csv appended)");

  // report
  auto* rp = app.add_subcommand("report", "render a stored JSON report as CSV + pass/fail lines");
  std::string rp_in, rp_out;
  rp->add_option("--in", rp_in, "JSON report produced by run-contradiction")->required();
  rp->add_option("--out", rp_out, "CSV output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfigError;
  }

  try {
    const io::json cfg = load_config(config_path);
    if (vm->parsed()) {
      merge_config(*vm, cfg, "trials", vm_trials);
      merge_config(*vm, cfg, "p-max", vm_pmax);
      merge_config(*vm, cfg, "dim-max", vm_dimmax);
      merge_config(*vm, cfg, "seed", vm_seed);
      merge_config(*vm, cfg, "out", vm_out);
      return cmd_verify_mazur(vm_trials, vm_pmax, vm_dimmax, vm_seed, vm_out);
    }
    if (bn->parsed()) {
      merge_config(*bn, cfg, "dim", bn_dim);
      merge_config(*bn, cfg, "radius", bn_radius);
      merge_config(*bn, cfg, "seed", bn_seed);
      merge_config(*bn, cfg, "covering-queries", bn_queries);
      return cmd_build_net(bn_dim, bn_radius, bn_seed, bn_out, bn_queries);
    }
    if (sy->parsed()) {
      merge_config(*sy, cfg, "n", sy_n);
      merge_config(*sy, cfg, "p", sy_p);
      merge_config(*sy, cfg, "k", sy_k);
      merge_config(*sy, cfg, "t", sy_t);
      merge_config(*sy, cfg, "mode", sy_mode);
      merge_config(*sy, cfg, "samples", sy_samples);
      merge_config(*sy, cfg, "budget", sy_budget);
      merge_config(*sy, cfg, "seed", sy_seed);
      merge_config(*sy, cfg, "extension", sy_ext);
      merge_config(*sy, cfg, "net-radius", sy_netr);
      merge_config(*sy, cfg, "out", sy_out);
      return cmd_symmetrize(sy_n, sy_p, sy_k, sy_t, sy_mode, sy_samples, sy_budget, sy_seed,
                            sy_ext, sy_netr, sy_out);
    }
    if (em->parsed()) {
      merge_config(*em, cfg, "extension", em_ext);
      merge_config(*em, cfg, "dim", em_dim);
      merge_config(*em, cfg, "p0", em_p0);
      merge_config(*em, cfg, "p-max", em_pmax);
      merge_config(*em, cfg, "scale-min", em_smin);
      merge_config(*em, cfg, "scale-max", em_smax);
      merge_config(*em, cfg, "scales", em_scount);
      merge_config(*em, cfg, "samples", em_samples);
      merge_config(*em, cfg, "seed", em_seed);
      merge_config(*em, cfg, "radius", em_radius);
      merge_config(*em, cfg, "net-radius", em_netr);
      return cmd_estimate_modulus(em_ext, em_dim, em_p0, em_pmax, em_smin, em_smax, em_scount,
                                  em_samples, em_seed, em_radius, em_netr, em_out);
    }
    if (eg->parsed()) {
      merge_config(*eg, cfg, "extension", eg_ext);
      merge_config(*eg, cfg, "dim", eg_dim);
      merge_config(*eg, cfg, "p0", eg_p0);
      merge_config(*eg, cfg, "p-max", eg_pmax);
      merge_config(*eg, cfg, "net-radius", eg_netr);
      merge_config(*eg, cfg, "samples", eg_samples);
      merge_config(*eg, cfg, "seed", eg_seed);
      merge_config(*eg, cfg, "out", eg_out);
      return cmd_estimate_gamma(eg_ext, eg_dim, eg_p0, eg_pmax, eg_netr, eg_samples, eg_seed,
                                eg_out);
    }
    if (rc->parsed()) {
      merge_config(*rc, cfg, "extension", rc_ext);
      merge_config(*rc, cfg, "t-grid", rc_tgrid);
      merge_config(*rc, cfg, "n", rc_dim);
      merge_config(*rc, cfg, "p0", rc_p0);
      merge_config(*rc, cfg, "p-max", rc_pmax);
      merge_config(*rc, cfg, "net-radius", rc_netr);
      merge_config(*rc, cfg, "mode", rc_mode);
      merge_config(*rc, cfg, "feasible-n", rc_fn);
      merge_config(*rc, cfg, "samples", rc_msamples);
      merge_config(*rc, cfg, "gamma-samples", rc_gsamples);
      merge_config(*rc, cfg, "seed", rc_seed);
      merge_config(*rc, cfg, "slack", rc_slack);
      merge_config(*rc, cfg, "out", rc_out);
      return cmd_run_contradiction(rc_ext, rc_tgrid, rc_dim, rc_p0, rc_pmax, rc_netr, rc_mode,
                                   rc_fn, rc_msamples, rc_gsamples, rc_seed, rc_slack, rc_out);
    }
    if (rp->parsed()) {
      merge_config(*rp, cfg, "out", rp_out);
      return cmd_report(rp_in, rp_out);
    }
  } catch (const PluginError& e) {
    std::cerr << "plugin error: " << e.what() << "\n";
    if (!e.request().empty()) std::cerr << "  request:  " << e.request();
    if (!e.response().empty()) std::cerr << "  response: " << e.response() << "\n";
    return kExitPluginError;
  } catch (const InvalidInput& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInequalityFailure;
  }
  return kExitConfigError;
}
