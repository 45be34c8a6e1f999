#include "netext/verifier.hpp"

#include <cmath>

#include "netext/mazur.hpp"

namespace netext {

const double kContradictionTMax = 1.0 / (std::sqrt(2.0) * std::exp(2.0));
const double kOmegaFloor = 1.0 / (2.0 * std::exp(1.0));

namespace {

constexpr double kHoldsSlack = 1e-12;

bool leq_with_fp_slack(double lhs, double rhs) { return lhs <= rhs * (1.0 + kHoldsSlack); }

std::string field_or_empty(const io::json& inputs, const char* key) {
  if (!inputs.contains(key)) return "";
  const auto& v = inputs[key];
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number()) return io::format_double(v.get<double>());
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

}  // namespace

io::json InequalityReport::to_json() const {
  io::json j;
  j["name"] = name;
  j["lhs"] = lhs;
  j["rhs"] = rhs;
  j["holds"] = holds;
  j["mode"] = mode;
  j["inputs"] = inputs;
  j["witness"] = witness;
  return j;
}

std::vector<std::string> InequalityReport::csv_fields() const {
  return {name,
          field_or_empty(inputs, "n"),
          field_or_empty(inputs, "p"),
          field_or_empty(inputs, "k"),
          field_or_empty(inputs, "t"),
          io::format_double(lhs),
          io::format_double(rhs),
          holds ? "true" : "false",
          mode};
}

VerifierContext make_verifier_context(ExtensionCandidate candidate,
                                      std::shared_ptr<const ProductNet> net,
                                      const VerifierEstimateOptions& opts, std::uint64_t seed) {
  if (net == nullptr) throw InvalidInput("verifier context: null net");
  VerifierContext ctx;
  ctx.net = net;
  ctx.omega = estimate_modulus_product(candidate.product, net->shape(), opts.scales,
                                       opts.modulus_samples, derive_seed(seed, "ctx-omega"),
                                       opts.sample_radius);
  ctx.gamma = estimate_gamma(candidate.product, *net, opts.gamma_samples, derive_seed(seed, "ctx-gamma"));
  ctx.candidate = std::move(candidate);
  ctx.slack = opts.slack;
  ctx.seed = seed;
  return ctx;
}

InequalityReport check_transfer_bound(const VerifierContext& ctx, int p, std::uint64_t samples) {
  const std::size_t n = ctx.net->component_net().dim();
  const double radius = ctx.net->component_net().radius();
  const NormExponent norm_p(p);
  const VectorMap fp = ctx.candidate.component_map(p);

  RngStream stream = derive_stream(ctx.seed, "transfer", static_cast<std::uint64_t>(p));
  InequalityReport rep;
  rep.name = "transfer_bound";
  rep.mode = "sampled-sup";
  RealVector worst_x = RealVector::zeros(n);
  for (std::uint64_t i = 0; i < samples; ++i) {
    const RealVector x(stream.in_ball(n, radius));
    const RealVector fx = fp(x);
    if (!fx.all_finite()) throw ContractViolation("transfer bound: F_p returned non-finite values");
    const double d = lq_dist(fx, mazur(x, p), norm_p);
    if (d > rep.lhs) {
      rep.lhs = d;
      worst_x = x;
    }
  }
  const double omega1 = ctx.omega.query(1.0);
  rep.rhs = omega1 * ctx.slack + ctx.gamma.value + 2.0;
  rep.holds = leq_with_fp_slack(rep.lhs, rep.rhs);
  rep.inputs = {{"p", p},
                {"n", n},
                {"samples", samples},
                {"omega_1", omega1},
                {"gamma", ctx.gamma.value},
                {"slack", ctx.slack},
                {"candidate", ctx.candidate.name}};
  rep.witness = {{"argmax_x", io::vector_to_json(worst_x.coords())}};
  return rep;
}

InequalityReport check_symmetrized_transfer(const VerifierContext& ctx, int p, std::size_t n_eval,
                                            std::uint64_t samples, const SymmetrizeConfig& sym) {
  const std::size_t net_dim = ctx.net->component_net().dim();
  if (n_eval > net_dim) throw InvalidInput("symmetrized transfer: n_eval exceeds component dim");
  const double radius = ctx.net->component_net().radius();
  const NormExponent norm_p(p);
  VectorMap fp = ctx.candidate.component_map(p);
  if (n_eval < net_dim) fp = conjugate_by_embedding(fp, n_eval, net_dim);

  RngStream stream = derive_stream(ctx.seed, "sym-transfer", static_cast<std::uint64_t>(p), n_eval);
  InequalityReport rep;
  rep.name = "symmetrized_transfer";
  rep.mode = sym.mode == SymmetrizeConfig::Mode::exact ? "exact" : "sampled";
  RealVector worst_x = RealVector::zeros(n_eval);
  for (std::uint64_t i = 0; i < samples; ++i) {
    const RealVector x(stream.in_ball(n_eval, radius));
    const RealVector gx = symmetrize(fp, x, sym);
    const double d = lq_dist(gx, mazur(x, p), norm_p);
    if (d > rep.lhs) {
      rep.lhs = d;
      worst_x = x;
    }
  }
  const double omega1 = ctx.omega.query(1.0);
  rep.rhs = omega1 * ctx.slack + ctx.gamma.value + 2.0;
  rep.holds = leq_with_fp_slack(rep.lhs, rep.rhs);
  rep.inputs = {{"p", p},           {"n", n_eval},
                {"samples", samples}, {"omega_1", omega1},
                {"gamma", ctx.gamma.value}, {"slack", ctx.slack},
                {"candidate", ctx.candidate.name}};
  rep.witness = {{"argmax_x", io::vector_to_json(worst_x.coords())}};
  return rep;
}

InequalityReport check_indicator_chain(const VerifierContext& ctx, std::size_t n, int p,
                                       std::size_t k, double t, const SymmetrizeConfig& sym) {
  if (k < 1 || 2 * k > n + 1) throw InvalidInput("indicator chain: need 1 <= k and 2k <= n+1");
  if (!(t > 0.0)) throw InvalidInput("indicator chain: t must be positive");
  const std::size_t net_dim = ctx.net->component_net().dim();
  if (n > net_dim) throw InvalidInput("indicator chain: n exceeds component dim");
  const NormExponent norm_p(p);
  VectorMap fp = ctx.candidate.component_map(p);
  if (n < net_dim) fp = conjugate_by_embedding(fp, n, net_dim);

  const double t_pow = std::pow(t, 2.0 / p);
  const RealVector ind_a = RealVector::indicator(n, 1, k, t);
  const RealVector ind_b = RealVector::indicator(n, n - k + 1, n, t);
  const RealVector ga = symmetrize(fp, ind_a, sym);
  const RealVector gb = symmetrize(fp, ind_b, sym);
  const double dist_g = lq_dist(gb, ga, norm_p);
  const double resid_a = lq_dist(ga, RealVector::indicator(n, 1, k, t_pow), norm_p);
  const double resid_b = lq_dist(gb, RealVector::indicator(n, n - k + 1, n, t_pow), norm_p);

  InequalityReport rep;
  rep.name = "indicator_chain";
  rep.mode = sym.mode == SymmetrizeConfig::Mode::exact ? "exact" : "sampled";
  rep.lhs = lq_dist(RealVector::indicator(n, n - k + 1, n, t_pow),
                    RealVector::indicator(n, 1, k, t_pow), norm_p);
  const double omega1 = ctx.omega.query(1.0);
  rep.rhs = dist_g + 2.0 * omega1 * ctx.slack + 2.0 * ctx.gamma.value + 4.0;
  rep.holds = leq_with_fp_slack(rep.lhs, rep.rhs);
  const double lhs_closed = t_pow * std::pow(2.0 * static_cast<double>(k), 1.0 / p);
  rep.inputs = {{"n", n},
                {"p", p},
                {"k", k},
                {"t", t},
                {"lhs_closed_form", lhs_closed},
                {"dist_g", dist_g},
                {"residual_first_set", resid_a},
                {"residual_second_set", resid_b},
                {"rhs_triangle", dist_g + resid_a + resid_b},
                {"omega_1", omega1},
                {"gamma", ctx.gamma.value},
                {"slack", ctx.slack},
                {"candidate", ctx.candidate.name}};
  return rep;
}

InequalityReport check_shift_bound(const VerifierContext& ctx, std::size_t n, int p, std::size_t k,
                                   double t, const SymmetrizeConfig& sym) {
  if (k + 1 > n) throw InvalidInput("shift bound: need k+1 <= n");
  if (!(t > 0.0)) throw InvalidInput("shift bound: t must be positive");
  const std::size_t net_dim = ctx.net->component_net().dim();
  if (n > net_dim) throw InvalidInput("shift bound: n exceeds component dim");
  const NormExponent norm_p(p);
  VectorMap fp = ctx.candidate.component_map(p);
  if (n < net_dim) fp = conjugate_by_embedding(fp, n, net_dim);

  const AlphaExtraction alpha = extract_alpha(fp, n, p, k, t, sym);
  const double kd = static_cast<double>(k);
  const double identity_lhs = std::pow(2.0 * kd, 1.0 / p) * std::fabs(alpha.alpha);
  const double identity_rhs = std::pow(kd, 1.0 / p) * std::pow(2.0, 1.0 / p) * std::fabs(alpha.alpha);
  const double identity_gap = std::fabs(identity_lhs - identity_rhs);
  const bool identity_ok = identity_gap <= 1e-13 * (1.0 + identity_lhs);

  const RealVector ind_a = RealVector::indicator(n, 1, k, t);
  const RealVector ind_s = RealVector::indicator(n, 2, k + 1, t);
  const double arg_dist = l2_dist(ind_a, ind_s);  // exactly t*sqrt(2)
  const RealVector ga = symmetrize(fp, ind_a, sym);
  const RealVector gs = symmetrize(fp, ind_s, sym);
  const double dist_shift = lq_dist(ga, gs, norm_p);

  const double omega_step = ctx.omega.query(std::sqrt(2.0) * t);

  InequalityReport rep;
  rep.name = "shift_bound";
  rep.mode = sym.mode == SymmetrizeConfig::Mode::exact ? "exact" : "sampled";
  rep.lhs = std::pow(kd, 1.0 / p) * dist_shift;
  rep.rhs = std::pow(kd, 1.0 / p) * omega_step * ctx.slack;
  rep.holds = leq_with_fp_slack(rep.lhs, rep.rhs) && identity_ok;
  rep.inputs = {{"n", n},
                {"p", p},
                {"k", k},
                {"t", t},
                {"alpha", alpha.alpha},
                {"identity_lhs", identity_lhs},
                {"identity_rhs", identity_rhs},
                {"identity_ok", identity_ok},
                {"argument_distance", arg_dist},
                {"argument_distance_expected", t * std::sqrt(2.0)},
                {"dist_shift", dist_shift},
                {"omega_sqrt2t", omega_step},
                {"slack", ctx.slack},
                {"candidate", ctx.candidate.name}};
  return rep;
}

InequalityReport check_omega_constraint_values(double omega_sqrt2t, double omega_1, double gamma,
                                               int p, std::size_t k, double t, double slack) {
  if (p < 2) throw InvalidInput("omega constraint: p >= 2");
  if (k < 1) throw InvalidInput("omega constraint: k >= 1");
  if (!(t > 0.0)) throw InvalidInput("omega constraint: t > 0");
  const double kd = static_cast<double>(k);
  InequalityReport rep;
  rep.name = "omega_constraint";
  rep.mode = "analytic";
  rep.lhs = std::pow(t, 2.0 / p) * std::pow(2.0 * kd, 1.0 / p);
  rep.rhs = std::pow(kd, 1.0 / p) * omega_sqrt2t * slack + 2.0 * omega_1 * slack + 2.0 * gamma + 4.0;
  rep.holds = leq_with_fp_slack(rep.lhs, rep.rhs);
  rep.inputs = {{"p", p},
                {"k", k},
                {"t", t},
                {"omega_sqrt2t", omega_sqrt2t},
                {"omega_1", omega_1},
                {"gamma", gamma},
                {"slack", slack}};
  return rep;
}

InequalityReport check_omega_constraint(const VerifierContext& ctx, int p, std::size_t k, double t) {
  InequalityReport rep = check_omega_constraint_values(ctx.omega.query(std::sqrt(2.0) * t),
                                                       ctx.omega.query(1.0), ctx.gamma.value, p, k,
                                                       t, ctx.slack);
  rep.inputs["candidate"] = ctx.candidate.name;
  if (!rep.holds && ctx.candidate.claims_uniformly_continuous &&
      std::isfinite(ctx.gamma.value)) {
    rep.inputs["theorem_consistent_rejection"] = true;
    rep.inputs["note"] =
        "failure for a uniformly continuous candidate with finite gamma is evidence the "
        "candidate cannot extend f, as the impossibility theorem requires";
  }
  return rep;
}

int contradiction_choose_p(double t) {
  if (!(t > 0.0 && t < kContradictionTMax))
    throw InvalidInput("contradiction: t must lie in (0, 1/(sqrt(2) e^2))");
  const double L = std::log(1.0 / (2.0 * t * t));
  const double snapped = std::round(L);
  double effective = L;
  if (std::fabs(L - snapped) < 1e-9) effective = snapped;
  const int p = static_cast<int>(std::ceil(effective));
  return p < 2 ? 2 : p;
}

double contradiction_implied_floor(double t) {
  const int p = contradiction_choose_p(t);
  return std::pow(2.0 * t * t, 1.0 / p) / 2.0;
}

io::json ContradictionReport::to_json() const {
  io::json j;
  j["t"] = t;
  j["p"] = p;
  j["omega_1"] = omega_1;
  j["omega_sqrt2t"] = omega_sqrt2t;
  j["gamma"] = gamma;
  io::json analytic;
  analytic["k_infinite"] = k_infinite;
  analytic["k_base"] = k_base;
  analytic["k_exponent"] = k_exponent;
  analytic["k_log10"] = k_log10;
  analytic["k_overflow"] = k_overflow;
  analytic["k_value"] = k_value;
  analytic["implied_floor"] = implied_floor;
  analytic["floor_constant_1_over_2e"] = kOmegaFloor;
  analytic["floor_holds"] = floor_holds;
  analytic["omega_meets_floor"] = omega_meets_floor;
  j["analytic"] = analytic;
  io::json feasible;
  feasible["ran"] = feasible_ran;
  if (feasible_ran) {
    feasible["n"] = feasible_n;
    feasible["k"] = feasible_k;
    io::json checks = io::json::array();
    for (const auto& r : feasible_checks) checks.push_back(r.to_json());
    feasible["checks"] = checks;
  }
  j["feasible"] = feasible;
  j["notes"] = notes;
  return j;
}

ContradictionReport contradiction_pipeline(const VerifierContext& ctx, double t,
                                           const ContradictionOptions& opts) {
  ContradictionReport rep;
  rep.t = t;
  rep.p = contradiction_choose_p(t);  // validates the t range
  rep.omega_1 = ctx.omega.query(1.0);
  rep.omega_sqrt2t = ctx.omega.query(std::sqrt(2.0) * t);
  rep.gamma = ctx.gamma.value;

  const double L = std::log(1.0 / (2.0 * t * t));
  const double numerator = 2.0 * rep.omega_1 + 2.0 * rep.gamma + 4.0;
  rep.k_exponent = 2.0 * L;
  if (rep.omega_sqrt2t == 0.0) {
    rep.k_infinite = true;
    rep.k_overflow = true;
    if (ctx.candidate.claims_extends_f && rep.gamma == 0.0) {
      rep.notes +=
          "inconsistent measurement: omega_hat(sqrt(2) t) = 0 with gamma = 0 for a candidate "
          "claiming to extend f; at infinite truncation no such F exists, at finite truncation "
          "this indicates truncation effects or undersampling; ";
    } else {
      rep.notes += "omega_hat(sqrt(2) t) = 0: the analytic k is infinite and gamma must carry "
                   "the omega constraint; ";
    }
  } else {
    rep.k_base = numerator / rep.omega_sqrt2t;
    if (rep.k_base <= 1.0) {
      rep.k_log10 = 0.0;
      rep.k_value = 1.0;
    } else {
      rep.k_log10 = rep.k_exponent * std::log10(rep.k_base);
      if (rep.k_log10 < 15.0) {
        rep.k_value = std::ceil(std::pow(rep.k_base, rep.k_exponent));
      } else {
        rep.k_overflow = true;
      }
    }
  }
  rep.implied_floor = contradiction_implied_floor(t);
  rep.floor_holds = rep.implied_floor >= kOmegaFloor - 1e-12;
  rep.omega_meets_floor = rep.omega_sqrt2t >= rep.implied_floor;
  rep.notes += "analytic mode: p, k and the implied floor come from the choice formulas with "
               "measured omega_hat (a lower bound of the true modulus); ";

  if (opts.run_feasible) {
    rep.feasible_ran = true;
    rep.feasible_n = opts.feasible_n;
    rep.feasible_k = (opts.feasible_n + 1) / 2;
    SymmetrizeConfig sym;
    sym.mode = SymmetrizeConfig::Mode::exact;
    sym.exact_budget = opts.exact_budget;
    rep.feasible_checks.push_back(
        check_indicator_chain(ctx, rep.feasible_n, rep.p, rep.feasible_k, t, sym));
    rep.feasible_checks.push_back(
        check_shift_bound(ctx, rep.feasible_n, rep.p, rep.feasible_k, t, sym));
    rep.feasible_checks.push_back(check_omega_constraint(ctx, rep.p, rep.feasible_k, t));
    rep.notes += "feasible mode: k clamped to (n+1)/2 and n to a runnable size, with exact "
                 "symmetrization; ";
  }
  return rep;
}

void write_reports_json(const std::vector<InequalityReport>& reports, const std::string& path,
                        const io::json& meta) {
  io::json j;
  j["meta"] = meta;
  io::json arr = io::json::array();
  for (const auto& r : reports) arr.push_back(r.to_json());
  j["reports"] = arr;
  io::write_json_file(path, j);
}

void write_reports_csv(const std::vector<InequalityReport>& reports, const std::string& path) {
  io::CsvWriter csv(path);
  std::vector<std::string> header;
  for (const char* h : kReportCsvHeader) header.push_back(h);
  csv.row(header);
  for (const auto& r : reports) csv.row(r.csv_fields());
  csv.close();
}

}  // namespace netext
