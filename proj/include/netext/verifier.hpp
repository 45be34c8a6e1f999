#pragma once

// Numerical verification of the inequality chain: transfer of the
// gamma-closeness from the net to the whole ball, symmetrized transfer,
// the indicator triangle chain, the shift bound, the omega constraint
//   t^(2/p) (2k)^(1/p) <= k^(1/p) w(sqrt(2) t) + 2 w(1) + 2 gamma + 4,
// and the contradiction pipeline with p = ceil(ln(1/(2t^2))) ending in the
// 1/(2e) floor.
//
// Empirical moduli enter right-hand sides multiplied by a slack factor
// (default 1.1) because they are lower bounds of the true modulus; a check
// that still fails is a strong signal, a check that holds is conservative.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "netext/extensions.hpp"
#include "netext/io.hpp"
#include "netext/modulus.hpp"
#include "netext/symmetrize.hpp"

namespace netext {

extern const double kContradictionTMax;  // 1/(sqrt(2) e^2)
extern const double kOmegaFloor;         // 1/(2e)

struct InequalityReport {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;  // lhs <= rhs * (1 + 1e-12)
  std::string mode;    // "sampled-sup", "exact", "analytic", ...
  io::json inputs = io::json::object();
  io::json witness = io::json::object();

  io::json to_json() const;
  std::vector<std::string> csv_fields() const;
};

inline constexpr const char* kReportCsvHeader[] = {"check", "n", "p", "k", "t",
                                                   "lhs",   "rhs", "holds", "mode"};

struct VerifierContext {
  ExtensionCandidate candidate;
  std::shared_ptr<const ProductNet> net;
  ModulusTable omega;   // product-level modulus table for the candidate
  GammaEstimate gamma;  // measured against f on sampled net points
  double slack = 1.1;
  std::uint64_t seed = 0;
};

struct VerifierEstimateOptions {
  std::vector<double> scales = default_scale_grid();
  std::uint64_t modulus_samples = 128;
  std::uint64_t gamma_samples = 2048;
  double sample_radius = kDefaultSampleRadius;
  double slack = 1.1;
};

VerifierContext make_verifier_context(ExtensionCandidate candidate,
                                      std::shared_ptr<const ProductNet> net,
                                      const VerifierEstimateOptions& opts, std::uint64_t seed);

// sup_x ||F_p(x) - M_p(x)||_p <= w(1) + gamma + 2 over the component ball
InequalityReport check_transfer_bound(const VerifierContext& ctx, int p, std::uint64_t samples);

// same bound for the symmetrized operator G (exact mode); n_eval <= component
// dimension selects the symmetrization dimension, conjugating F_p through the
// canonical embedding when n_eval is smaller
InequalityReport check_symmetrized_transfer(const VerifierContext& ctx, int p, std::size_t n_eval,
                                            std::uint64_t samples, const SymmetrizeConfig& sym);

// t^(2/p)(2k)^(1/p) <= ||G(t 1_B) - G(t 1_A)||_p + 2 w(1) + 2 gamma + 4 with
// A = {1..k}, B = {n-k+1..n}; requires 2k <= n+1. The left side is evaluated
// numerically as ||t^(2/p)(1_B - 1_A)||_p, which equals the closed form
// whenever A and B are disjoint (2k <= n).
InequalityReport check_indicator_chain(const VerifierContext& ctx, std::size_t n, int p,
                                       std::size_t k, double t, const SymmetrizeConfig& sym);

// algebraic identity |a|(2k)^(1/p) = k^(1/p) |a| 2^(1/p) plus
// k^(1/p) ||G(t 1_{1..k}) - G(t 1_{2..k+1})||_p <= k^(1/p) w(sqrt(2) t);
// the two indicator arguments are at l_2 distance exactly t*sqrt(2)
InequalityReport check_shift_bound(const VerifierContext& ctx, std::size_t n, int p, std::size_t k,
                                   double t, const SymmetrizeConfig& sym);

InequalityReport check_omega_constraint(const VerifierContext& ctx, int p, std::size_t k, double t);

// closed-form variant for oracle tests: omega values supplied directly
InequalityReport check_omega_constraint_values(double omega_sqrt2t, double omega_1, double gamma,
                                               int p, std::size_t k, double t, double slack);

// p = ceil(ln(1/(2 t^2))), snapped to the integer when ln() lands within 1e-9
// of one so exact anchor points (2t^2 = e^-m) choose p = m
int contradiction_choose_p(double t);
// (2 t^2)^(1/p) / 2 with that p; >= 1/(2e) - 1e-12 for all valid t
double contradiction_implied_floor(double t);

struct ContradictionOptions {
  bool run_feasible = true;
  std::size_t feasible_n = 6;
  std::uint64_t exact_budget = 10'000'000;
};

struct ContradictionReport {
  double t = 0.0;
  int p = 2;
  double omega_1 = 0.0;
  double omega_sqrt2t = 0.0;
  double gamma = 0.0;

  // analytic mode: the paper's choice of k and the implied modulus floor
  bool k_infinite = false;  // omega_hat(sqrt(2) t) == 0
  double k_base = 0.0;      // (2 w(1) + 2 gamma + 4) / w(sqrt(2) t)
  double k_exponent = 0.0;  // 2 ln(1/(2 t^2))
  double k_log10 = 0.0;
  bool k_overflow = false;      // not representable as an exact integer ceiling
  double k_value = 0.0;         // exact ceiling when representable
  double implied_floor = 0.0;   // (2 t^2)^(1/p) / 2
  bool floor_holds = false;     // implied_floor >= 1/(2e) - 1e-12
  bool omega_meets_floor = false;

  // feasible mode: clamped sizes run end-to-end with real symmetrization
  bool feasible_ran = false;
  std::size_t feasible_n = 0;
  std::size_t feasible_k = 0;
  std::vector<InequalityReport> feasible_checks;

  std::string notes;

  io::json to_json() const;
};

ContradictionReport contradiction_pipeline(const VerifierContext& ctx, double t,
                                           const ContradictionOptions& opts);

void write_reports_json(const std::vector<InequalityReport>& reports, const std::string& path,
                        const io::json& meta);
void write_reports_csv(const std::vector<InequalityReport>& reports, const std::string& path);

}  // namespace netext
