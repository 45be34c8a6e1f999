#include "netext/symmetrize.hpp"

#include <cmath>

#include "netext/errors.hpp"
#include "netext/kernels.hpp"

namespace netext {
namespace {

RealVector call_checked(const VectorMap& F, const RealVector& x) {
  RealVector y = F(x);
  if (y.dim() != x.dim()) throw ContractViolation("symmetrize: F returned wrong dimension");
  if (!y.all_finite()) throw ContractViolation("symmetrize: F returned non-finite values");
  return y;
}

}  // namespace

SymmetrizeResult symmetrize_full(const VectorMap& F, const RealVector& x, const SymmetrizeConfig& cfg) {
  const std::size_t n = x.dim();
  if (n == 0) throw InvalidInput("symmetrize: empty vector");
  if (!x.all_finite()) throw InvalidInput("symmetrize: non-finite input");
  SymmetrizeResult result;

  std::vector<double> gx(n), term(n);
  const auto& ops = kernels::active();

  if (cfg.mode == SymmetrizeConfig::Mode::exact) {
    const std::uint64_t order = hyperoctahedral_order(n);
    if (order > cfg.exact_budget)
      throw ResourceLimit("symmetrize: exact group order " + std::to_string(order) +
                          " exceeds budget " + std::to_string(cfg.exact_budget));
    // compensated accumulation in the fixed enumeration order
    std::vector<double> sum(n, 0.0), comp(n, 0.0);
    for (GroupEnumerator en(n); !en.done(); en.advance()) {
      const auto& gather = en.gather();
      const std::uint64_t mask = en.sign_mask();
      for (std::size_t i = 0; i < n; ++i) {
        const double v = x[gather[i]];
        gx[i] = ((mask >> i) & 1) ? -v : v;
      }
      const RealVector y = call_checked(F, RealVector(gx));
      for (std::size_t i = 0; i < n; ++i) {
        const double v = y[i];
        term[gather[i]] = ((mask >> i) & 1) ? -v : v;
      }
      ops.kahan_add(sum.data(), comp.data(), term.data(), n);
    }
    std::vector<double> avg(n);
    const double inv = 1.0 / static_cast<double>(order);
    for (std::size_t i = 0; i < n; ++i) avg[i] = (sum[i] + comp[i]) * inv;
    result.value = RealVector(std::move(avg));
    result.terms = order;
    return result;
  }

  if (cfg.sample_count == 0) throw InvalidInput("symmetrize: sample_count must be positive");
  // one shared stream of group elements per call
  RngStream stream = derive_stream(cfg.seed, "symmetrize-sample", n);
  std::vector<double> mean(n, 0.0), m2(n, 0.0);
  for (std::uint64_t s = 0; s < cfg.sample_count; ++s) {
    const SignedPermutation g = SignedPermutation::random(n, stream);
    const auto& gather = g.gather();
    const auto& signs = g.signs();
    for (std::size_t i = 0; i < n; ++i) gx[i] = signs[i] * x[gather[i]];
    const RealVector y = call_checked(F, RealVector(gx));
    for (std::size_t i = 0; i < n; ++i) term[gather[i]] = signs[i] * y[i];
    const double inv = 1.0 / static_cast<double>(s + 1);
    for (std::size_t i = 0; i < n; ++i) {
      const double delta = term[i] - mean[i];
      mean[i] += delta * inv;
      m2[i] += delta * (term[i] - mean[i]);
    }
  }
  std::vector<double> se(n, 0.0);
  if (cfg.sample_count > 1) {
    const double denom = static_cast<double>(cfg.sample_count) * static_cast<double>(cfg.sample_count - 1);
    for (std::size_t i = 0; i < n; ++i) se[i] = std::sqrt(m2[i] / denom);
  }
  result.value = RealVector(std::move(mean));
  result.std_error = RealVector(std::move(se));
  result.terms = cfg.sample_count;
  return result;
}

RealVector symmetrize(const VectorMap& F, const RealVector& x, const SymmetrizeConfig& cfg) {
  return symmetrize_full(F, x, cfg).value;
}

double verify_equivariance(const VectorMap& F, std::size_t n, int p, const SymmetrizeConfig& cfg,
                           std::uint64_t trials, std::uint64_t seed) {
  if (cfg.mode != SymmetrizeConfig::Mode::exact)
    throw InvalidInput("verify_equivariance: exact mode required");
  RngStream stream = derive_stream(seed, "equivariance", n, static_cast<std::uint64_t>(p));
  const NormExponent norm_p(p);
  double worst = 0.0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    const RealVector x(stream.in_ball(n, 2.0));
    const SignedPermutation g = SignedPermutation::random(n, stream);
    const RealVector lhs = symmetrize(F, g.apply(x), cfg);
    const RealVector gx = symmetrize(F, x, cfg);
    const RealVector rhs = g.apply(gx);
    const double dev = lq_dist(lhs, rhs, norm_p) / (1.0 + lq_norm(gx, norm_p));
    if (dev > worst) worst = dev;
  }
  return worst;
}

AlphaExtraction extract_alpha(const VectorMap& F, std::size_t n, int p, std::size_t k, double t,
                              const SymmetrizeConfig& cfg) {
  if (k < 1 || k > n) throw InvalidInput("extract_alpha: k out of range");
  const NormExponent norm_p(p);
  AlphaExtraction out;

  const RealVector ga = symmetrize(F, RealVector::indicator(n, 1, k, t), cfg);
  double mean = 0.0;
  for (std::size_t i = 0; i < k; ++i) mean += ga[i];
  mean /= static_cast<double>(k);
  out.alpha = mean;

  std::vector<double> off;
  for (std::size_t i = k; i < n; ++i) off.push_back(ga[i]);
  out.off_support_residual = lq_norm(RealVector(std::move(off)), norm_p);
  for (std::size_t i = 0; i < k; ++i)
    out.support_variation = std::max(out.support_variation, std::fabs(ga[i] - mean));

  // second set of the same cardinality: B = {n-k+1..n}
  const RealVector gb = symmetrize(F, RealVector::indicator(n, n - k + 1, n, t), cfg);
  double mean_b = 0.0;
  for (std::size_t i = n - k; i < n; ++i) mean_b += gb[i];
  mean_b /= static_cast<double>(k);
  out.alpha_second_set_diff = std::fabs(mean - mean_b);
  return out;
}

VectorMap conjugate_by_embedding(const VectorMap& F, std::size_t inner_dim, std::size_t outer_dim) {
  if (outer_dim < inner_dim) throw InvalidInput("conjugate_by_embedding: outer_dim < inner_dim");
  return [F, inner_dim, outer_dim](const RealVector& x) {
    return canonical_project(F(canonical_embed(x, outer_dim)), inner_dim);
  };
}

}  // namespace netext
