#pragma once

// The hyperoctahedral averaging operator: G(x) is the mean of g^{-1} F(g x)
// over all signed permutations g (exact mode) or over a seeded sample of them
// (sampled mode). Averaging over isometries preserves the modulus of
// continuity of F, forces equivariance, and collapses scaled indicators to
// scaled indicators.

#include <cstdint>
#include <functional>

#include "netext/signed_perm.hpp"
#include "netext/spaces.hpp"

namespace netext {

using VectorMap = std::function<RealVector(const RealVector&)>;

struct SymmetrizeConfig {
  enum class Mode { exact, sampled };
  Mode mode = Mode::exact;
  std::uint64_t sample_count = 100000;        // sampled mode
  std::uint64_t seed = 0;                     // sampled mode stream seed
  std::uint64_t exact_budget = 10'000'000;    // max group elements in exact mode
};

struct SymmetrizeResult {
  RealVector value;
  RealVector std_error;    // per-coordinate standard error (sampled mode only)
  std::uint64_t terms = 0; // group elements averaged
};

SymmetrizeResult symmetrize_full(const VectorMap& F, const RealVector& x, const SymmetrizeConfig& cfg);
RealVector symmetrize(const VectorMap& F, const RealVector& x, const SymmetrizeConfig& cfg);

// max over trials of ||G(g x) - g G(x)||_p / (1 + ||G(x)||_p) for random x
// and g; exact mode only
double verify_equivariance(const VectorMap& F, std::size_t n, int p, const SymmetrizeConfig& cfg,
                           std::uint64_t trials, std::uint64_t seed);

struct AlphaExtraction {
  double alpha = 0.0;                  // mean of G(t*1_A) on the support A = {1..k}
  double off_support_residual = 0.0;   // l_p norm of G(t*1_A) off the support
  double support_variation = 0.0;      // max |coordinate - alpha| on the support
  double alpha_second_set_diff = 0.0;  // |alpha_A - alpha_B| for B = {n-k+1..n}
};

AlphaExtraction extract_alpha(const VectorMap& F, std::size_t n, int p, std::size_t k, double t,
                              const SymmetrizeConfig& cfg);

// Q_N . F . J_N wrapper for evaluating a map defined on a larger dimension
VectorMap conjugate_by_embedding(const VectorMap& F, std::size_t inner_dim, std::size_t outer_dim);

}  // namespace netext
