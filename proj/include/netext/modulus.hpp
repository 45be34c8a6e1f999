#pragma once

// Empirical moduli of uniform continuity, the net sup-distance gamma, and
// Hoelder constants. All estimates are maxima over sampled pairs, hence
// certified lower bounds of the true quantities; consumers add a slack factor
// on the side where a lower bound is unsafe.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "netext/net.hpp"
#include "netext/spaces.hpp"
#include "netext/symmetrize.hpp"

namespace netext {

using ProductMap = std::function<ProductPoint(const ProductPoint&)>;

struct ModulusWitness {
  double scale = 0.0;
  double value = 0.0;
  int component_p = -1;  // displaced component (product maps), -1 for plain vector maps
  std::vector<double> base;       // flattened pair achieving the estimate
  std::vector<double> displaced;  // (p ascending, coordinates in index order)
};

class ModulusTable {
 public:
  ModulusTable() = default;
  ModulusTable(std::vector<double> scales, std::vector<double> raw_estimates,
               std::vector<ModulusWitness> witnesses, std::uint64_t samples_per_scale,
               std::uint64_t seed);

  const std::vector<double>& scales() const { return scales_; }
  const std::vector<double>& estimates() const { return estimates_; }
  const std::vector<ModulusWitness>& witnesses() const { return witnesses_; }
  std::uint64_t samples_per_scale() const { return samples_per_scale_; }
  std::uint64_t seed() const { return seed_; }

  // right-continuous step interpolation on the monotone envelope; the scale
  // must lie within [scales.front(), scales.back()]
  double query(double s) const;

  static ModulusTable pointwise_max(const std::vector<ModulusTable>& tables);

 private:
  std::vector<double> scales_;
  std::vector<double> estimates_;  // after the monotone envelope pass
  std::vector<ModulusWitness> witnesses_;
  std::uint64_t samples_per_scale_ = 0;
  std::uint64_t seed_ = 0;
};

std::vector<double> default_scale_grid();  // geometric, 24 points, 1e-3 .. 2

inline constexpr double kDefaultSampleRadius = 3.0;

// modulus of a map R^n -> R^n with l_2 displacements of exact size s and the
// output measured in the given norm; includes the documented witness family
// (0, s*e_1) at every scale
ModulusTable estimate_modulus(const VectorMap& F, std::size_t dim, const NormExponent& out_norm,
                              const std::vector<double>& scales, std::uint64_t samples_per_scale,
                              std::uint64_t seed, double sample_radius = kDefaultSampleRadius);

// modulus of a product map: per-component estimates (component p displaced on
// the l_2 sphere of radius s, image change measured in the Y sup metric),
// combined by pointwise max. Component sample streams are keyed by (seed, p,
// scale) only, so enlarging P can never decrease the estimate.
ModulusTable estimate_modulus_product(const ProductMap& F, const ProductShape& shape,
                                      const std::vector<double>& scales,
                                      std::uint64_t samples_per_scale, std::uint64_t seed,
                                      double sample_radius = kDefaultSampleRadius);

struct GammaEstimate {
  double value = 0.0;
  ProductNet::Indices argmax;
  std::uint64_t samples = 0;
};

// max over sampled product-net points x of ||F(x) - f(x)||_Y
GammaEstimate estimate_gamma(const ProductMap& F, const ProductNet& net, std::uint64_t samples,
                             std::uint64_t seed);

// max over sampled product-net pairs of ||F(x)-F(y)||_Y / d_X(x,y)^alpha
double estimate_holder_constant(const ProductMap& F, const ProductNet& net, double alpha,
                                std::uint64_t pairs, std::uint64_t seed);

// CSV: scale, omega_hat, samples, witness-as-JSON-string
void write_modulus_csv(const ModulusTable& table, const std::string& path);

}  // namespace netext
