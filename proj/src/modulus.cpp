#include "netext/modulus.hpp"

#include <algorithm>
#include <cmath>

#include "netext/io.hpp"
#include "netext/mazur.hpp"

namespace netext {
namespace {

std::vector<double> flatten(const RealVector& v) { return v.coords(); }

std::vector<double> flatten(const ProductPoint& x) {
  std::vector<double> out;
  out.reserve(x.components().size() * x.component_dim());
  for (const auto& c : x.components()) out.insert(out.end(), c.coords().begin(), c.coords().end());
  return out;
}

ProductPoint call_checked(const ProductMap& F, const ProductPoint& x, const char* who) {
  ProductPoint y = F(x);
  if (!(y.shape() == x.shape())) throw ContractViolation(std::string(who) + ": map changed the product shape");
  for (const auto& c : y.components())
    if (!c.all_finite()) throw ContractViolation(std::string(who) + ": map returned non-finite values");
  return y;
}

}  // namespace

ModulusTable::ModulusTable(std::vector<double> scales, std::vector<double> raw_estimates,
                           std::vector<ModulusWitness> witnesses, std::uint64_t samples_per_scale,
                           std::uint64_t seed)
    : scales_(std::move(scales)),
      estimates_(std::move(raw_estimates)),
      witnesses_(std::move(witnesses)),
      samples_per_scale_(samples_per_scale),
      seed_(seed) {
  if (scales_.empty()) throw InvalidInput("modulus table: empty scale grid");
  if (scales_.size() != estimates_.size()) throw InvalidInput("modulus table: size mismatch");
  for (std::size_t i = 0; i < scales_.size(); ++i) {
    if (!(scales_[i] > 0.0)) throw InvalidInput("modulus table: scales must be positive");
    if (i > 0 && !(scales_[i] > scales_[i - 1]))
      throw InvalidInput("modulus table: scales must be strictly increasing");
  }
  // monotone envelope: a modulus is nondecreasing, so the running max of
  // per-scale lower bounds is still a lower bound
  for (std::size_t i = 1; i < estimates_.size(); ++i)
    estimates_[i] = std::max(estimates_[i], estimates_[i - 1]);
}

double ModulusTable::query(double s) const {
  if (!(s >= scales_.front() && s <= scales_.back()))
    throw InvalidInput("modulus table: scale " + std::to_string(s) + " outside table range");
  const auto it = std::upper_bound(scales_.begin(), scales_.end(), s);
  const std::size_t i = static_cast<std::size_t>(it - scales_.begin());
  return estimates_[i - 1];
}

ModulusTable ModulusTable::pointwise_max(const std::vector<ModulusTable>& tables) {
  if (tables.empty()) throw InvalidInput("pointwise_max: no tables");
  const auto& scales = tables.front().scales();
  std::vector<double> est(scales.size(), 0.0);
  std::vector<ModulusWitness> wit(scales.size());
  for (const auto& t : tables) {
    if (t.scales() != scales) throw InvalidInput("pointwise_max: scale grids differ");
    for (std::size_t i = 0; i < scales.size(); ++i) {
      if (t.estimates()[i] > est[i]) {
        est[i] = t.estimates()[i];
        wit[i] = t.witnesses()[i];
      }
    }
  }
  return ModulusTable(scales, std::move(est), std::move(wit), tables.front().samples_per_scale(),
                      tables.front().seed());
}

std::vector<double> default_scale_grid() {
  // spans the contradiction regime t < 1/(sqrt(2) e^2) and the s = 1 anchor
  const double lo = 1e-3, hi = 2.0;
  const std::size_t count = 24;
  std::vector<double> scales(count);
  for (std::size_t i = 0; i < count; ++i)
    scales[i] = lo * std::pow(hi / lo, static_cast<double>(i) / static_cast<double>(count - 1));
  scales.back() = hi;
  return scales;
}

ModulusTable estimate_modulus(const VectorMap& F, std::size_t dim, const NormExponent& out_norm,
                              const std::vector<double>& scales, std::uint64_t samples_per_scale,
                              std::uint64_t seed, double sample_radius) {
  if (dim == 0) throw InvalidInput("estimate_modulus: dim must be positive");
  std::vector<double> est(scales.size(), 0.0);
  std::vector<ModulusWitness> wit(scales.size());

  auto eval_pair = [&](const RealVector& x, const RealVector& y) {
    const RealVector fx = F(x);
    const RealVector fy = F(y);
    if (fx.dim() != fy.dim()) throw ContractViolation("estimate_modulus: inconsistent output dims");
    if (!fx.all_finite() || !fy.all_finite())
      throw ContractViolation("estimate_modulus: map returned non-finite values");
    return lq_dist(fx, fy, out_norm);
  };

  for (std::size_t si = 0; si < scales.size(); ++si) {
    const double s = scales[si];
    auto consider = [&](const RealVector& x, const RealVector& y) {
      const double v = eval_pair(x, y);
      if (v > est[si]) {
        est[si] = v;
        wit[si] = ModulusWitness{s, v, -1, flatten(x), flatten(y)};
      }
    };
    // documented witness family
    consider(RealVector::zeros(dim), RealVector::unit(dim, 0, s));
    RngStream stream = derive_stream(seed, "modulus-vec", si);
    for (std::uint64_t t = 0; t < samples_per_scale; ++t) {
      RealVector x(stream.in_ball(dim, sample_radius));
      const std::vector<double> dir = stream.unit_vector(dim);
      RealVector y = x;
      for (std::size_t j = 0; j < dim; ++j) y[j] += s * dir[j];
      consider(x, y);
    }
  }
  return ModulusTable(scales, std::move(est), std::move(wit), samples_per_scale, seed);
}

ModulusTable estimate_modulus_product(const ProductMap& F, const ProductShape& shape,
                                      const std::vector<double>& scales,
                                      std::uint64_t samples_per_scale, std::uint64_t seed,
                                      double sample_radius) {
  shape.validate();
  std::vector<ModulusTable> per_component;
  const std::size_t dim = shape.component_dim;
  for (int p = shape.p0; p <= shape.p_max; ++p) {
    std::vector<double> est(scales.size(), 0.0);
    std::vector<ModulusWitness> wit(scales.size());
    for (std::size_t si = 0; si < scales.size(); ++si) {
      const double s = scales[si];
      auto consider = [&](const ProductPoint& x, const ProductPoint& y) {
        const double v = sup_product_distance(call_checked(F, x, "estimate_modulus_product"),
                                              call_checked(F, y, "estimate_modulus_product"),
                                              ProductSide::range);
        if (v > est[si]) {
          est[si] = v;
          wit[si] = ModulusWitness{s, v, p, flatten(x), flatten(y)};
        }
      };
      {
        ProductPoint x = ProductPoint::zeros(shape);
        ProductPoint y = x;
        y.component(p) = RealVector::unit(dim, 0, s);
        consider(x, y);
      }
      // streams keyed by (p, scale) and not by P: growing the truncation can
      // only add components to the max
      RngStream stream = derive_stream(seed, "modulus-prod", static_cast<std::uint64_t>(p), si);
      for (std::uint64_t t = 0; t < samples_per_scale; ++t) {
        ProductPoint x(shape, [&] {
          std::vector<RealVector> comps;
          for (int q = shape.p0; q <= shape.p_max; ++q)
            comps.emplace_back(stream.in_ball(dim, sample_radius));
          return comps;
        }());
        const std::vector<double> dir = stream.unit_vector(dim);
        ProductPoint y = x;
        RealVector& moved = y.component(p);
        for (std::size_t j = 0; j < dim; ++j) moved[j] += s * dir[j];
        consider(x, y);
      }
    }
    per_component.emplace_back(scales, std::move(est), std::move(wit), samples_per_scale, seed);
  }
  return ModulusTable::pointwise_max(per_component);
}

GammaEstimate estimate_gamma(const ProductMap& F, const ProductNet& net, std::uint64_t samples,
                             std::uint64_t seed) {
  GammaEstimate out;
  out.samples = samples;
  RngStream stream = derive_stream(seed, "gamma");
  for (std::uint64_t i = 0; i < samples; ++i) {
    const ProductNet::Indices idx = net.sample(stream);
    const ProductPoint x = net.materialize(idx);
    const ProductPoint fx = net.net_f(idx);
    const double d = sup_product_distance(call_checked(F, x, "estimate_gamma"), fx, ProductSide::range);
    if (d > out.value) {
      out.value = d;
      out.argmax = idx;
    }
  }
  return out;
}

double estimate_holder_constant(const ProductMap& F, const ProductNet& net, double alpha,
                                std::uint64_t pairs, std::uint64_t seed) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw InvalidInput("estimate_holder_constant: alpha in (0,1]");
  RngStream stream = derive_stream(seed, "holder");
  double worst = 0.0;
  for (std::uint64_t i = 0; i < pairs; ++i) {
    const ProductNet::Indices a = net.sample(stream);
    const ProductNet::Indices b = net.sample(stream);
    const double d = net.sup_distance(a, b);
    if (d == 0.0) continue;  // coincident pair
    const double img = sup_product_distance(call_checked(F, net.materialize(a), "estimate_holder"),
                                            call_checked(F, net.materialize(b), "estimate_holder"),
                                            ProductSide::range);
    worst = std::max(worst, img / std::pow(d, alpha));
  }
  return worst;
}

void write_modulus_csv(const ModulusTable& table, const std::string& path) {
  io::CsvWriter csv(path);
  csv.row({"scale", "omega_hat", "samples", "witness"});
  for (std::size_t i = 0; i < table.scales().size(); ++i) {
    const ModulusWitness& w = table.witnesses()[i];
    io::json jw;
    jw["value"] = w.value;
    jw["component_p"] = w.component_p;
    jw["base"] = io::vector_to_json(w.base);
    jw["displaced"] = io::vector_to_json(w.displaced);
    csv.row({io::format_double(table.scales()[i]), io::format_double(table.estimates()[i]),
             std::to_string(table.samples_per_scale()), jw.dump()});
  }
  csv.close();
}

}  // namespace netext
