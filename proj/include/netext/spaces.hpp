#pragma once

// Finite-dimensional vectors with l_q norms, and sup-metrized product points
// indexed by an integer exponent range p0..P. These are the carriers for every
// other module.

#include <cstdint>
#include <span>
#include <vector>

#include "netext/errors.hpp"

namespace netext {

class RealVector {
 public:
  RealVector() = default;
  explicit RealVector(std::vector<double> coords) : c_(std::move(coords)) {}
  static RealVector zeros(std::size_t dim) { return RealVector(std::vector<double>(dim, 0.0)); }
  static RealVector unit(std::size_t dim, std::size_t axis, double scale = 1.0);
  // indicator of {first..last} (1-based, inclusive) scaled by t
  static RealVector indicator(std::size_t dim, std::size_t first, std::size_t last, double t = 1.0);

  std::size_t dim() const { return c_.size(); }
  double operator[](std::size_t i) const { return c_[i]; }
  double& operator[](std::size_t i) { return c_[i]; }
  const double* data() const { return c_.data(); }
  double* data() { return c_.data(); }
  std::span<const double> span() const { return {c_.data(), c_.size()}; }
  const std::vector<double>& coords() const { return c_; }

  bool all_finite() const;
  bool operator==(const RealVector& o) const { return c_ == o.c_; }

 private:
  std::vector<double> c_;
};

RealVector operator-(const RealVector& a, const RealVector& b);
RealVector operator+(const RealVector& a, const RealVector& b);
RealVector operator*(double s, const RealVector& v);

// norm exponent q >= 1; the Mazur index p is an integer >= 2 but norms are
// evaluated with arbitrary real exponents
class NormExponent {
 public:
  explicit NormExponent(double q) : q_(q) {
    if (!(q >= 1.0)) throw InvalidInput("norm exponent must be >= 1");
  }
  double value() const { return q_; }

 private:
  double q_;
};

inline const NormExponent kL2{2.0};

// (sum_j |v_j|^q)^(1/q); rejects non-finite coordinates
double lq_norm(const RealVector& v, const NormExponent& q);
double l2_norm(const RealVector& v);
double l2_dist(const RealVector& a, const RealVector& b);
double lq_dist(const RealVector& a, const RealVector& b, const NormExponent& q);

// zero-pad to target_dim >= v.dim (the canonical embedding)
RealVector canonical_embed(const RealVector& v, std::size_t target_dim);
// keep the first target_dim <= v.dim coordinates (the canonical projection)
RealVector canonical_project(const RealVector& v, std::size_t target_dim);

struct ProductShape {
  int p0 = 2;       // first exponent index, >= 2
  int p_max = 2;    // last exponent index P >= p0
  std::size_t component_dim = 1;

  int count() const { return p_max - p0 + 1; }
  void validate() const;
  bool operator==(const ProductShape&) const = default;
};

// one vector per exponent p in {p0..P}, all of the same dimension
class ProductPoint {
 public:
  ProductPoint() = default;
  ProductPoint(ProductShape shape, std::vector<RealVector> components);
  static ProductPoint zeros(const ProductShape& shape);

  const ProductShape& shape() const { return shape_; }
  int p0() const { return shape_.p0; }
  int p_max() const { return shape_.p_max; }
  std::size_t component_dim() const { return shape_.component_dim; }

  const RealVector& component(int p) const;
  RealVector& component(int p);
  const std::vector<RealVector>& components() const { return comps_; }

 private:
  ProductShape shape_;
  std::vector<RealVector> comps_;
};

enum class ProductSide {
  domain,  // X-side: every component measured in l_2
  range,   // Y-side: component p measured in l_p
};

// max over p of the component distance (l_2 for the domain side, l_p for the
// range side)
double sup_product_distance(const ProductPoint& a, const ProductPoint& b, ProductSide side);

}  // namespace netext
