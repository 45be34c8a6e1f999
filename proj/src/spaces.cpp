#include "netext/spaces.hpp"

#include <cmath>

#include "netext/kernels.hpp"

namespace netext {

RealVector RealVector::unit(std::size_t dim, std::size_t axis, double scale) {
  if (axis >= dim) throw InvalidInput("unit vector axis out of range");
  RealVector v = zeros(dim);
  v[axis] = scale;
  return v;
}

RealVector RealVector::indicator(std::size_t dim, std::size_t first, std::size_t last, double t) {
  if (first < 1 || last > dim || first > last) throw InvalidInput("bad indicator index range");
  RealVector v = zeros(dim);
  for (std::size_t i = first; i <= last; ++i) v[i - 1] = t;
  return v;
}

bool RealVector::all_finite() const {
  for (const double x : c_)
    if (!std::isfinite(x)) return false;
  return true;
}

RealVector operator-(const RealVector& a, const RealVector& b) {
  if (a.dim() != b.dim()) throw InvalidInput("vector dimension mismatch");
  std::vector<double> out(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) out[i] = a[i] - b[i];
  return RealVector(std::move(out));
}

RealVector operator+(const RealVector& a, const RealVector& b) {
  if (a.dim() != b.dim()) throw InvalidInput("vector dimension mismatch");
  std::vector<double> out(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) out[i] = a[i] + b[i];
  return RealVector(std::move(out));
}

RealVector operator*(double s, const RealVector& v) {
  std::vector<double> out(v.dim());
  for (std::size_t i = 0; i < v.dim(); ++i) out[i] = s * v[i];
  return RealVector(std::move(out));
}

double lq_norm(const RealVector& v, const NormExponent& q) {
  if (!v.all_finite()) throw InvalidInput("lq_norm: non-finite coordinate");
  const double qq = q.value();
  if (qq == 2.0) return std::sqrt(kernels::active().sum_sq(v.data(), v.dim()));
  if (v.dim() == 0) return 0.0;
  return std::pow(kernels::sum_abs_pow(v.data(), v.dim(), qq), 1.0 / qq);
}

double l2_norm(const RealVector& v) {
  if (!v.all_finite()) throw InvalidInput("l2_norm: non-finite coordinate");
  return std::sqrt(kernels::active().sum_sq(v.data(), v.dim()));
}

double l2_dist(const RealVector& a, const RealVector& b) {
  if (a.dim() != b.dim()) throw InvalidInput("l2_dist: dimension mismatch");
  return std::sqrt(kernels::active().sq_dist(a.data(), b.data(), a.dim()));
}

double lq_dist(const RealVector& a, const RealVector& b, const NormExponent& q) {
  if (a.dim() != b.dim()) throw InvalidInput("lq_dist: dimension mismatch");
  if (q.value() == 2.0) return l2_dist(a, b);
  return lq_norm(a - b, q);
}

RealVector canonical_embed(const RealVector& v, std::size_t target_dim) {
  if (target_dim < v.dim()) throw InvalidInput("canonical_embed: target_dim < dim");
  std::vector<double> out(target_dim, 0.0);
  for (std::size_t i = 0; i < v.dim(); ++i) out[i] = v[i];
  return RealVector(std::move(out));
}

RealVector canonical_project(const RealVector& v, std::size_t target_dim) {
  if (target_dim > v.dim()) throw InvalidInput("canonical_project: target_dim > dim");
  std::vector<double> out(v.data(), v.data() + target_dim);
  return RealVector(std::move(out));
}

void ProductShape::validate() const {
  if (p0 < 2) throw InvalidInput("product shape: p0 must be >= 2");
  if (p_max < p0) throw InvalidInput("product shape: P must be >= p0");
}

ProductPoint::ProductPoint(ProductShape shape, std::vector<RealVector> components)
    : shape_(shape), comps_(std::move(components)) {
  shape_.validate();
  if (comps_.size() != static_cast<std::size_t>(shape_.count()))
    throw InvalidInput("product point: wrong number of components");
  for (const auto& c : comps_)
    if (c.dim() != shape_.component_dim) throw InvalidInput("product point: component dim mismatch");
}

ProductPoint ProductPoint::zeros(const ProductShape& shape) {
  shape.validate();
  return ProductPoint(shape, std::vector<RealVector>(shape.count(), RealVector::zeros(shape.component_dim)));
}

const RealVector& ProductPoint::component(int p) const {
  if (p < shape_.p0 || p > shape_.p_max) throw InvalidInput("product point: exponent index out of range");
  return comps_[static_cast<std::size_t>(p - shape_.p0)];
}

RealVector& ProductPoint::component(int p) {
  if (p < shape_.p0 || p > shape_.p_max) throw InvalidInput("product point: exponent index out of range");
  return comps_[static_cast<std::size_t>(p - shape_.p0)];
}

double sup_product_distance(const ProductPoint& a, const ProductPoint& b, ProductSide side) {
  if (a.shape() != b.shape()) throw InvalidInput("sup_product_distance: shape mismatch");
  double worst = 0.0;
  for (int p = a.p0(); p <= a.p_max(); ++p) {
    const double d = (side == ProductSide::domain)
                         ? l2_dist(a.component(p), b.component(p))
                         : lq_dist(a.component(p), b.component(p), NormExponent(p));
    if (d > worst) worst = d;
  }
  return worst;
}

}  // namespace netext
