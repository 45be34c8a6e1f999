#include "netext/mazur.hpp"

#include <cmath>

namespace netext {
namespace {

constexpr double kRelSlack = 1e-12;

void require_exponent(int p) {
  if (p < 2) throw InvalidInput("mazur: exponent p must be an integer >= 2");
}

RealVector coordinatewise_signed_pow(const RealVector& v, double e) {
  std::vector<double> out(v.dim());
  for (std::size_t i = 0; i < v.dim(); ++i) out[i] = signed_pow(v[i], e);
  return RealVector(std::move(out));
}

}  // namespace

double signed_pow(double x, double e) {
  const double a = std::fabs(x);
  if (a < 1e-300) return 0.0;
  const double m = std::pow(a, e);
  return x < 0.0 ? -m : m;
}

RealVector mazur(const RealVector& v, int p) {
  require_exponent(p);
  if (!v.all_finite()) throw InvalidInput("mazur: non-finite coordinate");
  if (p == 2) return v;
  return coordinatewise_signed_pow(v, 2.0 / p);
}

RealVector mazur_inverse(const RealVector& w, int p) {
  require_exponent(p);
  if (!w.all_finite()) throw InvalidInput("mazur_inverse: non-finite coordinate");
  if (p == 2) return w;
  return coordinatewise_signed_pow(w, p / 2.0);
}

BoundCheck verify_scalar_bound(double u, double v, int p) {
  require_exponent(p);
  if (!std::isfinite(u) || !std::isfinite(v)) throw InvalidInput("verify_scalar_bound: non-finite input");
  BoundCheck r;
  const double d = std::fabs(signed_pow(u, 2.0 / p) - signed_pow(v, 2.0 / p));
  r.lhs = std::pow(d, static_cast<double>(p));
  r.rhs = std::pow(2.0, p - 2) * (u - v) * (u - v);
  r.holds = r.lhs <= r.rhs * (1.0 + kRelSlack);
  return r;
}

BoundCheck verify_holder_bound(const RealVector& x, const RealVector& y, int p) {
  require_exponent(p);
  if (x.dim() != y.dim()) throw InvalidInput("verify_holder_bound: dimension mismatch");
  BoundCheck r;
  r.lhs = lq_dist(mazur(x, p), mazur(y, p), NormExponent(p));
  r.rhs = std::pow(2.0, 1.0 - 2.0 / p) * std::pow(l2_dist(x, y), 2.0 / p);
  r.holds = r.lhs <= r.rhs * (1.0 + kRelSlack);
  return r;
}

}  // namespace netext
