#pragma once

// The Mazur map M_p (coordinatewise |x|^(2/p)*sign(x)), its inverse, and the
// two quantitative bounds that make the net function Lipschitz:
//   scalar:  ||u|^(2/p)sgn(u) - |v|^(2/p)sgn(v)|^p <= 2^(p-2) |u-v|^2
//   vector:  ||M_p x - M_p y||_p <= 2^(1-2/p) ||x-y||_2^(2/p)

#include "netext/spaces.hpp"

namespace netext {

// |x|^e * sign(x); magnitudes below 1e-300 collapse to 0 so sign(0) == 0 and
// denormals cannot leak spurious signs through fractional powers
double signed_pow(double x, double e);

RealVector mazur(const RealVector& v, int p);
RealVector mazur_inverse(const RealVector& w, int p);

struct BoundCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;  // lhs <= rhs * (1 + 1e-12)
};

BoundCheck verify_scalar_bound(double u, double v, int p);
BoundCheck verify_holder_bound(const RealVector& x, const RealVector& y, int p);

}  // namespace netext
