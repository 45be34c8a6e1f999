#include "netext/kernels.hpp"

#include <cmath>

namespace netext::kernels {
namespace {

double sum_sq_scalar(const double* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * x[i];
  return s;
}

double sq_dist_scalar(const double* x, const double* y, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = x[i] - y[i];
    s += d * d;
  }
  return s;
}

double sq_dist_i8_scalar(const double* q2, const int8_t* u, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = q2[i] - static_cast<double>(u[i]);
    s += d * d;
  }
  return 0.25 * s;
}

double max_abs_diff_scalar(const double* x, const double* y, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = std::fabs(x[i] - y[i]);
    if (d > m) m = d;
  }
  return m;
}

void kahan_add_scalar(double* sum, double* comp, const double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double s = sum[i];
    const double v = x[i];
    const double t = s + v;
    if (std::fabs(s) >= std::fabs(v))
      comp[i] += (s - t) + v;
    else
      comp[i] += (v - t) + s;
    sum[i] = t;
  }
}

}  // namespace

namespace detail {
const Ops scalar_ops = {
    sum_sq_scalar, sq_dist_scalar, sq_dist_i8_scalar, max_abs_diff_scalar, kahan_add_scalar,
};
}  // namespace detail

double sum_abs_pow(const double* x, std::size_t n, double q) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += std::pow(std::fabs(x[i]), q);
  return s;
}

}  // namespace netext::kernels
