#pragma once

// Data-parallel inner-loop kernels with a scalar reference implementation and
// an AVX2 variant selected at runtime. The scalar versions define the
// semantics; SIMD variants must agree within documented tolerances (kahan_add
// and max_abs_diff are required to agree bit-exactly, reductions that
// reassociate only within floating-point roundoff).

#include <cstddef>
#include <cstdint>
#include <string>

namespace netext::kernels {

enum class Backend { scalar, avx2 };

struct Ops {
  // sum of squares: sum_j x[j]^2
  double (*sum_sq)(const double* x, std::size_t n);
  // squared euclidean distance: sum_j (x[j]-y[j])^2
  double (*sq_dist)(const double* x, const double* y, std::size_t n);
  // squared distance between a real point (pre-doubled, q2 = 2*q) and a
  // lattice point stored as int8 integer coordinates u = 2*x:
  // sum_j (q2[j]-u[j])^2 / 4
  double (*sq_dist_i8)(const double* q2, const int8_t* u, std::size_t n);
  // max_j |x[j]-y[j]|
  double (*max_abs_diff)(const double* x, const double* y, std::size_t n);
  // elementwise Neumaier compensated accumulation: per index j the chain
  // (sum[j], comp[j]) += x[j]. Elementwise, so every backend is bit-exact.
  void (*kahan_add)(double* sum, double* comp, const double* x, std::size_t n);
};

// Active backend. Selection happens once at startup (best available, or the
// NETEXT_KERNELS=scalar|avx2 environment override) and can be changed
// explicitly, e.g. by equivalence tests.
const Ops& active();
Backend active_backend();
void select(Backend b);
bool available(Backend b);
std::string backend_name(Backend b);

const Ops& ops(Backend b);

namespace detail {
extern const Ops scalar_ops;
#if NETEXT_HAVE_AVX2
extern const Ops avx2_ops;
#endif
}  // namespace detail

// Not dispatched (no profitable SIMD form without a vector pow): sum of
// |x[j]|^q for real q >= 1.
double sum_abs_pow(const double* x, std::size_t n, double q);

}  // namespace netext::kernels
