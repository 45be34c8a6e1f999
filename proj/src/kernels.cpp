#include "netext/kernels.hpp"

#include <cstdlib>
#include <cstring>
#include <stdexcept>

namespace netext::kernels {
namespace {

bool cpu_has_avx2() {
#if NETEXT_HAVE_AVX2
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Backend initial_backend() {
  const char* env = std::getenv("NETEXT_KERNELS");
  if (env != nullptr) {
    if (std::strcmp(env, "scalar") == 0) return Backend::scalar;
    if (std::strcmp(env, "avx2") == 0 && available(Backend::avx2)) return Backend::avx2;
  }
  return available(Backend::avx2) ? Backend::avx2 : Backend::scalar;
}

Backend g_backend = initial_backend();

}  // namespace

bool available(Backend b) {
  switch (b) {
    case Backend::scalar:
      return true;
    case Backend::avx2:
      return cpu_has_avx2();
  }
  return false;
}

const Ops& ops(Backend b) {
#if NETEXT_HAVE_AVX2
  if (b == Backend::avx2) return detail::avx2_ops;
#endif
  return detail::scalar_ops;
}

const Ops& active() { return ops(g_backend); }

Backend active_backend() { return g_backend; }

void select(Backend b) {
  if (!available(b)) throw std::runtime_error("kernel backend not available: " + backend_name(b));
  g_backend = b;
}

std::string backend_name(Backend b) {
  switch (b) {
    case Backend::scalar:
      return "scalar";
    case Backend::avx2:
      return "avx2";
  }
  return "?";
}

}  // namespace netext::kernels
