#include "netext/signed_perm.hpp"

#include <algorithm>
#include <numeric>

namespace netext {

SignedPermutation::SignedPermutation(std::vector<std::uint32_t> gather, std::vector<std::int8_t> signs)
    : gather_(std::move(gather)), signs_(std::move(signs)) {
  if (gather_.size() != signs_.size()) throw InvalidInput("signed permutation: size mismatch");
  std::vector<bool> seen(gather_.size(), false);
  for (const std::uint32_t g : gather_) {
    if (g >= gather_.size() || seen[g]) throw InvalidInput("signed permutation: not a bijection");
    seen[g] = true;
  }
  for (const std::int8_t s : signs_)
    if (s != 1 && s != -1) throw InvalidInput("signed permutation: signs must be +-1");
}

SignedPermutation SignedPermutation::identity(std::size_t n) {
  std::vector<std::uint32_t> g(n);
  std::iota(g.begin(), g.end(), 0u);
  return SignedPermutation(std::move(g), std::vector<std::int8_t>(n, 1));
}

SignedPermutation SignedPermutation::random(std::size_t n, RngStream& stream) {
  std::vector<std::uint32_t> g(n);
  std::iota(g.begin(), g.end(), 0u);
  for (std::size_t i = n; i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(stream.below(i));
    std::swap(g[i - 1], g[j]);
  }
  std::vector<std::int8_t> s(n);
  const std::uint64_t mask = stream.next_u64();
  for (std::size_t i = 0; i < n; ++i) s[i] = ((mask >> i) & 1) ? -1 : 1;
  return SignedPermutation(std::move(g), std::move(s));
}

RealVector SignedPermutation::apply(const RealVector& v) const {
  if (v.dim() != dim()) throw InvalidInput("signed permutation apply: dimension mismatch");
  std::vector<double> out(dim());
  for (std::size_t i = 0; i < dim(); ++i) out[i] = signs_[i] * v[gather_[i]];
  return RealVector(std::move(out));
}

RealVector SignedPermutation::apply_inverse(const RealVector& v) const {
  if (v.dim() != dim()) throw InvalidInput("signed permutation apply_inverse: dimension mismatch");
  std::vector<double> out(dim());
  for (std::size_t i = 0; i < dim(); ++i) out[gather_[i]] = signs_[i] * v[i];
  return RealVector(std::move(out));
}

SignedPermutation SignedPermutation::inverse() const {
  std::vector<std::uint32_t> g(dim());
  std::vector<std::int8_t> s(dim());
  for (std::size_t i = 0; i < dim(); ++i) {
    g[gather_[i]] = static_cast<std::uint32_t>(i);
    s[gather_[i]] = signs_[i];
  }
  return SignedPermutation(std::move(g), std::move(s));
}

RealVector apply_signed_perm(const SignedPermutation& g, const RealVector& v) { return g.apply(v); }

std::uint64_t hyperoctahedral_order(std::size_t n) {
  std::uint64_t f = 1;
  for (std::size_t i = 2; i <= n; ++i) f *= i;
  return f << n;
}

GroupEnumerator::GroupEnumerator(std::size_t n)
    : n_(n), gather_(n), mask_end_(1ull << n), total_(hyperoctahedral_order(n)) {
  if (n < 1 || n > 20) throw InvalidInput("group enumerator: dimension out of range");
  std::iota(gather_.begin(), gather_.end(), 0u);
}

void GroupEnumerator::advance() {
  if (done_) return;
  if (++mask_ < mask_end_) return;
  mask_ = 0;
  if (!std::next_permutation(gather_.begin(), gather_.end())) done_ = true;
}

SignedPermutation GroupEnumerator::element() const {
  std::vector<std::int8_t> s(n_);
  for (std::size_t i = 0; i < n_; ++i) s[i] = ((mask_ >> i) & 1) ? -1 : 1;
  return SignedPermutation(gather_, s);
}

}  // namespace netext
