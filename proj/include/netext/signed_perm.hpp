#pragma once

// Signed permutations (the hyperoctahedral group) acting on R^n. A group
// element g applies as (g x)_i = signs[i] * x[gather[i]]; gather is the
// output-slot -> input-slot map, so it equals pi^{-1} when g = eps*pi in the
// usual matrix convention.

#include <cstdint>
#include <vector>

#include "netext/rng.hpp"
#include "netext/spaces.hpp"

namespace netext {

class SignedPermutation {
 public:
  SignedPermutation(std::vector<std::uint32_t> gather, std::vector<std::int8_t> signs);
  static SignedPermutation identity(std::size_t n);
  static SignedPermutation random(std::size_t n, RngStream& stream);

  std::size_t dim() const { return gather_.size(); }
  const std::vector<std::uint32_t>& gather() const { return gather_; }
  const std::vector<std::int8_t>& signs() const { return signs_; }

  RealVector apply(const RealVector& v) const;
  RealVector apply_inverse(const RealVector& v) const;
  SignedPermutation inverse() const;

 private:
  std::vector<std::uint32_t> gather_;
  std::vector<std::int8_t> signs_;
};

RealVector apply_signed_perm(const SignedPermutation& g, const RealVector& v);

// Enumerates all 2^n * n! group elements in the documented order: gather
// arrays in lexicographic order (outer), sign masks as binary counters
// (inner; bit j set means coordinate j is negated).
class GroupEnumerator {
 public:
  explicit GroupEnumerator(std::size_t n);

  bool done() const { return done_; }
  void advance();
  std::uint64_t size() const { return total_; }

  const std::vector<std::uint32_t>& gather() const { return gather_; }
  std::uint64_t sign_mask() const { return mask_; }
  SignedPermutation element() const;

 private:
  std::size_t n_;
  std::vector<std::uint32_t> gather_;
  std::uint64_t mask_ = 0;
  std::uint64_t mask_end_;
  std::uint64_t total_;
  bool done_ = false;
};

std::uint64_t hyperoctahedral_order(std::size_t n);  // 2^n * n!

}  // namespace netext
