#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace macid {

// Minimal arbitrary-precision unsigned integer: just enough for exact type
// counting (binomials, powers) and comparisons.
class BigUint {
 public:
  BigUint() = default;
  explicit BigUint(uint64_t v);

  static BigUint binomial(uint64_t n, uint64_t k);
  static BigUint pow(uint64_t base, uint64_t exp);

  BigUint& operator*=(uint64_t m);
  BigUint& operator+=(const BigUint& rhs);
  // Exact division; throws if a remainder would be left.
  BigUint& divide_exact(uint64_t d);

  bool operator==(const BigUint& rhs) const { return limbs_ == rhs.limbs_; }
  bool operator<=(const BigUint& rhs) const;
  bool operator<(const BigUint& rhs) const;

  bool fits_u64() const { return limbs_.size() <= 2; }
  uint64_t to_u64() const;  // throws on overflow
  std::string to_string() const;

 private:
  // Base 2^32 limbs, little-endian, no trailing zero limbs.
  std::vector<uint32_t> limbs_;
  void trim();
};

}  // namespace macid
