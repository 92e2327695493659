#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "macid/errors.hpp"

namespace macid {

// Finite alphabet {0, 1, ..., size-1}.
struct Alphabet {
  uint32_t size = 0;

  bool operator==(const Alphabet&) const = default;
};

// Default cap on |X|^n * |Y|^n * |Z|^n states visited by exact enumeration.
inline constexpr uint64_t kDefaultStateCap = uint64_t{1} << 28;

// Effective cap (MACID_MAX_STATES env var overrides the default).
uint64_t state_cap();

// k^n with overflow detection; throws CapExceededError past 2^62.
uint64_t pow_u64(uint64_t base, int exp);

// Throws CapExceededError (naming the dimensions) if the joint sequence space
// x^n * y^n * z^n exceeds the cap.
void check_state_cap(Alphabet x, Alphabet y, Alphabet z, int n);

// Dense lexicographic indexing of A^n: position 0 is the most significant
// digit, so index = sum x_i * size^(n-1-i).
class SeqSpace {
 public:
  SeqSpace(Alphabet a, int n);

  Alphabet alphabet() const { return a_; }
  int block_len() const { return n_; }
  uint64_t size() const { return size_; }

  void decode(uint64_t index, std::span<uint32_t> out) const;
  std::vector<uint32_t> decode(uint64_t index) const;
  uint64_t encode(std::span<const uint32_t> digits) const;

 private:
  Alphabet a_;
  int n_;
  uint64_t size_;
};

}  // namespace macid
