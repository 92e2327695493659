#pragma once

#include <cstdint>
#include <vector>

#include "macid/alphabet.hpp"

namespace macid {

// Subset of X^n x Y^n x Z^n as a dense bitmask over the joint index
// (xi * yn + yi) * zn + zi. Total membership: every triple is in or out.
class TripleSet {
 public:
  TripleSet(Alphabet x, Alphabet y, Alphabet z, int n, bool fill = false);

  static TripleSet full(Alphabet x, Alphabet y, Alphabet z, int n) {
    return TripleSet(x, y, z, n, true);
  }
  static TripleSet empty_set(Alphabet x, Alphabet y, Alphabet z, int n) {
    return TripleSet(x, y, z, n, false);
  }

  template <class Pred>
  static TripleSet from_predicate(Alphabet x, Alphabet y, Alphabet z, int n, Pred pred) {
    TripleSet s(x, y, z, n, false);
    for (uint64_t xi = 0; xi < s.xn_; ++xi)
      for (uint64_t yi = 0; yi < s.yn_; ++yi)
        for (uint64_t zi = 0; zi < s.zn_; ++zi)
          if (pred(xi, yi, zi)) s.set(xi, yi, zi);
    return s;
  }

  int block_len() const { return n_; }
  uint64_t xn() const { return xn_; }
  uint64_t yn() const { return yn_; }
  uint64_t zn() const { return zn_; }
  uint64_t total() const { return total_; }

  bool contains(uint64_t xi, uint64_t yi, uint64_t zi) const {
    uint64_t b = (xi * yn_ + yi) * zn_ + zi;
    return (bits_[b >> 6] >> (b & 63)) & 1;
  }
  void set(uint64_t xi, uint64_t yi, uint64_t zi) {
    uint64_t b = (xi * yn_ + yi) * zn_ + zi;
    bits_[b >> 6] |= uint64_t{1} << (b & 63);
  }

  uint64_t cardinality() const;
  TripleSet complement() const;

  bool dims_match(Alphabet x, Alphabet y, Alphabet z, int n) const;

 private:
  Alphabet x_, y_, z_;
  int n_;
  uint64_t xn_, yn_, zn_, total_;
  std::vector<uint64_t> bits_;
};

}  // namespace macid
