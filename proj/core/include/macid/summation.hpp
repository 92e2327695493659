#pragma once

#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

namespace macid {

// Worker count used by blocked reductions. The reduction result never depends
// on it; it only controls how many threads chew on the fixed block schedule.
void set_parallelism(unsigned n);
unsigned parallelism();

// Pairwise (tree) summation via the binary-counter scheme. The reduction tree
// depends only on how many values were pushed, in which order, so results are
// reproducible and rounding error grows like log(N) instead of N.
class PairwiseSum {
 public:
  void add(double v) {
    uint64_t mask = count_;
    size_t i = 0;
    while (mask & 1) {
      v = levels_[i] + v;
      levels_[i] = 0.0;
      mask >>= 1;
      ++i;
    }
    if (i == levels_.size())
      levels_.push_back(v);
    else
      levels_[i] = v;
    ++count_;
  }

  double value() const {
    double s = 0.0;
    uint64_t mask = count_;
    for (size_t i = 0; i < levels_.size(); ++i, mask >>= 1)
      if (mask & 1) s = levels_[i] + s;
    return s;
  }

  uint64_t count() const { return count_; }

 private:
  std::vector<double> levels_;
  uint64_t count_ = 0;
};

// Binary-counter tree fold over partial results pushed in a fixed order.
// merge(left, right) must move-combine into the left operand's position.
template <class T, class Merge>
class TreeFold {
 public:
  explicit TreeFold(Merge merge) : merge_(std::move(merge)) {}

  void push(T v) {
    uint64_t mask = count_;
    size_t i = 0;
    while (mask & 1) {
      v = merge_(std::move(levels_[i]), std::move(v));
      mask >>= 1;
      ++i;
    }
    if (i == levels_.size())
      levels_.push_back(std::move(v));
    else
      levels_[i] = std::move(v);
    ++count_;
  }

  // Folds remaining levels (low to high) into the final value.
  T take(T empty) {
    T acc = std::move(empty);
    bool have = false;
    uint64_t mask = count_;
    for (size_t i = 0; i < levels_.size(); ++i, mask >>= 1) {
      if (!(mask & 1)) continue;
      if (!have) {
        acc = std::move(levels_[i]);
        have = true;
      } else {
        acc = merge_(std::move(levels_[i]), std::move(acc));
      }
    }
    return acc;
  }

 private:
  Merge merge_;
  std::vector<T> levels_;
  uint64_t count_ = 0;
};

// Deterministic parallel reduction over [0, total): the range is cut into
// fixed-size blocks, each block is mapped independently, and the partials are
// tree-folded in block order. The schedule (hence the result, bit for bit) is
// independent of the worker count.
template <class T, class BlockFn, class Merge>
T blocked_reduce(uint64_t total, uint64_t block_size, T empty, BlockFn block_fn, Merge merge) {
  if (total == 0) return empty;
  const uint64_t nblocks = (total + block_size - 1) / block_size;
  std::vector<T> parts(static_cast<size_t>(nblocks));
  unsigned workers = parallelism();
  if (workers > nblocks) workers = static_cast<unsigned>(nblocks);
  if (workers <= 1) {
    for (uint64_t b = 0; b < nblocks; ++b) {
      uint64_t lo = b * block_size;
      uint64_t hi = lo + block_size < total ? lo + block_size : total;
      parts[static_cast<size_t>(b)] = block_fn(lo, hi);
    }
  } else {
    std::atomic<uint64_t> next{0};
    auto work = [&] {
      for (;;) {
        uint64_t b = next.fetch_add(1);
        if (b >= nblocks) break;
        uint64_t lo = b * block_size;
        uint64_t hi = lo + block_size < total ? lo + block_size : total;
        parts[static_cast<size_t>(b)] = block_fn(lo, hi);
      }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  TreeFold<T, Merge> fold(merge);
  for (auto& p : parts) fold.push(std::move(p));
  return fold.take(std::move(empty));
}

}  // namespace macid
