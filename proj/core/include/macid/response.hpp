#pragma once

#include "macid/channel.hpp"
#include "macid/distribution.hpp"
#include "macid/summation.hpp"
#include "macid/triple_set.hpp"

namespace macid {

// Fixed block width (in input pairs) for deterministic chunked reductions.
inline constexpr uint64_t kPairBlock = 256;

// Deterministic reduction over input pairs (xi, yi) with positive probability.
// per_pair(state, xi, yi, pxv, pyv, pp, wrow) accumulates into the block
// state; block partials are tree-folded in block order, so the result is
// bit-identical for any worker count.
template <class T, class MakeT, class PerPair, class Merge>
T reduce_over_pairs(const SequenceDistribution& px, const SequenceDistribution& py,
                    const KernelView& view, MakeT make, PerPair per_pair, Merge merge) {
  const uint64_t yn = view.yn();
  const uint64_t total = view.xn() * yn;
  return blocked_reduce<T>(
      total, kPairBlock, make(),
      [&](uint64_t lo, uint64_t hi) {
        T state = make();
        std::vector<double> scratch;
        for (uint64_t p = lo; p < hi; ++p) {
          const uint64_t xi = p / yn, yi = p % yn;
          const double pxv = px[xi], pyv = py[yi];
          const double pp = pxv * pyv;
          if (pp == 0.0) continue;
          per_pair(state, xi, yi, pxv, pyv, pp, view.row(xi, yi, scratch));
        }
        return state;
      },
      merge);
}

void check_channel_inputs(const SequenceDistribution& px, const SequenceDistribution& py,
                          const MacChannel& w, int n);

// Q(z) = sum_{x,y} px(x) py(y) W^n(z|x,y).
ResponseMeasure response(const SequenceDistribution& px, const SequenceDistribution& py,
                         const MacChannel& w, int n);

// The three denominators of the information densities.
struct ConditionalMarginals {
  uint64_t zn = 0;
  std::vector<double> pzy;  // yn rows of zn: P(z|y) = sum_x px(x) W^n(z|x,y)
  std::vector<double> pzx;  // xn rows of zn: P(z|x) = sum_y py(y) W^n(z|x,y)
  std::vector<double> pz;   // the response

  std::span<const double> pzy_row(uint64_t yi) const { return {pzy.data() + yi * zn, zn}; }
  std::span<const double> pzx_row(uint64_t xi) const { return {pzx.data() + xi * zn, zn}; }
};

ConditionalMarginals conditional_marginals(const SequenceDistribution& px,
                                           const SequenceDistribution& py, const MacChannel& w,
                                           int n);

// Q_S(z) = sum_{x,y} W^n(z|x,y) px(x) py(y) 1_S(x,y,z); subnormalized.
ResponseMeasure partial_response(const SequenceDistribution& px, const SequenceDistribution& py,
                                 const MacChannel& w, const TripleSet& s, int n);

}  // namespace macid
