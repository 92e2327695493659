#include "macid/response.hpp"

#include <atomic>
#include <cmath>
#include <string>
#include <thread>

namespace macid {

namespace {

using Vec = std::vector<double>;

Vec vec_add(Vec left, Vec right) {
  for (size_t i = 0; i < left.size(); ++i) left[i] += right[i];
  return left;
}

// Independent per-index jobs; outputs must go to disjoint memory.
template <class Fn>
void parallel_for(uint64_t total, Fn fn) {
  unsigned workers = parallelism();
  if (workers <= 1 || total <= 1) {
    for (uint64_t i = 0; i < total; ++i) fn(i);
    return;
  }
  if (workers > total) workers = static_cast<unsigned>(total);
  std::atomic<uint64_t> next{0};
  auto work = [&] {
    for (;;) {
      uint64_t i = next.fetch_add(1);
      if (i >= total) break;
      fn(i);
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work);
  for (auto& th : pool) th.join();
}

}  // namespace

void check_channel_inputs(const SequenceDistribution& px, const SequenceDistribution& py,
                          const MacChannel& w, int n) {
  if (!(px.alphabet() == w.in1()) || px.block_len() != n)
    throw DimensionError("px does not match the channel X alphabet at n=" + std::to_string(n));
  if (!(py.alphabet() == w.in2()) || py.block_len() != n)
    throw DimensionError("py does not match the channel Y alphabet at n=" + std::to_string(n));
  if (!w.valid_at(n))
    throw DimensionError("channel is not valid at n=" + std::to_string(n));
  check_state_cap(w.in1(), w.in2(), w.out(), n);
}

ResponseMeasure response(const SequenceDistribution& px, const SequenceDistribution& py,
                         const MacChannel& w, int n) {
  check_channel_inputs(px, py, w, n);
  KernelView view(w, n);
  const uint64_t zn = view.zn();
  Vec out = reduce_over_pairs<Vec>(
      px, py, view, [zn] { return Vec(zn, 0.0); },
      [zn](Vec& acc, uint64_t, uint64_t, double, double, double pp,
           std::span<const double> wrow) {
        for (uint64_t z = 0; z < zn; ++z) acc[z] += pp * wrow[z];
      },
      vec_add);
  ResponseMeasure q(w.out(), n, std::move(out));
  if (std::abs(q.total() - 1.0) > kProbTol)
    throw ValidationError("response total deviates from 1 by " +
                          std::to_string(q.total() - 1.0));
  return q;
}

ResponseMeasure partial_response(const SequenceDistribution& px, const SequenceDistribution& py,
                                 const MacChannel& w, const TripleSet& s, int n) {
  check_channel_inputs(px, py, w, n);
  if (!s.dims_match(w.in1(), w.in2(), w.out(), n))
    throw DimensionError("triple set does not match the channel dimensions");
  KernelView view(w, n);
  const uint64_t zn = view.zn();
  Vec out = reduce_over_pairs<Vec>(
      px, py, view, [zn] { return Vec(zn, 0.0); },
      [zn, &s](Vec& acc, uint64_t xi, uint64_t yi, double, double, double pp,
               std::span<const double> wrow) {
        for (uint64_t z = 0; z < zn; ++z)
          if (wrow[z] != 0.0 && s.contains(xi, yi, z)) acc[z] += pp * wrow[z];
      },
      vec_add);
  return ResponseMeasure(w.out(), n, std::move(out));
}

ConditionalMarginals conditional_marginals(const SequenceDistribution& px,
                                           const SequenceDistribution& py, const MacChannel& w,
                                           int n) {
  check_channel_inputs(px, py, w, n);
  KernelView view(w, n);
  const uint64_t zn = view.zn();
  ConditionalMarginals m;
  m.zn = zn;
  m.pzx.assign(view.xn() * zn, 0.0);
  m.pzy.assign(view.yn() * zn, 0.0);

  // Each row is an independent chunked tree sum; rows in parallel.
  auto fill_row = [zn](double* row, uint64_t inner_total,
                       auto weight_at, auto row_at) {
    TreeFold<Vec, Vec (*)(Vec, Vec)> fold(vec_add);
    std::vector<double> scratch;
    for (uint64_t lo = 0; lo < inner_total; lo += kPairBlock) {
      uint64_t hi = lo + kPairBlock < inner_total ? lo + kPairBlock : inner_total;
      Vec acc(zn, 0.0);
      for (uint64_t i = lo; i < hi; ++i) {
        double wt = weight_at(i);
        if (wt == 0.0) continue;
        auto wrow = row_at(i, scratch);
        for (uint64_t z = 0; z < zn; ++z) acc[z] += wt * wrow[z];
      }
      fold.push(std::move(acc));
    }
    Vec r = fold.take(Vec(zn, 0.0));
    std::copy(r.begin(), r.end(), row);
  };

  parallel_for(view.xn(), [&](uint64_t xi) {
    fill_row(m.pzx.data() + xi * zn, view.yn(), [&](uint64_t yi) { return py[yi]; },
             [&](uint64_t yi, std::vector<double>& scratch) { return view.row(xi, yi, scratch); });
  });
  parallel_for(view.yn(), [&](uint64_t yi) {
    fill_row(m.pzy.data() + yi * zn, view.xn(), [&](uint64_t xi) { return px[xi]; },
             [&](uint64_t xi, std::vector<double>& scratch) { return view.row(xi, yi, scratch); });
  });

  ResponseMeasure q = response(px, py, w, n);
  m.pz.assign(q.mass().begin(), q.mass().end());
  return m;
}

}  // namespace macid
