#include <benchmark/benchmark.h>

#include "macid/bounds.hpp"
#include "macid/resolvability.hpp"
#include "macid/spectrum.hpp"

using namespace macid;

namespace {

void BM_Response(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  MacChannel w = MacChannel::builtin("noisy-adder(0.1)");
  SequenceDistribution px = SequenceDistribution::uniform({2}, n);
  SequenceDistribution py = SequenceDistribution::random({2}, n, 7);
  for (auto _ : state) {
    ResponseMeasure q = response(px, py, w, n);
    benchmark::DoNotOptimize(q.total());
  }
  state.SetComplexityN(static_cast<int64_t>(pow_u64(2, n)) * pow_u64(2, n) * pow_u64(3, n));
}
BENCHMARK(BM_Response)->DenseRange(2, 6)->Complexity();

void BM_OmegaPoint(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  MacChannel w = MacChannel::builtin("noisy-adder(0.1)");
  SequenceDistribution px = SequenceDistribution::uniform({2}, n);
  SequenceDistribution py = SequenceDistribution::random({2}, n, 5);
  JointContext ctx(px, py, w, n);
  for (auto _ : state) {
    OmegaBreakdown b = omega_point({0.8, 0.8}, 0.02, ctx);
    benchmark::DoNotOptimize(b.omega_min);
  }
}
BENCHMARK(BM_OmegaPoint)->DenseRange(2, 6);

void BM_DensityLaw(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  MacChannel w = MacChannel::builtin("noisy-adder(0.1)");
  SequenceDistribution px = SequenceDistribution::uniform({2}, n);
  SequenceDistribution py = SequenceDistribution::uniform({2}, n);
  JointContext ctx(px, py, w, n);
  for (auto _ : state) {
    DensityLaw law = density_law(DensityKind::Joint, ctx);
    benchmark::DoNotOptimize(law.atoms.size());
  }
}
BENCHMARK(BM_DensityLaw)->DenseRange(2, 5);

void BM_SampleCode(benchmark::State& state) {
  MacChannel w = MacChannel::builtin("binary-adder");
  SequenceDistribution u = SequenceDistribution::uniform({2}, 3);
  uint64_t seed = 0;
  for (auto _ : state) {
    ResolvabilityCode code = sample_code(u, u, 64, 64, 3, ++seed);
    benchmark::DoNotOptimize(code.codewords1.back());
  }
}
BENCHMARK(BM_SampleCode);

}  // namespace

BENCHMARK_MAIN();
