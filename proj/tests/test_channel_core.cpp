#include <doctest.h>

#include <cmath>

#include "macid/response.hpp"
#include "macid/rng.hpp"
#include "oracle.hpp"

using namespace macid;

namespace {
SequenceDistribution random_input(Alphabet a, int n, uint64_t seed) {
  return SequenceDistribution::random(a, n, seed);
}
}  // namespace

TEST_CASE("sequence space indexing round-trips") {
  SeqSpace s({3}, 4);
  CHECK(s.size() == 81);
  for (uint64_t i = 0; i < s.size(); ++i) {
    auto d = s.decode(i);
    CHECK(s.encode(d) == i);
  }
  // position 0 is the most significant digit
  CHECK(s.decode(80) == std::vector<uint32_t>{2, 2, 2, 2});
  CHECK(s.decode(27)[0] == 1);
}

TEST_CASE("pairwise sum matches plain sum and is thread-independent") {
  PairwiseSum acc;
  for (int i = 1; i <= 1000; ++i) acc.add(1.0 / i);
  double plain = 0.0;
  for (int i = 1; i <= 1000; ++i) plain += 1.0 / i;
  CHECK(acc.value() == doctest::Approx(plain).epsilon(1e-14));

  // a big reduction must be bit-identical under different worker counts
  MacChannel w = MacChannel::builtin("noisy-adder(0.1)");
  SequenceDistribution px = SequenceDistribution::uniform({2}, 5);
  SequenceDistribution py = random_input({2}, 5, 77);
  set_parallelism(1);
  ResponseMeasure q1 = response(px, py, w, 5);
  set_parallelism(8);
  ResponseMeasure q8 = response(px, py, w, 5);
  set_parallelism(1);
  for (uint64_t z = 0; z < q1.size(); ++z) CHECK(q1[z] == q8[z]);
}

TEST_CASE("response on the binary adder") {
  MacChannel w = MacChannel::builtin("binary-adder");

  SUBCASE("point masses drive the deterministic output") {
    auto q = response(SequenceDistribution::point_mass({2}, 1, 0),
                      SequenceDistribution::point_mass({2}, 1, 1), w, 1);
    CHECK(q[0] == 0.0);
    CHECK(q[1] == 1.0);
    CHECK(q[2] == 0.0);
  }
  SUBCASE("uniform inputs give the 1-2-1 profile") {
    auto q = response(SequenceDistribution::uniform({2}, 1),
                      SequenceDistribution::uniform({2}, 1), w, 1);
    CHECK(q[0] == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(q[1] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(q[2] == doctest::Approx(0.25).epsilon(1e-15));
  }
}

TEST_CASE("input-independent channel returns its fixed row") {
  std::vector<double> row{0.2, 0.5, 0.3};
  std::vector<double> k;
  for (int i = 0; i < 4; ++i) k.insert(k.end(), row.begin(), row.end());
  MacChannel w = MacChannel::memoryless({2}, {2}, {3}, std::move(k));
  auto q = response(random_input({2}, 1, 1), random_input({2}, 1, 2), w, 1);
  for (int z = 0; z < 3; ++z) CHECK(q[z] == doctest::Approx(row[z]).epsilon(1e-14));
}

TEST_CASE("response matches the brute-force oracle on random instances") {
  for (uint64_t seed = 0; seed < 20; ++seed) {
    MacChannel w = oracle::random_channel(2 + seed % 2, 2, 2 + seed % 3, seed);
    int n = 1 + static_cast<int>(seed % 3);
    auto px = random_input(w.in1(), n, derive_seed(seed, 1));
    auto py = random_input(w.in2(), n, derive_seed(seed, 2));
    auto got = response(px, py, w, n);
    auto want = oracle::response(px, py, w, n);
    for (uint64_t z = 0; z < got.size(); ++z)
      CHECK(got[z] == doctest::Approx(want[z]).epsilon(1e-13));
  }
}

TEST_CASE("conditional marginals") {
  MacChannel w = MacChannel::builtin("binary-adder");
  SequenceDistribution u2 = SequenceDistribution::uniform({2}, 1);

  SUBCASE("binary adder row") {
    auto m = conditional_marginals(u2, u2, w, 1);
    auto row = m.pzy_row(0);
    CHECK(row[0] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(row[1] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(row[2] == 0.0);
  }
  SUBCASE("point-mass px reduces P(z|y) to a kernel row") {
    auto px = SequenceDistribution::point_mass({2}, 2, 2);  // sequence (1,0)
    auto py = random_input({2}, 2, 5);
    auto m = conditional_marginals(px, py, w, 2);
    KernelView view(w, 2);
    for (uint64_t yi = 0; yi < 4; ++yi)
      for (uint64_t zi = 0; zi < 9; ++zi)
        CHECK(m.pzy_row(yi)[zi] == doctest::Approx(view.at(2, yi, zi)).epsilon(1e-15));
  }
  SUBCASE("mixture consistency on random 2x2x2 channels") {
    for (uint64_t seed = 0; seed < 10; ++seed) {
      MacChannel rc = oracle::random_channel(2, 2, 2, seed);
      auto px = random_input({2}, 2, derive_seed(seed, 3));
      auto py = random_input({2}, 2, derive_seed(seed, 4));
      auto m = conditional_marginals(px, py, rc, 2);
      for (uint64_t zi = 0; zi < 4; ++zi) {
        double mix = 0.0;
        for (uint64_t yi = 0; yi < 4; ++yi) mix += py[yi] * m.pzy_row(yi)[zi];
        CHECK(std::abs(mix - m.pz[zi]) <= 1e-12);
      }
      // every conditional row is itself a distribution
      for (uint64_t yi = 0; yi < 4; ++yi) {
        double s = 0.0;
        for (double v : m.pzy_row(yi)) s += v;
        CHECK(std::abs(s - 1.0) <= 1e-12);
      }
      for (uint64_t xi = 0; xi < 4; ++xi) {
        double s = 0.0;
        for (double v : m.pzx_row(xi)) s += v;
        CHECK(std::abs(s - 1.0) <= 1e-12);
      }
    }
  }
}

TEST_CASE("partial responses decompose the response") {
  MacChannel w = MacChannel::builtin("binary-adder");
  SequenceDistribution u = SequenceDistribution::uniform({2}, 1);

  TripleSet full = TripleSet::full({2}, {2}, {3}, 1);
  TripleSet empty = TripleSet::empty_set({2}, {2}, {3}, 1);
  auto q = response(u, u, w, 1);
  auto qs = partial_response(u, u, w, full, 1);
  auto qe = partial_response(u, u, w, empty, 1);
  for (uint64_t z = 0; z < 3; ++z) {
    CHECK(qs[z] == q[z]);
    CHECK(qe[z] == 0.0);
  }

  // Q_S + Q_{S^c} = Q entrywise on random instances
  for (uint64_t seed = 0; seed < 25; ++seed) {
    MacChannel rc = oracle::random_channel(2 + seed % 2, 2, 3, seed);
    int n = 1 + static_cast<int>(seed % 3);
    auto px = random_input(rc.in1(), n, derive_seed(seed, 6));
    auto py = random_input(rc.in2(), n, derive_seed(seed, 7));
    TripleSet s = TripleSet::from_predicate(
        rc.in1(), rc.in2(), rc.out(), n,
        [&](uint64_t a, uint64_t b, uint64_t c) { return counter_rand(seed, 9, (a << 20) ^ (b << 10) ^ c) & 1; });
    auto qa = partial_response(px, py, rc, s, n);
    auto qb = partial_response(px, py, rc, s.complement(), n);
    auto qq = response(px, py, rc, n);
    for (uint64_t z = 0; z < qq.size(); ++z) CHECK(std::abs(qa[z] + qb[z] - qq[z]) <= 1e-12);
    // and against the oracle
    auto want = oracle::partial_response(px, py, rc, n, [&](uint64_t a, uint64_t b, uint64_t c) {
      return s.contains(a, b, c);
    });
    for (uint64_t z = 0; z < qq.size(); ++z)
      CHECK(qa[z] == doctest::Approx(want[z]).epsilon(1e-13));
  }
}

TEST_CASE("variational distance values and metric axioms") {
  Alphabet z3{3};
  auto mk = [&](std::vector<double> v) { return ResponseMeasure(z3, 1, std::move(v)); };
  CHECK(variational_distance(mk({0.25, 0.5, 0.25}), mk({0.25, 0.5, 0.25})) == 0.0);
  CHECK(variational_distance(mk({1, 0, 0}), mk({0, 1, 0})) == 2.0);
  CHECK(variational_distance(mk({0.25, 0.5, 0.25}), mk({0.5, 0.5, 0})) ==
        doctest::Approx(0.5).epsilon(1e-15));

  for (uint64_t seed = 0; seed < 30; ++seed) {
    auto rv = [&](uint64_t tag) {
      std::vector<double> v(3);
      double tot = 0;
      for (int i = 0; i < 3; ++i) {
        v[i] = counter_u01(seed, tag, i) + 1e-3;
        tot += v[i];
      }
      for (auto& x : v) x /= tot;
      return mk(std::move(v));
    };
    auto a = rv(1), b = rv(2), c = rv(3);
    double dab = variational_distance(a, b);
    double dba = variational_distance(b, a);
    CHECK(dab == dba);
    CHECK(dab >= 0.0);
    CHECK(variational_distance(a, a) == 0.0);
    CHECK(dab <= variational_distance(a, c) + variational_distance(c, b) + 1e-15);
  }
}

TEST_CASE("memoryless product equals the explicit tensor") {
  for (uint64_t seed = 0; seed < 6; ++seed) {
    MacChannel w = oracle::random_channel(2, 2, 2, seed);
    for (int n = 1; n <= 3; ++n) {
      MacChannel full = w.tensor_power(n);
      KernelView stream(w, n), table(full, n);
      for (uint64_t xi = 0; xi < stream.xn(); ++xi)
        for (uint64_t yi = 0; yi < stream.yn(); ++yi)
          for (uint64_t zi = 0; zi < stream.zn(); ++zi)
            CHECK(std::abs(stream.at(xi, yi, zi) - table.at(xi, yi, zi)) <= 1e-12);
    }
  }
}

TEST_CASE("validation and errors") {
  SUBCASE("kernel row that sums to 0.9 is rejected with the row named") {
    std::vector<double> k{0.5, 0.4, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0};
    CHECK_THROWS_WITH_AS(MacChannel::memoryless({2}, {2}, {3}, std::move(k)),
                         doctest::Contains("row 0"), ValidationError);
  }
  SUBCASE("alphabet mismatch raises a dimension error") {
    MacChannel w = MacChannel::builtin("binary-adder");
    auto px3 = SequenceDistribution::uniform({3}, 1);
    auto py = SequenceDistribution::uniform({2}, 1);
    CHECK_THROWS_AS(response(px3, py, w, 1), DimensionError);
  }
  SUBCASE("block length mismatch raises a dimension error") {
    MacChannel w = MacChannel::builtin("binary-adder");
    auto px = SequenceDistribution::uniform({2}, 2);
    auto py = SequenceDistribution::uniform({2}, 1);
    CHECK_THROWS_AS(response(px, py, w, 1), DimensionError);
  }
  SUBCASE("enumeration cap") {
    // 2^10 * 2^10 * 3^10 joint states exceed the default cap
    MacChannel w = MacChannel::builtin("binary-adder");
    auto px = SequenceDistribution::uniform({2}, 10);
    CHECK_THROWS_AS(response(px, SequenceDistribution::uniform({2}, 10), w, 10),
                    CapExceededError);
  }
  SUBCASE("unknown builtin") { CHECK_THROWS_AS(MacChannel::builtin("nope"), UsageError); }
}

TEST_CASE("builtin kernels") {
  MacChannel add = MacChannel::builtin("binary-adder");
  CHECK(add.letter(1, 1, 2) == 1.0);
  CHECK(add.letter(1, 0, 2) == 0.0);
  MacChannel mul = MacChannel::builtin("binary-multiplier");
  CHECK(mul.letter(1, 1, 1) == 1.0);
  CHECK(mul.letter(1, 0, 0) == 1.0);
  MacChannel noisy = MacChannel::builtin("noisy-adder(0.1)");
  CHECK(noisy.letter(0, 0, 0) == doctest::Approx(0.9));
  CHECK(noisy.letter(0, 0, 1) == doctest::Approx(0.05));
  CHECK(noisy.letter(0, 0, 2) == doctest::Approx(0.05));
}

TEST_CASE("channel JSON round-trip is bit-identical") {
  MacChannel w = MacChannel::builtin("noisy-adder(0.37)");
  MacChannel back = MacChannel::from_json_text(w.to_json_text());
  REQUIRE(back.raw_kernel().size() == w.raw_kernel().size());
  for (size_t i = 0; i < w.raw_kernel().size(); ++i)
    CHECK(back.raw_kernel()[i] == w.raw_kernel()[i]);

  MacChannel expl = w.tensor_power(2);
  MacChannel back2 = MacChannel::from_json_text(expl.to_json_text());
  CHECK(back2.explicit_block_len() == 2);
  for (size_t i = 0; i < expl.raw_kernel().size(); ++i)
    CHECK(back2.raw_kernel()[i] == expl.raw_kernel()[i]);
}

TEST_CASE("m-type distributions are exact point masses over counts") {
  // integer multiples of 1/M by construction
  SequenceDistribution px = SequenceDistribution::point_mass({2}, 2, 3);
  CHECK(px[3] == 1.0);
  CHECK_THROWS_AS(SequenceDistribution({2}, 1, {0.6, 0.6}), ValidationError);
  CHECK_THROWS_AS(SequenceDistribution({2}, 1, {-0.1, 1.1}), ValidationError);
}
