#include <doctest.h>

#include <cmath>
#include <limits>
#include <map>

#include "macid/spectrum.hpp"
#include "oracle.hpp"

using namespace macid;

namespace {
const double LN2 = std::log(2.0);
const double LN4 = std::log(4.0);
}  // namespace

TEST_CASE("density values on the binary adder with uniform inputs") {
  MacChannel w = MacChannel::builtin("binary-adder");
  SequenceDistribution u = SequenceDistribution::uniform({2}, 1);
  JointContext ctx(u, u, w, 1);
  CHECK(ctx.density(DensityKind::Joint, 0, 0, 0) == doctest::Approx(LN4).epsilon(1e-15));
  CHECK(ctx.density(DensityKind::XgivenY, 0, 0, 0) == doctest::Approx(LN2).epsilon(1e-15));
  // impossible output under these inputs
  CHECK(ctx.density(DensityKind::Joint, 0, 0, 2) == -std::numeric_limits<double>::infinity());
}

TEST_CASE("input-independent channel has zero densities of every kind") {
  std::vector<double> k;
  for (int i = 0; i < 4; ++i) k.insert(k.end(), {0.3, 0.7});
  MacChannel w = MacChannel::memoryless({2}, {2}, {2}, std::move(k));
  SequenceDistribution px = SequenceDistribution::random({2}, 2, 3);
  SequenceDistribution py = SequenceDistribution::random({2}, 2, 4);
  JointContext ctx(px, py, w, 2);
  for (DensityKind kind : {DensityKind::XgivenY, DensityKind::YgivenX, DensityKind::Joint,
                           DensityKind::Xonly, DensityKind::Yonly}) {
    DensityLaw law = density_law(kind, ctx);
    for (const auto& a : law.atoms) CHECK(std::abs(a.value) <= 1e-12);
  }
}

TEST_CASE("exact laws on the binary adder") {
  MacChannel w = MacChannel::builtin("binary-adder");
  SequenceDistribution u = SequenceDistribution::uniform({2}, 1);

  DensityLaw cond = density_law(DensityKind::XgivenY, u, u, w, 1);
  REQUIRE(cond.atoms.size() == 1);
  CHECK(cond.atoms[0].value == doctest::Approx(LN2).epsilon(1e-15));
  CHECK(cond.atoms[0].prob == doctest::Approx(1.0).epsilon(1e-15));

  DensityLaw joint = density_law(DensityKind::Joint, u, u, w, 1);
  REQUIRE(joint.atoms.size() == 2);
  CHECK(joint.atoms[0].value == doctest::Approx(LN2).epsilon(1e-15));
  CHECK(joint.atoms[0].prob == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(joint.atoms[1].value == doctest::Approx(LN4).epsilon(1e-15));
  CHECK(joint.atoms[1].prob == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("law means equal direct mutual information sums") {
  for (uint64_t seed = 0; seed < 15; ++seed) {
    MacChannel w = oracle::random_channel(2 + seed % 2, 2, 2 + seed % 2, seed);
    int n = 1 + static_cast<int>(seed % 3);
    SequenceDistribution px = SequenceDistribution::random(w.in1(), n, derive_seed(seed, 1));
    SequenceDistribution py = SequenceDistribution::random(w.in2(), n, derive_seed(seed, 2));
    JointContext ctx(px, py, w, n);
    for (DensityKind kind : {DensityKind::XgivenY, DensityKind::YgivenX, DensityKind::Joint,
                             DensityKind::Xonly, DensityKind::Yonly}) {
      double mean = density_law(kind, ctx).mean() * n;  // law holds per-symbol values
      double want = oracle::mutual_information(kind, px, py, w, n);
      CHECK(mean == doctest::Approx(want).epsilon(1e-10));
      CHECK(mean >= -1e-10);  // nonnegative in expectation
    }
  }
}

TEST_CASE("pointwise chain identity of the densities") {
  for (uint64_t seed = 0; seed < 10; ++seed) {
    MacChannel w = oracle::random_channel(2, 3, 2, seed);
    int n = 1 + static_cast<int>(seed % 2);
    SequenceDistribution px = SequenceDistribution::random(w.in1(), n, derive_seed(seed, 3));
    SequenceDistribution py = SequenceDistribution::random(w.in2(), n, derive_seed(seed, 4));
    JointContext ctx(px, py, w, n);
    ctx.for_each_triple([&](uint64_t xi, uint64_t yi, uint64_t zi, double, double) {
      double joint = ctx.density(DensityKind::Joint, xi, yi, zi);
      double a = ctx.density(DensityKind::Xonly, xi, yi, zi) +
                 ctx.density(DensityKind::YgivenX, xi, yi, zi);
      double b = ctx.density(DensityKind::Yonly, xi, yi, zi) +
                 ctx.density(DensityKind::XgivenY, xi, yi, zi);
      CHECK(std::abs(joint - a) <= 1e-10);
      CHECK(std::abs(joint - b) <= 1e-10);
    });
  }
}

TEST_CASE("n=2 joint law is the convolution of the n=1 law") {
  for (uint64_t seed = 0; seed < 6; ++seed) {
    MacChannel w = oracle::random_channel(2, 2, 3, seed);
    std::vector<double> lx{0.3 + 0.4 * counter_u01(seed, 5, 0), 0.0};
    lx[1] = 1.0 - lx[0];
    std::vector<double> ly{0.3 + 0.4 * counter_u01(seed, 5, 1), 0.0};
    ly[1] = 1.0 - ly[0];
    DensityLaw one = density_law(DensityKind::Joint, SequenceDistribution::iid({2}, 1, lx),
                                 SequenceDistribution::iid({2}, 1, ly), w, 1);
    DensityLaw two = density_law(DensityKind::Joint, SequenceDistribution::iid({2}, 2, lx),
                                 SequenceDistribution::iid({2}, 2, ly), w, 2);
    // convolve the n=1 law with itself (values average because of the 1/n scale)
    std::map<double, double> conv;
    for (const auto& a : one.atoms)
      for (const auto& b : one.atoms) {
        double v = 0.5 * (a.value + b.value);
        bool merged = false;
        for (auto& [cv, cp] : conv)
          if (std::abs(cv - v) <= 1e-11) {
            cp += a.prob * b.prob;
            merged = true;
            break;
          }
        if (!merged) conv[v] += a.prob * b.prob;
      }
    REQUIRE(two.atoms.size() == conv.size());
    auto it = conv.begin();
    for (const auto& atom : two.atoms) {
      CHECK(atom.value == doctest::Approx(it->first).epsilon(1e-10));
      CHECK(atom.prob == doctest::Approx(it->second).epsilon(1e-10));
      ++it;
    }
  }
}

TEST_CASE("quantile proxies") {
  MacChannel w = MacChannel::builtin("binary-adder");
  SequenceDistribution u = SequenceDistribution::uniform({2}, 1);

  SUBCASE("degenerate law collapses both rates") {
    DensityLaw law = density_law(DensityKind::XgivenY, u, u, w, 1);
    for (double eps : {0.01, 0.1, 0.4}) {
      CHECK(law_quantile_inf(law, eps) == doctest::Approx(LN2).epsilon(1e-15));
      CHECK(law_quantile_sup(law, eps) == doctest::Approx(LN2).epsilon(1e-15));
    }
  }
  SUBCASE("two-atom law at eps = 0.25") {
    DensityLaw law = density_law(DensityKind::Joint, u, u, w, 1);
    CHECK(law_quantile_inf(law, 0.25) == doctest::Approx(LN2).epsilon(1e-15));
    CHECK(law_quantile_sup(law, 0.25) == doctest::Approx(LN4).epsilon(1e-15));
  }
  SUBCASE("inf <= sup componentwise") {
    for (uint64_t seed = 0; seed < 8; ++seed) {
      MacChannel rc = oracle::random_channel(2, 2, 3, seed);
      SequenceDistribution px = SequenceDistribution::random({2}, 2, derive_seed(seed, 8));
      SequenceDistribution py = SequenceDistribution::random({2}, 2, derive_seed(seed, 9));
      SpectralRates r = spectral_rates(px, py, rc, 2, 0.05);
      for (int i = 0; i < 3; ++i) CHECK(r.inf_rate[i] <= r.sup_rate[i]);
    }
  }
  SUBCASE("epsilon validation") {
    CHECK_THROWS_AS(spectral_rates(u, u, w, 1, 0.7), UsageError);
  }
}

TEST_CASE("quantile proxies drift toward the mean as n grows") {
  // noisy adder, uniform inputs: the joint law concentrates at I(XY;Z)
  MacChannel w = MacChannel::builtin("noisy-adder(0.1)");
  std::vector<double> u2{0.5, 0.5};
  double target = single_letter_mi(DensityKind::Joint, u2, u2, w);
  double prev = -1.0;
  double first = 0.0, last = 0.0;
  for (int n : {1, 2, 4, 6}) {
    SequenceDistribution px = SequenceDistribution::iid({2}, n, u2);
    DensityLaw law = density_law(DensityKind::Joint, px, px, w, n);
    double dev = std::abs(law_quantile_inf(law, 0.05) - target);
    if (prev >= 0.0) CHECK(dev <= prev + 1e-12);
    if (n == 1) first = dev;
    if (n == 6) last = dev;
    prev = dev;
  }
  CHECK(last < first);
}

TEST_CASE("single-letter mutual information reference values") {
  std::vector<double> u{0.5, 0.5};
  MacChannel add = MacChannel::builtin("binary-adder");
  CHECK(single_letter_mi(DensityKind::XgivenY, u, u, add) ==
        doctest::Approx(LN2).epsilon(1e-13));
  CHECK(single_letter_mi(DensityKind::Joint, u, u, add) ==
        doctest::Approx(1.5 * LN2).epsilon(1e-13));
  MacChannel mul = MacChannel::builtin("binary-multiplier");
  double h = -(0.75 * std::log(0.75) + 0.25 * std::log(0.25));
  CHECK(single_letter_mi(DensityKind::Joint, u, u, mul) == doctest::Approx(h).epsilon(1e-13));
  // non-memoryless channels are rejected
  MacChannel expl = add.tensor_power(2);
  CHECK_THROWS_AS(single_letter_mi(DensityKind::Joint, u, u, expl), ValidationError);
}
