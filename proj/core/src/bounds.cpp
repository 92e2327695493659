#include "macid/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "macid/rng.hpp"

namespace macid {

namespace {

// Membership thresholds in the likelihood-ratio domain. Comparing ratios
// against exp(n * effective_rate) is monotone-equivalent to comparing
// densities in nats, and both sides of the gamma-shift identities
// compute the same threshold doubles, so the identities hold exactly.
struct Thresholds {
  double t1, t2, tj;       // T membership: ratio <= threshold
  double f1, f2, fj;       // zeta scale factors exp(-n R1), exp(-n R2), exp(-n (R1+R2))
};

Thresholds make_thresholds(RatePoint rates, double gamma, int n) {
  const double er1 = rates.r1 - gamma;
  const double er2 = rates.r2 - gamma;
  Thresholds th;
  th.t1 = std::exp(n * er1);
  th.t2 = std::exp(n * er2);
  th.tj = std::exp(n * (er1 + er2));
  th.f1 = std::exp(-n * rates.r1);
  th.f2 = std::exp(-n * rates.r2);
  th.fj = std::exp(-n * (rates.r1 + rates.r2));
  return th;
}

struct OmegaSums {
  // out-of-set probability per branch, and the zeta partial sums
  double out1 = 0, out2 = 0, out3 = 0;
  double s1 = 0, s2 = 0, s3x = 0, s3y = 0, s3j = 0;
};

struct OmegaBlock {
  PairwiseSum out1, out2, out3, s1, s2, s3x, s3y, s3j;
  OmegaSums values() const {
    return {out1.value(), out2.value(), out3.value(), s1.value(),
            s2.value(),  s3x.value(),  s3y.value(),  s3j.value()};
  }
};

OmegaSums add_sums(OmegaSums a, OmegaSums b) {
  a.out1 += b.out1;
  a.out2 += b.out2;
  a.out3 += b.out3;
  a.s1 += b.s1;
  a.s2 += b.s2;
  a.s3x += b.s3x;
  a.s3y += b.s3y;
  a.s3j += b.s3j;
  return a;
}

int check_branch_index(int t) {
  if (t < 1 || t > 3) throw UsageError("branch index t must be 1, 2 or 3");
  return t - 1;
}

}  // namespace

OmegaBreakdown omega_point(RatePoint rates, double gamma, const JointContext& ctx) {
  if (gamma < 0.0) throw UsageError("gamma must be >= 0");
  const int n = ctx.block_len();
  const Thresholds th = make_thresholds(rates, gamma, n);
  const uint64_t zn = ctx.zn();

  OmegaSums sums = ctx.reduce_pairs<OmegaSums>(
      [] { return OmegaSums{}; },
      [&](OmegaSums& acc, uint64_t xi, uint64_t yi, double, double, double pp,
          std::span<const double> wrow) {
        const double* pzy = ctx.pzy_row(yi).data();
        const double* pzx = ctx.pzx_row(xi).data();
        const double* pz = ctx.pz().data();
        OmegaBlock blk;  // per-pair tree sums keep long z rows well-conditioned
        for (uint64_t z = 0; z < zn; ++z) {
          const double w = wrow[z];
          if (w == 0.0) continue;
          const double p = pp * w;
          // branch 1: i(x;z|y)/n <= R1 - gamma
          if (w <= th.t1 * pzy[z])
            blk.s1.add(p * (w / pzy[z]));
          else
            blk.out1.add(p);
          // branch 2: i(y;z|x)/n <= R2 - gamma
          if (w <= th.t2 * pzx[z])
            blk.s2.add(p * (w / pzx[z]));
          else
            blk.out2.add(p);
          // branch 3: all three unconditional-density conditions
          if (pzx[z] <= th.t1 * pz[z] && pzy[z] <= th.t2 * pz[z] && w <= th.tj * pz[z]) {
            blk.s3x.add(p * (pzx[z] / pz[z]));
            blk.s3y.add(p * (pzy[z] / pz[z]));
            blk.s3j.add(p * (w / pz[z]));
          } else {
            blk.out3.add(p);
          }
        }
        acc = add_sums(acc, blk.values());
      },
      add_sums);

  OmegaBreakdown out;
  out.gamma = gamma;
  out.branch[0] = {sums.out1, th.f1 * sums.s1, 0.0};
  out.branch[1] = {sums.out2, th.f2 * sums.s2, 0.0};
  out.branch[2] = {sums.out3, th.f1 * sums.s3x + th.f2 * sums.s3y + th.fj * sums.s3j, 0.0};
  out.min_branch = 1;
  out.omega_min = 0.0;
  for (int t = 0; t < 3; ++t) {
    auto& b = out.branch[t];
    b.omega = 4.0 * b.omega1 + 3.0 * std::sqrt(b.omega2);
    if (t == 0 || b.omega < out.omega_min) {
      out.omega_min = b.omega;
      out.min_branch = t + 1;
    }
  }
  return out;
}

OmegaBreakdown omega_point(RatePoint rates, double gamma, const SequenceDistribution& px,
                           const SequenceDistribution& py, const MacChannel& w, int n) {
  JointContext ctx(px, py, w, n);
  return omega_point(rates, gamma, ctx);
}

TripleSet t_set(int t, RatePoint rates, double gamma, const SequenceDistribution& px,
                const SequenceDistribution& py, const MacChannel& w, int n) {
  check_branch_index(t);
  if (gamma < 0.0) throw UsageError("gamma must be >= 0");
  JointContext ctx(px, py, w, n);
  const Thresholds th = make_thresholds(rates, gamma, n);
  TripleSet s(w.in1(), w.in2(), w.out(), n, false);
  ctx.for_each_triple([&](uint64_t xi, uint64_t yi, uint64_t zi, double, double wv) {
    const double pzy = ctx.pzy_row(yi)[zi];
    const double pzx = ctx.pzx_row(xi)[zi];
    const double pz = ctx.pz()[zi];
    bool in = false;
    switch (t) {
      case 1: in = wv <= th.t1 * pzy; break;
      case 2: in = wv <= th.t2 * pzx; break;
      case 3: in = pzx <= th.t1 * pz && pzy <= th.t2 * pz && wv <= th.tj * pz; break;
    }
    if (in) s.set(xi, yi, zi);
  });
  return s;
}

double zeta(int t, RatePoint rates, const TripleSet& s, const JointContext& ctx) {
  check_branch_index(t);
  if (!s.dims_match(ctx.channel().in1(), ctx.channel().in2(), ctx.channel().out(),
                    ctx.block_len()))
    throw DimensionError("triple set does not match the ensemble dimensions");
  const int n = ctx.block_len();
  const Thresholds th = make_thresholds(rates, 0.0, n);
  const uint64_t zn = ctx.zn();

  struct Sums {
    double a = 0, b = 0, c = 0;
  };
  auto add3 = [](Sums l, Sums r) {
    l.a += r.a;
    l.b += r.b;
    l.c += r.c;
    return l;
  };

  Sums sums = ctx.reduce_pairs<Sums>(
      [] { return Sums{}; },
      [&](Sums& acc, uint64_t xi, uint64_t yi, double, double, double pp,
          std::span<const double> wrow) {
        const double* pzy = ctx.pzy_row(yi).data();
        const double* pzx = ctx.pzx_row(xi).data();
        const double* pz = ctx.pz().data();
        PairwiseSum a, b, c;
        for (uint64_t z = 0; z < zn; ++z) {
          const double w = wrow[z];
          if (w == 0.0 || !s.contains(xi, yi, z)) continue;
          const double p = pp * w;
          switch (t) {
            case 1: a.add(p * (w / pzy[z])); break;
            case 2: a.add(p * (w / pzx[z])); break;
            case 3:
              a.add(p * (pzx[z] / pz[z]));
              b.add(p * (pzy[z] / pz[z]));
              c.add(p * (w / pz[z]));
              break;
          }
        }
        acc = add3(acc, {a.value(), b.value(), c.value()});
      },
      add3);

  switch (t) {
    case 1: return th.f1 * sums.a;
    case 2: return th.f2 * sums.a;
    default: return th.f1 * sums.a + th.f2 * sums.b + th.fj * sums.c;
  }
}

double zeta(int t, RatePoint rates, const TripleSet& s, const SequenceDistribution& px,
            const SequenceDistribution& py, const MacChannel& w, int n) {
  JointContext ctx(px, py, w, n);
  return zeta(t, rates, s, ctx);
}

// ---- input search -------------------------------------------------------------

namespace {

// All compositions of `res` into `k` nonnegative parts, lexicographic.
void compositions(int res, int k, std::vector<int>& cur,
                  std::vector<std::vector<int>>& out) {
  if (k == 1) {
    cur.push_back(res);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int v = 0; v <= res; ++v) {
    cur.push_back(v);
    compositions(res - v, k - 1, cur, out);
    cur.pop_back();
  }
}

std::vector<std::vector<double>> simplex_grid(uint32_t k, int res) {
  std::vector<std::vector<int>> comps;
  std::vector<int> cur;
  compositions(res, static_cast<int>(k), cur, comps);
  std::vector<std::vector<double>> out;
  out.reserve(comps.size());
  for (const auto& c : comps) {
    std::vector<double> p(k);
    for (uint32_t i = 0; i < k; ++i) p[i] = static_cast<double>(c[i]) / res;
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace

std::vector<std::pair<SequenceDistribution, SequenceDistribution>> policy_candidates(
    const MacChannel& w, int n, const InputSearchPolicy& policy) {
  std::vector<std::pair<SequenceDistribution, SequenceDistribution>> out = policy.explicit_list;
  for (const auto& [px, py] : out)
    check_channel_inputs(px, py, w, n);
  if (policy.mode == InputSearchPolicy::Mode::ExplicitList) {
    if (out.empty()) throw UsageError("explicit-list search policy with an empty list");
    return out;
  }
  if (policy.grid_resolution < 2) throw UsageError("grid resolution must be >= 2");
  auto gx = simplex_grid(w.in1().size, policy.grid_resolution);
  auto gy = simplex_grid(w.in2().size, policy.grid_resolution);
  for (const auto& lx : gx)
    for (const auto& ly : gy)
      out.emplace_back(SequenceDistribution::iid(w.in1(), n, lx),
                       SequenceDistribution::iid(w.in2(), n, ly));
  return out;
}

namespace {

// One coordinate-ascent pass over per-letter parameters around the best grid
// point: push mass toward/away from each symbol, renormalize, keep strict
// improvements. Deterministic.
std::pair<std::vector<double>, std::vector<double>> ascend(
    std::vector<double> lx, std::vector<double> ly, const MacChannel& w, int n, RatePoint rates,
    double gamma, int iters, double* best) {
  auto eval = [&](const std::vector<double>& ax, const std::vector<double>& ay) {
    JointContext ctx(SequenceDistribution::iid(w.in1(), n, ax),
                     SequenceDistribution::iid(w.in2(), n, ay), w, n);
    return omega_point(rates, gamma, ctx).omega_min;
  };
  double step = 0.5 / 2.0;
  for (int it = 0; it < iters; ++it, step *= 0.5) {
    for (int side = 0; side < 2; ++side) {
      auto& vec = side == 0 ? lx : ly;
      for (size_t k = 0; k < vec.size(); ++k) {
        for (double dir : {+1.0, -1.0}) {
          auto cand = vec;
          cand[k] = std::clamp(cand[k] + dir * step, 0.0, 1.0);
          double tot = 0.0;
          for (double v : cand) tot += v;
          if (tot <= 0.0) continue;
          for (double& v : cand) v /= tot;
          auto& other = side == 0 ? ly : lx;
          double val = side == 0 ? eval(cand, other) : eval(other, cand);
          if (val > *best) {
            *best = val;
            vec = cand;
          }
        }
      }
    }
  }
  return {lx, ly};
}

}  // namespace

OmegaChannelResult omega_channel(RatePoint rates, double gamma, const MacChannel& w, int n,
                                 const InputSearchPolicy& policy) {
  auto candidates = policy_candidates(w, n, policy);
  OmegaChannelResult res;
  res.candidates = candidates.size();
  size_t best_idx = 0;
  bool first = true;
  for (size_t i = 0; i < candidates.size(); ++i) {
    const auto& [px, py] = candidates[i];
    JointContext ctx(px, py, w, n);
    OmegaBreakdown b = omega_point(rates, gamma, ctx);
    if (first || b.omega_min > res.omega) {
      res.omega = b.omega_min;
      res.best = b;
      res.best_px = px;
      res.best_py = py;
      best_idx = i;
      first = false;
    }
  }
  const size_t explicit_count = policy.explicit_list.size();
  if (policy.mode == InputSearchPolicy::Mode::IidGridAscent && policy.ascent_iters > 0 &&
      !first && best_idx >= explicit_count) {
    // the winner is an i.i.d. grid point: recover its per-letter parameters
    // and hill-climb from there (explicit winners are kept as-is)
    auto gx = simplex_grid(w.in1().size, policy.grid_resolution);
    auto gy = simplex_grid(w.in2().size, policy.grid_resolution);
    size_t grid_idx = best_idx - explicit_count;
    std::vector<double> lx = gx[grid_idx / gy.size()];
    std::vector<double> ly = gy[grid_idx % gy.size()];
    double best = res.omega;
    auto [ax, ay] = ascend(lx, ly, w, n, rates, gamma, policy.ascent_iters, &best);
    if (best > res.omega) {
      SequenceDistribution apx = SequenceDistribution::iid(w.in1(), n, ax);
      SequenceDistribution apy = SequenceDistribution::iid(w.in2(), n, ay);
      JointContext ctx(apx, apy, w, n);
      res.best = omega_point(rates, gamma, ctx);
      res.omega = res.best.omega_min;
      res.best_px = apx;
      res.best_py = apy;
    }
  }
  return res;
}

// ---- identity verification -------------------------------------------------------

OmegaCheckInstance make_random_instance(uint64_t seed, int max_alpha, int max_n) {
  auto pick = [&](uint64_t tag, int lo, int hi) {
    return lo + static_cast<int>(counter_rand(seed, 0x11, tag) % (hi - lo + 1));
  };
  Alphabet x{static_cast<uint32_t>(pick(1, 2, max_alpha))};
  Alphabet y{static_cast<uint32_t>(pick(2, 2, max_alpha))};
  Alphabet z{static_cast<uint32_t>(pick(3, 2, max_alpha))};
  int n = pick(4, 1, max_n);
  // random kernel rows
  std::vector<double> kernel(static_cast<uint64_t>(x.size) * y.size * z.size);
  for (uint32_t a = 0; a < x.size; ++a)
    for (uint32_t b = 0; b < y.size; ++b) {
      double tot = 0.0;
      for (uint32_t c = 0; c < z.size; ++c) {
        double v = -std::log(1.0 - counter_u01(seed, 0x22, (a * y.size + b) * z.size + c));
        kernel[(static_cast<uint64_t>(a) * y.size + b) * z.size + c] = v;
        tot += v;
      }
      for (uint32_t c = 0; c < z.size; ++c)
        kernel[(static_cast<uint64_t>(a) * y.size + b) * z.size + c] /= tot;
    }
  MacChannel w = MacChannel::memoryless(x, y, z, std::move(kernel));
  SequenceDistribution px = SequenceDistribution::random(x, n, derive_seed(seed, 5));
  SequenceDistribution py = SequenceDistribution::random(y, n, derive_seed(seed, 6));
  RatePoint rates{1.5 * counter_u01(seed, 0x33, 1), 1.5 * counter_u01(seed, 0x33, 2)};
  return {std::move(w), std::move(px), std::move(py), n, rates,
          "random(seed=" + std::to_string(seed) + ")"};
}

OmegaIdentityReport verify_omega_identities(std::span<const OmegaCheckInstance> instances,
                                            double gamma, double tau, double tol) {
  if (!(gamma >= 0.0 && gamma < tau)) throw UsageError("need 0 <= gamma < tau");
  OmegaIdentityReport report;
  auto note = [&](const OmegaCheckInstance& inst, const char* what, double lhs, double rhs) {
    ++report.checks;
    if (lhs > rhs + tol)
      report.violations.push_back(inst.label + ": " + what + ": lhs=" + std::to_string(lhs) +
                                  " rhs=" + std::to_string(rhs) +
                                  " excess=" + std::to_string(lhs - rhs));
  };
  auto note_eq = [&](const OmegaCheckInstance& inst, const char* what, double a, double b) {
    ++report.checks;
    if (std::abs(a - b) > tol)
      report.violations.push_back(inst.label + ": " + what + ": |" + std::to_string(a) + " - " +
                                  std::to_string(b) + "| = " + std::to_string(std::abs(a - b)));
  };

  for (const auto& inst : instances) {
    JointContext ctx(inst.px, inst.py, inst.w, inst.n);
    const int n = inst.n;
    OmegaBreakdown at_gamma = omega_point(inst.rates, gamma, ctx);
    OmegaBreakdown shifted0 = omega_point(inst.rates.shifted(gamma), 0.0, ctx);
    OmegaBreakdown at_tau = omega_point(inst.rates, tau, ctx);
    for (const auto& b : {at_gamma, shifted0, at_tau}) report.omega_values.push_back(b.omega_min);

    const double eg = std::exp(-static_cast<double>(n) * gamma);
    const double et = std::exp(-static_cast<double>(n) * tau);
    for (int t = 0; t < 3; ++t) {
      // shift identities for the out-of-set probability
      note_eq(inst, "omega1 shift identity", at_gamma.branch[t].omega1, shifted0.branch[t].omega1);
      // range bounds for the out-of-set probability
      note(inst, "omega1 <= 1", at_gamma.branch[t].omega1, 1.0);
      note(inst, "omega1 >= 0", 0.0, at_gamma.branch[t].omega1);
      note(inst, "omega2 >= 0", 0.0, at_gamma.branch[t].omega2);
    }
    // zeta shift: equality for t = 1, 2 and inequality for t = 3
    note_eq(inst, "omega2 shift identity t=1", at_gamma.branch[0].omega2,
            eg * shifted0.branch[0].omega2);
    note_eq(inst, "omega2 shift identity t=2", at_gamma.branch[1].omega2,
            eg * shifted0.branch[1].omega2);
    note(inst, "omega2 shift bound t=3", at_gamma.branch[2].omega2,
         eg * shifted0.branch[2].omega2);
    // exponential bounds
    note(inst, "omega2 <= e^-n*gamma (t=1)", at_gamma.branch[0].omega2, eg);
    note(inst, "omega2 <= e^-n*gamma (t=2)", at_gamma.branch[1].omega2, eg);
    note(inst, "omega2 <= 3 e^-n*gamma (t=3)", at_gamma.branch[2].omega2, 3.0 * eg);
    // tau-difference bounds
    for (int t = 0; t < 3; ++t) {
      double head = (t == 2 ? 3.0 : 1.0) * et;
      note(inst, "omega2 tau-difference bound", at_gamma.branch[t].omega2,
           head + at_tau.branch[t].omega1 - at_gamma.branch[t].omega1);
    }
    ++report.instances;
  }
  return report;
}

}  // namespace macid
