#include "macid/resolvability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "macid/rng.hpp"

namespace macid {

BigUint count_m_types(uint64_t k, uint64_t m) {
  if (k < 1 || m < 1) throw UsageError("count_m_types needs k >= 1 and m >= 1");
  BigUint count = BigUint::binomial(m + k - 1, k - 1);
  BigUint bound = BigUint::pow(k, m);
  if (!(count <= bound))
    throw ValidationError("m-type count exceeds the k^m cardinality bound");  // unreachable
  return count;
}

std::vector<uint64_t> ResolvabilityCode::counts1(uint64_t xn) const {
  std::vector<uint64_t> c(xn, 0);
  for (uint64_t cw : codewords1) ++c[cw];
  return c;
}

std::vector<uint64_t> ResolvabilityCode::counts2(uint64_t yn) const {
  std::vector<uint64_t> c(yn, 0);
  for (uint64_t cw : codewords2) ++c[cw];
  return c;
}

namespace {
SequenceDistribution type_distribution(Alphabet a, int n, const std::vector<uint64_t>& words,
                                       uint64_t m) {
  SeqSpace space(a, n);
  std::vector<double> p(space.size(), 0.0);
  const double unit = 1.0 / static_cast<double>(m);
  for (uint64_t cw : words) p[cw] += unit;
  return SequenceDistribution(a, n, std::move(p));
}
}  // namespace

SequenceDistribution ResolvabilityCode::induced_px(Alphabet x, int n) const {
  return type_distribution(x, n, codewords1, m1);
}

SequenceDistribution ResolvabilityCode::induced_py(Alphabet y, int n) const {
  return type_distribution(y, n, codewords2, m2);
}

ResolvabilityCode sample_code(const SequenceDistribution& px, const SequenceDistribution& py,
                              uint64_t m1, uint64_t m2, int n, uint64_t seed) {
  if (m1 < 1 || m2 < 1) throw UsageError("codebook sizes must be >= 1");
  if (px.block_len() != n || py.block_len() != n)
    throw DimensionError("codebook inputs must be defined at the requested n");
  ResolvabilityCode code;
  code.m1 = m1;
  code.m2 = m2;
  code.seed = seed;
  code.codewords1.resize(m1);
  code.codewords2.resize(m2);
  const auto& cdfx = px.cdf();
  const auto& cdfy = py.cdf();
  auto draw = [](const std::vector<double>& cdf, double u) {
    return static_cast<uint64_t>(std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
  };
  for (uint64_t j = 0; j < m1; ++j) code.codewords1[j] = draw(cdfx, counter_u01(seed, 1, j));
  for (uint64_t k = 0; k < m2; ++k) code.codewords2[k] = draw(cdfy, counter_u01(seed, 2, k));
  return code;
}

uint64_t codebook_size(double rate, int n) {
  if (rate < 0.0) throw UsageError("rates must be >= 0");
  double v = std::exp(n * rate);
  // e^{nR} can land an ulp above an exact integer; do not let that bump M
  double c = std::ceil(v - 1e-9);
  if (c < 1.0) c = 1.0;
  if (c > 1e15) throw CapExceededError("codebook size e^{nR} too large to materialize");
  return static_cast<uint64_t>(c);
}

ApproxResponses approx_responses(const ResolvabilityCode& code, const SequenceDistribution& px,
                                 const SequenceDistribution& py, const MacChannel& w, int n) {
  SequenceDistribution apx = code.induced_px(w.in1(), n);
  SequenceDistribution apy = code.induced_py(w.in2(), n);
  return ApproxResponses{response(apx, py, w, n), response(px, apy, w, n),
                         response(apx, apy, w, n)};
}

namespace {

struct SetContext {
  const TripleSet* s[3];
  std::vector<TripleSet> s_comp;
  double zeta_v[3];
  double outside[3];
  ResponseMeasure q_s[3];  // true partial responses on S_t
  ResponseMeasure q;       // true full response

  SetContext(const SequenceDistribution& px, const SequenceDistribution& py, const MacChannel& w,
             int n, RatePoint rates, const TripleSet& s1, const TripleSet& s2,
             const TripleSet& s3)
      : q_s{partial_response(px, py, w, s1, n), partial_response(px, py, w, s2, n),
            partial_response(px, py, w, s3, n)},
        q(response(px, py, w, n)) {
    s[0] = &s1;
    s[1] = &s2;
    s[2] = &s3;
    JointContext ctx(px, py, w, n);
    for (int t = 0; t < 3; ++t) {
      s_comp.push_back(s[t]->complement());
      zeta_v[t] = zeta(t + 1, rates, *s[t], ctx);
      // E[1_{S^c}] as a direct nonnegative sum, not 1 - mass(Q_S)
      outside[t] = partial_response(px, py, w, s_comp.back(), n).total();
    }
  }
};

DerandomizationRecord record_for(const ResolvabilityCode& code, const SequenceDistribution& px,
                                 const SequenceDistribution& py, const MacChannel& w, int n,
                                 const SetContext& sc) {
  SequenceDistribution apx = code.induced_px(w.in1(), n);
  SequenceDistribution apy = code.induced_py(w.in2(), n);
  const SequenceDistribution* firsts[3] = {&apx, &px, &apx};
  const SequenceDistribution* seconds[3] = {&py, &apy, &apy};

  DerandomizationRecord rec;
  double crit = 0.0;
  bool rejected = false;
  for (int t = 0; t < 3; ++t) {
    BranchDerand& b = rec.branch[t];
    b.zeta = sc.zeta_v[t];
    b.outside_prob = sc.outside[t];
    b.theta = b.outside_prob + std::sqrt(b.zeta);
    ResponseMeasure approx_on_s = partial_response(*firsts[t], *seconds[t], w, *sc.s[t], n);
    ResponseMeasure approx_on_sc = partial_response(*firsts[t], *seconds[t], w, sc.s_comp[t], n);
    b.lambda = approx_on_sc.total();
    PairwiseSum phi;
    for (uint64_t z = 0; z < approx_on_s.size(); ++z)
      phi.add(std::abs(approx_on_s[z] - sc.q_s[t][z]));
    b.phi = phi.value();
    if (b.theta == 0.0) {
      b.vacuous = true;
      if (b.lambda + b.phi > 0.0) rejected = true;
    } else {
      crit += (b.lambda + b.phi) / b.theta;
    }
  }
  rec.criterion = crit;
  rec.accepted = !rejected && crit <= 3.0;
  return rec;
}

}  // namespace

DerandomizationRecord derandomization_record(const ResolvabilityCode& code,
                                             const SequenceDistribution& px,
                                             const SequenceDistribution& py, const MacChannel& w,
                                             int n, const TripleSet& s1, const TripleSet& s2,
                                             const TripleSet& s3, RatePoint rates) {
  SetContext sc(px, py, w, n, rates, s1, s2, s3);
  return record_for(code, px, py, w, n, sc);
}

SelectResult select_code_with_sets(const SequenceDistribution& px,
                                   const SequenceDistribution& py, const MacChannel& w, int n,
                                   RatePoint rates, const TripleSet& s1, const TripleSet& s2,
                                   const TripleSet& s3, int max_trials, uint64_t seed) {
  if (max_trials < 1) throw UsageError("max_trials must be >= 1");
  SetContext sc(px, py, w, n, rates, s1, s2, s3);
  const uint64_t m1 = codebook_size(rates.r1, n);
  const uint64_t m2 = codebook_size(rates.r2, n);

  SelectResult res;
  res.best_criterion = std::numeric_limits<double>::infinity();
  for (int trial = 0; trial < max_trials; ++trial) {
    ResolvabilityCode code = sample_code(px, py, m1, m2, n, derive_seed(seed, trial));
    DerandomizationRecord rec = record_for(code, px, py, w, n, sc);
    res.best_criterion = std::min(res.best_criterion, rec.criterion);
    if (!rec.accepted) continue;
    res.success = true;
    res.trials_used = trial + 1;
    res.record = rec;
    ApproxResponses aq = approx_responses(code, px, py, w, n);
    res.certificate_ok = true;
    for (int t = 0; t < 3; ++t) {
      res.d_exact[t] = variational_distance(sc.q, aq.at(t + 1));
      res.bound[t] = 4.0 * sc.outside[t] + 3.0 * std::sqrt(sc.zeta_v[t]);
      if (res.d_exact[t] > res.bound[t]) res.certificate_ok = false;
    }
    res.code = std::move(code);
    return res;
  }
  res.trials_used = max_trials;
  return res;
}

SelectResult select_code(const SequenceDistribution& px, const SequenceDistribution& py,
                         const MacChannel& w, int n, RatePoint rates, double gamma,
                         int max_trials, uint64_t seed) {
  TripleSet s1 = t_set(1, rates, gamma, px, py, w, n);
  TripleSet s2 = t_set(2, rates, gamma, px, py, w, n);
  TripleSet s3 = t_set(3, rates, gamma, px, py, w, n);
  return select_code_with_sets(px, py, w, n, rates, s1, s2, s3, max_trials, seed);
}

std::vector<ResolveRow> resolve_rows(const SequenceDistribution& px,
                                     const SequenceDistribution& py, const MacChannel& w, int n,
                                     RatePoint rates, double gamma, int max_trials,
                                     std::span<const uint64_t> seeds) {
  std::vector<ResolveRow> rows;
  rows.reserve(seeds.size() * 3);
  TripleSet s1 = t_set(1, rates, gamma, px, py, w, n);
  TripleSet s2 = t_set(2, rates, gamma, px, py, w, n);
  TripleSet s3 = t_set(3, rates, gamma, px, py, w, n);
  for (uint64_t seed : seeds) {
    SelectResult r = select_code_with_sets(px, py, w, n, rates, s1, s2, s3, max_trials, seed);
    for (int t = 0; t < 3; ++t)
      rows.push_back({n, rates.r1, rates.r2, t + 1, r.success ? r.d_exact[t] : -1.0, r.bound[t],
                      r.success, r.trials_used, seed});
  }
  return rows;
}

std::vector<SweepRow> resolvability_sweep(const MacChannel& w, std::span<const double> px_letter,
                                          std::span<const double> py_letter,
                                          std::span<const int> n_list,
                                          std::span<const RatePoint> rate_grid, double gamma,
                                          int max_trials, std::span<const uint64_t> seeds) {
  std::vector<SweepRow> out;
  for (int n : n_list) {
    SequenceDistribution px = SequenceDistribution::iid(w.in1(), n, px_letter);
    SequenceDistribution py = SequenceDistribution::iid(w.in2(), n, py_letter);
    for (const RatePoint& rates : rate_grid) {
      auto rows = resolve_rows(px, py, w, n, rates, gamma, max_trials, seeds);
      for (int t = 1; t <= 3; ++t) {
        SweepRow agg{n, rates.r1, rates.r2, t, 0.0,
                     std::numeric_limits<double>::infinity(),
                     -std::numeric_limits<double>::infinity(), 0.0, 0.0};
        int ok = 0;
        for (const auto& r : rows) {
          if (r.t != t) continue;
          agg.bound = r.bound;
          if (!r.accepted) continue;
          ++ok;
          agg.d_mean += r.d_exact;
          agg.d_min = std::min(agg.d_min, r.d_exact);
          agg.d_max = std::max(agg.d_max, r.d_exact);
        }
        agg.accept_rate = seeds.empty() ? 0.0 : static_cast<double>(ok) / seeds.size();
        agg.d_mean = ok ? agg.d_mean / ok : -1.0;
        out.push_back(agg);
      }
    }
  }
  return out;
}

}  // namespace macid
