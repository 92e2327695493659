#include "macid/id_converse.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include <json.hpp>

#include "macid/rng.hpp"

namespace macid {

DecoderArray::DecoderArray(uint64_t n1, uint64_t n2, uint64_t zn)
    : n1_(n1), n2_(n2), zn_(zn), wpr_((zn + 63) / 64) {
  if (n1 < 1 || n2 < 1) throw ValidationError("ID code needs N1, N2 >= 1");
  bits_.assign(n1 * n2 * wpr_, 0);
}

// ---- JSON ----------------------------------------------------------------------

IdCode IdCode::from_json_text(const std::string& text, const MacChannel& w) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("code file parse error: ") + e.what());
  }
  try {
    int n = j.at("n").get<int>();
    auto read_inputs = [n](const nlohmann::json& arr, Alphabet a) {
      std::vector<SequenceDistribution> out;
      for (const auto& v : arr)
        out.emplace_back(a, n, v.get<std::vector<double>>());
      return out;
    };
    std::vector<SequenceDistribution> in1 = read_inputs(j.at("inputs1"), w.in1());
    std::vector<SequenceDistribution> in2 = read_inputs(j.at("inputs2"), w.in2());
    if (in1.empty() || in2.empty()) throw ValidationError("ID code needs N1, N2 >= 1");
    SeqSpace zs(w.out(), n);
    DecoderArray dec(in1.size(), in2.size(), zs.size());
    const auto& rows = j.at("decoders");
    if (rows.size() != in1.size()) throw ValidationError("decoders outer size must be N1");
    for (uint64_t i = 0; i < in1.size(); ++i) {
      if (rows[i].size() != in2.size()) throw ValidationError("decoders inner size must be N2");
      for (uint64_t jj = 0; jj < in2.size(); ++jj)
        for (const auto& z : rows[i][jj]) {
          uint64_t zi = z.get<uint64_t>();
          if (zi >= zs.size()) throw ValidationError("decoder index out of Z^n range");
          dec.set(i, jj, zi);
        }
    }
    return IdCode{n, std::move(in1), std::move(in2), std::move(dec)};
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("code file field error: ") + e.what());
  }
}

IdCode IdCode::load(const std::string& path, const MacChannel& w) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open code file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json_text(ss.str(), w);
}

std::string IdCode::to_json_text() const {
  nlohmann::json j;
  j["n"] = n;
  auto dump_inputs = [](const std::vector<SequenceDistribution>& v) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& d : v)
      arr.push_back(std::vector<double>(d.probs().begin(), d.probs().end()));
    return arr;
  };
  j["inputs1"] = dump_inputs(inputs1);
  j["inputs2"] = dump_inputs(inputs2);
  nlohmann::json rows = nlohmann::json::array();
  for (uint64_t i = 0; i < n1(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (uint64_t jj = 0; jj < n2(); ++jj) {
      nlohmann::json zs = nlohmann::json::array();
      for (uint64_t z = 0; z < decoders.zn(); ++z)
        if (decoders.contains(i, jj, z)) zs.push_back(z);
      row.push_back(std::move(zs));
    }
    rows.push_back(std::move(row));
  }
  j["decoders"] = std::move(rows);
  return j.dump();
}

// ---- evaluation ----------------------------------------------------------------

namespace {

// Deduplicates a list of vectors, returning class ids and distinct values.
template <class V>
struct Dedup {
  std::vector<uint32_t> cls;
  std::vector<V> distinct;
};

template <class Get>
Dedup<std::vector<double>> dedup_vectors(uint64_t count, Get get) {
  Dedup<std::vector<double>> out;
  out.cls.resize(count);
  std::map<std::vector<double>, uint32_t> seen;
  for (uint64_t i = 0; i < count; ++i) {
    std::vector<double> v = get(i);
    auto [it, inserted] = seen.emplace(v, static_cast<uint32_t>(out.distinct.size()));
    if (inserted) out.distinct.push_back(std::move(v));
    out.cls[i] = it->second;
  }
  return out;
}

}  // namespace

IdErrorReport evaluate_id_code(const IdCode& code, const MacChannel& w) {
  const uint64_t n1 = code.n1(), n2 = code.n2();
  const int n = code.n;
  if (n1 == 0 || n2 == 0) throw ValidationError("ID code needs N1, N2 >= 1");
  for (const auto& d : code.inputs1) check_channel_inputs(d, code.inputs2.front(), w, n);
  for (const auto& d : code.inputs2) check_channel_inputs(code.inputs1.front(), d, w, n);
  SeqSpace zs(w.out(), n);
  const uint64_t zn = zs.size();

  // distinct input rows
  auto dx = dedup_vectors(n1, [&](uint64_t i) {
    return std::vector<double>(code.inputs1[i].probs().begin(), code.inputs1[i].probs().end());
  });
  auto dy = dedup_vectors(n2, [&](uint64_t j) {
    return std::vector<double>(code.inputs2[j].probs().begin(), code.inputs2[j].probs().end());
  });
  const uint64_t u1 = dx.distinct.size(), u2 = dy.distinct.size();
  if (u1 * u2 > state_cap() / std::max<uint64_t>(zn, 1))
    throw CapExceededError("ID code has too many distinct response cells: " +
                           std::to_string(u1) + " x " + std::to_string(u2));

  // distinct responses over distinct input pairs
  std::vector<uint32_t> rid(u1 * u2);
  std::vector<std::vector<double>> responses;
  {
    std::map<std::vector<double>, uint32_t> seen;
    for (uint64_t a = 0; a < u1; ++a) {
      SequenceDistribution pa(w.in1(), n, dx.distinct[a]);
      for (uint64_t b = 0; b < u2; ++b) {
        SequenceDistribution pb(w.in2(), n, dy.distinct[b]);
        ResponseMeasure q = response(pa, pb, w, n);
        std::vector<double> v(q.mass().begin(), q.mass().end());
        auto [it, inserted] = seen.emplace(std::move(v), static_cast<uint32_t>(responses.size()));
        if (inserted) responses.push_back(it->first);
        rid[a * u2 + b] = it->second;
      }
    }
  }
  const uint64_t ng = responses.size();

  // distinct decoder masks
  std::vector<uint32_t> did(n1 * n2);
  std::vector<std::vector<uint64_t>> masks;
  {
    std::map<std::vector<uint64_t>, uint32_t> seen;
    for (uint64_t i = 0; i < n1; ++i)
      for (uint64_t j = 0; j < n2; ++j) {
        auto row = code.decoders.row(i, j);
        std::vector<uint64_t> v(row.begin(), row.end());
        auto [it, inserted] = seen.emplace(std::move(v), static_cast<uint32_t>(masks.size()));
        if (inserted) masks.push_back(it->first);
        did[i * n2 + j] = it->second;
      }
  }
  const uint64_t nd = masks.size();
  if (ng * nd > state_cap() / std::max<uint64_t>(zn / 64 + 1, 1))
    throw CapExceededError("ID code response/decoder class table too large: " +
                           std::to_string(ng) + " x " + std::to_string(nd));

  // in-mask and out-of-mask response mass per (response class, mask class)
  std::vector<double> dot(ng * nd), dotc(ng * nd);
  for (uint64_t g = 0; g < ng; ++g) {
    const auto& q = responses[g];
    for (uint64_t d = 0; d < nd; ++d) {
      const auto& m = masks[d];
      PairwiseSum in, out;
      for (uint64_t z = 0; z < zn; ++z) {
        if ((m[z >> 6] >> (z & 63)) & 1)
          in.add(q[z]);
        else
          out.add(q[z]);
      }
      dot[g * nd + d] = in.value();
      dotc[g * nd + d] = out.value();
    }
  }

  // cells per response class (for the own-cell exclusion in lambda)
  std::vector<uint64_t> class_count(ng, 0);
  for (uint64_t i = 0; i < n1; ++i) {
    const uint32_t a = dx.cls[i];
    for (uint64_t j = 0; j < n2; ++j) ++class_count[rid[a * u2 + dy.cls[j]]];
  }

  // per mask class: best and second-best response mass over classes
  std::vector<double> best1(nd, -1.0), best2(nd, -1.0);
  std::vector<uint32_t> arg1(nd, 0);
  for (uint64_t d = 0; d < nd; ++d)
    for (uint64_t g = 0; g < ng; ++g) {
      double v = dot[g * nd + d];
      if (v > best1[d]) {
        best2[d] = best1[d];
        best1[d] = v;
        arg1[d] = static_cast<uint32_t>(g);
      } else if (v > best2[d]) {
        best2[d] = v;
      }
    }

  IdErrorReport rep;
  rep.n1 = n1;
  rep.n2 = n2;
  rep.mu.resize(n1 * n2);
  rep.lambda.resize(n1 * n2);
  rep.degenerate_lambda = (n1 * n2 == 1);
  PairwiseSum mu_sum, lambda_sum;
  for (uint64_t i = 0; i < n1; ++i) {
    const uint32_t a = dx.cls[i];
    for (uint64_t j = 0; j < n2; ++j) {
      const uint64_t cell = i * n2 + j;
      const uint32_t g = rid[a * u2 + dy.cls[j]];
      const uint32_t d = did[cell];
      const double mu = dotc[g * nd + d];
      double lam;
      if (rep.degenerate_lambda)
        lam = 0.0;  // no competing message pair exists
      else if (class_count[g] >= 2 || arg1[d] != g)
        lam = best1[d];
      else
        lam = best2[d];
      rep.mu[cell] = mu;
      rep.lambda[cell] = lam;
      rep.mu_max = std::max(rep.mu_max, mu);
      rep.lambda_max = std::max(rep.lambda_max, lam);
      mu_sum.add(mu);
      lambda_sum.add(lam);
    }
  }
  const double cells = static_cast<double>(n1) * static_cast<double>(n2);
  rep.mu_avg = mu_sum.value() / cells;
  rep.lambda_avg = lambda_sum.value() / cells;

  rep.rate1_defined = n1 >= 2;
  rep.rate2_defined = n2 >= 2;
  rep.r1n = rep.rate1_defined
                ? std::log(std::log(static_cast<double>(n1))) / n
                : -std::numeric_limits<double>::infinity();
  rep.r2n = rep.rate2_defined
                ? std::log(std::log(static_cast<double>(n2))) / n
                : -std::numeric_limits<double>::infinity();
  return rep;
}

// ---- rate conditions and nu ------------------------------------------------------

double required_id_rate_max(double rate, int n, uint32_t alphabet_size) {
  if (alphabet_size < 2) throw ValidationError("rate condition needs alphabet size >= 2");
  double nn = static_cast<double>(n);
  return rate + std::log(nn) / nn + std::log(2.0 * std::log(3.0 * alphabet_size)) / nn;
}

double required_id_rate_avg(double rate, double tau, int n, uint32_t alphabet_size) {
  if (alphabet_size < 2) throw ValidationError("rate condition needs alphabet size >= 2");
  if (!(tau > 0.0)) throw UsageError("tau must be > 0 under the average criterion");
  double nn = static_cast<double>(n);
  return rate + tau + std::log(nn) / nn + std::log(2.0 * std::log(alphabet_size)) / nn;
}

RateCheck check_rate_condition(const IdErrorReport& report, RatePoint rates,
                               ErrorCriterion criterion, double tau, uint32_t x_size,
                               uint32_t y_size, int n) {
  if (report.n1 < 3 || report.n2 < 3)
    throw ValidationError("ID rate undefined: need N1, N2 >= 3 for a positive log log");
  RateCheck rc;
  rc.r1 = report.r1n;
  rc.r2 = report.r2n;
  if (criterion == ErrorCriterion::Max) {
    rc.required1 = required_id_rate_max(rates.r1, n, x_size);
    rc.required2 = required_id_rate_max(rates.r2, n, y_size);
  } else {
    rc.required1 = required_id_rate_avg(rates.r1, tau, n, x_size);
    rc.required2 = required_id_rate_avg(rates.r2, tau, n, y_size);
  }
  rc.margin1 = rc.r1 - rc.required1;
  rc.margin2 = rc.r2 - rc.required2;
  rc.ok = rc.margin1 >= 0.0 && rc.margin2 >= 0.0;
  return rc;
}

double nu_value(int n, double tau, double r1, double r2, uint32_t x_size, uint32_t y_size) {
  if (!(tau > 0.0)) throw UsageError("tau must be > 0");
  double nn = static_cast<double>(n);
  double ex = -2.0 * nn * std::expm1(nn * tau) * std::exp(nn * r1) * std::log(x_size);
  double ey = -2.0 * nn * std::expm1(nn * tau) * std::exp(nn * r2) * std::log(y_size);
  double a = std::exp(ex), b = std::exp(ey);
  return a + b + a * b;
}

// ---- converse-bound checks -------------------------------------------------------

namespace {

// The searched omega must dominate the code's own cells, so every distinct
// input pair of the code joins the candidate list.
InputSearchPolicy with_code_inputs(const IdCode& code, InputSearchPolicy policy) {
  auto dx = dedup_vectors(code.n1(), [&](uint64_t i) {
    return std::vector<double>(code.inputs1[i].probs().begin(), code.inputs1[i].probs().end());
  });
  auto dy = dedup_vectors(code.n2(), [&](uint64_t j) {
    return std::vector<double>(code.inputs2[j].probs().begin(), code.inputs2[j].probs().end());
  });
  for (const auto& vx : dx.distinct)
    for (const auto& vy : dy.distinct)
      policy.explicit_list.emplace_back(
          SequenceDistribution(code.inputs1.front().alphabet(), code.n, vx),
          SequenceDistribution(code.inputs2.front().alphabet(), code.n, vy));
  return policy;
}

ConverseVerdict converse_verdict(const IdCode& code, const IdErrorReport& report,
                                 const MacChannel& w, RatePoint rates, double gamma,
                                 double tau, ErrorCriterion criterion,
                                 const InputSearchPolicy& policy) {
  ConverseVerdict v;
  v.rate = check_rate_condition(report, rates, criterion, tau, w.in1().size, w.in2().size, code.n);
  v.rate_ok = v.rate.ok;
  v.error_sum = criterion == ErrorCriterion::Max ? report.mu_max + report.lambda_max
                                                 : report.mu_avg + report.lambda_avg;
  v.lhs = 1.0 - v.error_sum;
  v.vacuous = !v.rate_ok || v.error_sum >= 1.0;
  if (!v.rate_ok)
    v.label = "rate condition not met";
  else if (v.error_sum >= 1.0)
    v.label = "error sum >= 1";
  OmegaChannelResult oc = omega_channel(rates, gamma, w, code.n, with_code_inputs(code, policy));
  v.omega = oc.omega;
  v.nu = criterion == ErrorCriterion::Avg
             ? nu_value(code.n, tau, rates.r1, rates.r2, w.in1().size, w.in2().size)
             : 0.0;
  v.rhs = v.omega + v.nu;
  v.holds = v.lhs <= v.rhs;
  return v;
}

}  // namespace

ConverseVerdict check_max_converse(const IdCode& code, const IdErrorReport& report,
                                   const MacChannel& w, RatePoint rates, double gamma,
                                   const InputSearchPolicy& policy) {
  return converse_verdict(code, report, w, rates, gamma, 1.0, ErrorCriterion::Max, policy);
}

ConverseVerdict check_avg_converse(const IdCode& code, const IdErrorReport& report,
                                   const MacChannel& w, RatePoint rates, double gamma,
                                   double tau, const InputSearchPolicy& policy) {
  return converse_verdict(code, report, w, rates, gamma, tau, ErrorCriterion::Avg, policy);
}

// ---- collision demonstrator ------------------------------------------------------

CollisionReport collision_demo(const IdCode& code, const MacChannel& w, RatePoint rates,
                               double gamma, uint64_t seed, int max_trials,
                               const InputSearchPolicy& policy) {
  const int n = code.n;
  IdErrorReport report = evaluate_id_code(code, w);
  CollisionReport out;
  out.mu_n = report.mu_max;
  out.lambda_n = report.lambda_max;
  out.eta = omega_channel(rates, gamma, w, n, with_code_inputs(code, policy)).omega;

  // distinct input pairs and their responses
  auto dx = dedup_vectors(code.n1(), [&](uint64_t i) {
    return std::vector<double>(code.inputs1[i].probs().begin(), code.inputs1[i].probs().end());
  });
  auto dy = dedup_vectors(code.n2(), [&](uint64_t j) {
    return std::vector<double>(code.inputs2[j].probs().begin(), code.inputs2[j].probs().end());
  });
  const uint64_t u1 = dx.distinct.size(), u2 = dy.distinct.size();

  std::vector<ResponseMeasure> qr;  // per distinct pair
  qr.reserve(u1 * u2);
  std::vector<int> cluster(u1 * u2, -1);
  std::map<std::pair<int, std::vector<double>>, int> centers;
  for (uint64_t a = 0; a < u1; ++a) {
    SequenceDistribution pa(w.in1(), n, dx.distinct[a]);
    for (uint64_t b = 0; b < u2; ++b) {
      SequenceDistribution pb(w.in2(), n, dy.distinct[b]);
      qr.push_back(response(pa, pb, w, n));
      SelectResult sel = select_code(pa, pb, w, n, rates, gamma, max_trials,
                                     derive_seed(seed, a * u2 + b));
      if (!sel.success) continue;
      ApproxResponses aq = approx_responses(sel.code, pa, pb, w, n);
      int tbest = 0;
      for (int t = 1; t < 3; ++t)
        if (sel.d_exact[t] < sel.d_exact[tbest]) tbest = t;
      if (sel.d_exact[tbest] > out.eta) continue;
      const ResponseMeasure& center = aq.at(tbest + 1);
      std::pair<int, std::vector<double>> key{
          tbest, std::vector<double>(center.mass().begin(), center.mass().end())};
      auto [it, inserted] = centers.emplace(std::move(key), static_cast<int>(centers.size()));
      cluster[a * u2 + b] = it->second;
    }
  }
  out.clusters = centers.size();

  // representative cell per distinct pair (first (i,j) with those classes)
  std::vector<std::pair<uint64_t, uint64_t>> rep_cell(u1 * u2, {0, 0});
  std::vector<bool> have(u1 * u2, false);
  for (uint64_t i = 0; i < code.n1(); ++i)
    for (uint64_t j = 0; j < code.n2(); ++j) {
      uint64_t k = dx.cls[i] * u2 + dy.cls[j];
      if (!have[k]) {
        rep_cell[k] = {i, j};
        have[k] = true;
      }
    }

  for (uint64_t k = 0; k < u1 * u2; ++k)
    if (have[k]) (cluster[k] >= 0 ? out.assigned : out.unassigned) += 1;

  auto emit = [&](std::vector<CollisionPair>& list, uint64_t ka, uint64_t kb) {
    double d = variational_distance(qr[ka], qr[kb]);
    auto [i1, j1] = rep_cell[ka];
    auto [i2, j2] = rep_cell[kb];
    list.push_back({i1, j1, i2, j2, d});
    if (2.0 * (1.0 - out.mu_n - out.lambda_n) > d) out.bound_consistent = false;
  };

  for (uint64_t ka = 0; ka < u1 * u2; ++ka) {
    if (!have[ka]) continue;
    for (uint64_t kb = ka + 1; kb < u1 * u2; ++kb) {
      if (!have[kb]) continue;
      if (cluster[ka] >= 0 && cluster[ka] == cluster[kb]) emit(out.collisions, ka, kb);
      if (variational_distance(qr[ka], qr[kb]) <= 2.0 * out.eta)
        emit(out.oracle_collisions, ka, kb);
    }
  }
  return out;
}

// ---- generators ------------------------------------------------------------------

IdCode make_point_mass_code(const MacChannel& w, int n, uint64_t n1, uint64_t n2) {
  SeqSpace xs(w.in1(), n), ys(w.in2(), n), zs(w.out(), n);
  std::vector<SequenceDistribution> in1, in2;
  for (uint64_t i = 0; i < n1; ++i)
    in1.push_back(SequenceDistribution::point_mass(w.in1(), n, i % xs.size()));
  for (uint64_t j = 0; j < n2; ++j)
    in2.push_back(SequenceDistribution::point_mass(w.in2(), n, j % ys.size()));
  DecoderArray dec(n1, n2, zs.size());
  for (uint64_t i = 0; i < n1; ++i)
    for (uint64_t j = 0; j < n2; ++j) {
      ResponseMeasure q = response(in1[i], in2[j], w, n);
      uint64_t best = 0;
      for (uint64_t z = 1; z < zs.size(); ++z)
        if (q[z] > q[best]) best = z;
      dec.set(i, j, best);
    }
  return IdCode{n, std::move(in1), std::move(in2), std::move(dec)};
}

namespace {

std::vector<double> jittered_letter(uint32_t size, uint64_t seed, uint64_t tag) {
  std::vector<double> p(size);
  double tot = 0.0;
  for (uint32_t s = 0; s < size; ++s) {
    p[s] = 0.05 + 0.9 * counter_u01(seed, 0x77, tag * size + s);
    tot += p[s];
  }
  for (double& v : p) v /= tot;
  return p;
}

}  // namespace

IdCode make_spread_iid_code(const MacChannel& w, int n, uint64_t n1, uint64_t n2, uint64_t seed) {
  std::vector<SequenceDistribution> in1, in2;
  for (uint64_t i = 0; i < n1; ++i) {
    double base = (static_cast<double>(i) + 0.5) / static_cast<double>(n1);
    std::vector<double> letter(w.in1().size, (1.0 - base) / std::max(1u, w.in1().size - 1));
    letter[0] = base;
    double tot = 0.0;
    for (double v : letter) tot += v;
    for (double& v : letter) v /= tot;
    // deterministic spread plus a tiny jitter keeps all rows distinct
    double jit = 1e-4 * counter_u01(seed, 0x78, i);
    letter[0] = std::min(1.0, letter[0] + jit);
    tot = 0.0;
    for (double v : letter) tot += v;
    for (double& v : letter) v /= tot;
    in1.push_back(SequenceDistribution::iid(w.in1(), n, letter));
  }
  for (uint64_t j = 0; j < n2; ++j) {
    double base = (static_cast<double>(j) + 0.5) / static_cast<double>(n2);
    std::vector<double> letter(w.in2().size, (1.0 - base) / std::max(1u, w.in2().size - 1));
    letter[0] = base;
    double jit = 1e-4 * counter_u01(seed, 0x79, j);
    letter[0] = std::min(1.0, letter[0] + jit);
    double tot = 0.0;
    for (double v : letter) tot += v;
    for (double& v : letter) v /= tot;
    in2.push_back(SequenceDistribution::iid(w.in2(), n, letter));
  }
  SeqSpace zs(w.out(), n);
  // responses per cell; each z is decoded by the cell that strictly dominates
  std::vector<ResponseMeasure> qs;
  qs.reserve(n1 * n2);
  for (uint64_t i = 0; i < n1; ++i)
    for (uint64_t j = 0; j < n2; ++j) qs.push_back(response(in1[i], in2[j], w, n));
  DecoderArray dec(n1, n2, zs.size());
  for (uint64_t z = 0; z < zs.size(); ++z) {
    uint64_t best = 0;
    bool strict = true;
    for (uint64_t c = 1; c < qs.size(); ++c) {
      if (qs[c][z] > qs[best][z]) {
        best = c;
        strict = true;
      } else if (qs[c][z] == qs[best][z]) {
        strict = false;
      }
    }
    if (strict) dec.set(best / n2, best % n2, z);
  }
  return IdCode{n, std::move(in1), std::move(in2), std::move(dec)};
}

IdCode make_pooled_random_code(const MacChannel& w, int n, uint64_t n1, uint64_t n2,
                               uint64_t input_pool, uint64_t decoder_pool, uint64_t seed) {
  SeqSpace zs(w.out(), n);
  std::vector<std::vector<double>> pool1, pool2;
  for (uint64_t a = 0; a < input_pool; ++a) pool1.push_back(jittered_letter(w.in1().size, seed, a));
  for (uint64_t b = 0; b < input_pool; ++b)
    pool2.push_back(jittered_letter(w.in2().size, seed + 1, b));
  std::vector<SequenceDistribution> in1, in2;
  for (uint64_t i = 0; i < n1; ++i)
    in1.push_back(SequenceDistribution::iid(w.in1(), n, pool1[i % input_pool]));
  for (uint64_t j = 0; j < n2; ++j)
    in2.push_back(SequenceDistribution::iid(w.in2(), n, pool2[j % input_pool]));
  // decoder mask pool: random nonempty subsets of Z^n
  std::vector<std::vector<uint64_t>> masks(decoder_pool);
  for (uint64_t d = 0; d < decoder_pool; ++d) {
    std::vector<uint64_t>& m = masks[d];
    m.assign((zs.size() + 63) / 64, 0);
    bool any = false;
    for (uint64_t z = 0; z < zs.size(); ++z)
      if (counter_rand(seed, 0x7a, d * zs.size() + z) & 1) {
        m[z >> 6] |= uint64_t{1} << (z & 63);
        any = true;
      }
    if (!any) m[0] |= 1;  // keep decoders nonempty
  }
  DecoderArray dec(n1, n2, zs.size());
  for (uint64_t i = 0; i < n1; ++i)
    for (uint64_t j = 0; j < n2; ++j) {
      const auto& m = masks[counter_rand(seed, 0x7b, i * n2 + j) % decoder_pool];
      for (uint64_t z = 0; z < zs.size(); ++z)
        if ((m[z >> 6] >> (z & 63)) & 1) dec.set(i, j, z);
    }
  return IdCode{n, std::move(in1), std::move(in2), std::move(dec)};
}

}  // namespace macid
