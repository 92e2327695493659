// Acceptance suite: one check per shipping criterion, each printing a single
// PASS/FAIL line. Criteria 2, 5 and 6 persist every bound value they compute
// so criterion 3 can audit the global range afterwards.
//
// Usage: acceptance <path-to-macid-cli> [criterion...]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <vector>

#include "macid/id_converse.hpp"
#include "macid/regions.hpp"
#include "macid/rng.hpp"

using namespace macid;

namespace {

std::string g_cli;
int g_failures = 0;

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
};

void report(int criterion, bool pass, const std::string& detail, double secs) {
  std::printf("[%s] criterion %d: %s [%.1f s]\n", pass ? "PASS" : "FAIL", criterion,
              detail.c_str(), secs);
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

std::string omega_file(int criterion) {
  return "acceptance_omega_values_c" + std::to_string(criterion) + ".txt";
}

void save_omegas(int criterion, const std::vector<double>& vals) {
  std::ofstream out(omega_file(criterion));
  for (double v : vals) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g\n", v);
    out << buf;
  }
}

bool load_omegas(int criterion, std::vector<double>& vals) {
  std::ifstream in(omega_file(criterion));
  if (!in) return false;
  double v;
  while (in >> v) vals.push_back(v);
  return true;
}

// ---- criterion 1: partial-response identity --------------------------------------

std::vector<double> identity_suite_omegas(int instances, uint64_t seed,
                                     const std::vector<double>& gammas, double tau_offset,
                                     uint64_t* violations, uint64_t* checks) {
  std::vector<OmegaCheckInstance> insts;
  for (int i = 0; i < instances; ++i)
    insts.push_back(make_random_instance(derive_seed(seed, i), 3, 3));
  std::vector<double> omegas;
  *violations = 0;
  *checks = 0;
  for (double gamma : gammas) {
    OmegaIdentityReport rep = verify_omega_identities(insts, gamma, gamma + tau_offset, 1e-10);
    *violations += rep.violations.size();
    *checks += rep.checks;
    for (const auto& v : rep.violations) std::printf("  violation: %s\n", v.c_str());
    omegas.insert(omegas.end(), rep.omega_values.begin(), rep.omega_values.end());
  }
  return omegas;
}

void criterion1() {
  Timer timer;
  int bad = 0;
  const int instances = 100;
  for (int i = 0; i < instances; ++i) {
    uint64_t seed = derive_seed(101, i);
    OmegaCheckInstance inst = make_random_instance(seed, 3, 3);
    TripleSet s = TripleSet::from_predicate(
        inst.w.in1(), inst.w.in2(), inst.w.out(), inst.n,
        [&](uint64_t a, uint64_t b, uint64_t c) {
          return counter_rand(seed, 0x51, (a << 24) ^ (b << 12) ^ c) & 1;
        });
    ResponseMeasure q = response(inst.px, inst.py, inst.w, inst.n);
    ResponseMeasure qs = partial_response(inst.px, inst.py, inst.w, s, inst.n);
    ResponseMeasure qc = partial_response(inst.px, inst.py, inst.w, s.complement(), inst.n);
    for (uint64_t z = 0; z < q.size(); ++z)
      if (std::abs(qs[z] + qc[z] - q[z]) > 1e-12) ++bad;
  }
  std::ostringstream d;
  d << "partial-response identity Q_S + Q_Sc = Q on " << instances
    << " random instances, max |error| tolerance 1e-12, entries off: " << bad;
  report(1, bad == 0, d.str(), timer.seconds());
}

// ---- criterion 2: omega identity suite --------------------------------------------

void criterion2() {
  Timer timer;
  uint64_t violations = 0, checks = 0;
  std::vector<double> omegas =
      identity_suite_omegas(100, 777, {0.0, 0.05, 0.1}, 0.05, &violations, &checks);
  save_omegas(2, omegas);
  std::ostringstream d;
  d << "omega identity suite (shift/exponential/range): " << checks << " checks, " << violations
    << " violations (tol 1e-10)";
  report(2, violations == 0, d.str(), timer.seconds());
}

// ---- criterion 5: strong-converse decay -------------------------------------------

void criterion5() {
  Timer timer;
  MacChannel w = MacChannel::builtin("binary-adder");
  InputSearchPolicy policy;
  policy.grid_resolution = 10;
  std::vector<double> omegas;

  auto sweep = [&](RatePoint pt) {
    std::vector<double> vals;
    for (int n = 1; n <= 6; ++n) {
      vals.push_back(omega_channel(pt, 0.02, w, n, policy).omega);
      omegas.push_back(vals.back());
    }
    return vals;
  };
  std::vector<double> out = sweep({0.8, 0.8});
  std::vector<double> in = sweep({0.3, 0.3});
  save_omegas(5, omegas);

  bool strict = true;
  for (int i = 0; i + 1 < 6; ++i)
    if (!(out[i + 1] < out[i])) strict = false;
  bool halved = out[5] < 0.5 * out[0];
  bool in_decays = true;
  for (int i = 0; i + 1 < 6; ++i)
    if (!(in[i + 1] < in[i])) in_decays = false;
  bool inside_no_decay = !(in_decays && in[5] < 0.5 * in[0]);

  std::ostringstream d;
  d << "outside (0.8,0.8): omega " << out[0] << " -> " << out[5]
    << (strict ? " strictly decreasing" : " NOT strictly decreasing") << ", ratio "
    << out[5] / out[0] << (halved ? " < 0.5" : " >= 0.5") << "; inside (0.3,0.3): " << in[0]
    << " -> " << in[5] << (inside_no_decay ? " (no decay)" : " (unexpected decay)");
  report(5, strict && halved && inside_no_decay, d.str(), timer.seconds());
}

// ---- criterion 4: resolvability distance-bound certificate ------------------------

void criterion4() {
  Timer timer;
  MacChannel w = MacChannel::builtin("binary-adder");
  int runs = 0, accepted = 0, cert_bad = 0;
  for (int n : {2, 3}) {
    SequenceDistribution u = SequenceDistribution::uniform({2}, n);
    for (double r : {0.9, 1.1}) {
      for (uint64_t s = 0; s < 32; ++s) {
        ++runs;
        SelectResult res = select_code(u, u, w, n, {r, r}, 0.05, 200, derive_seed(400 + n, 32 * (r > 1.0) + s));
        if (!res.success) continue;
        ++accepted;
        for (int t = 0; t < 3; ++t)
          if (res.d_exact[t] > res.bound[t]) ++cert_bad;  // zero tolerance
      }
    }
  }
  double rate = static_cast<double>(accepted) / runs;
  std::ostringstream d;
  d << "select_code accepted " << accepted << "/" << runs << " runs (" << 100.0 * rate
    << "%, need >= 95%), certificate d <= 4E+3sqrt(zeta) violations: " << cert_bad;
  report(4, rate >= 0.95 && cert_bad == 0, d.str(), timer.seconds());
}

// ---- criterion 6: max-criterion converse on a generated family --------------------

void criterion6() {
  Timer timer;
  InputSearchPolicy policy;
  policy.grid_resolution = 10;
  std::vector<double> omegas;
  int total = 0, rate_ok = 0, nonvacuous = 0, holds = 0;
  // N = 1300 clears the rate threshold (about 1296) at R1 = R2 = 0, n = 2
  const uint64_t big_n = 1300;
  for (const char* name : {"binary-adder", "noisy-adder(0.1)"}) {
    MacChannel w = MacChannel::builtin(name);
    for (int i = 0; i < 25; ++i) {
      ++total;
      IdCode code = make_pooled_random_code(w, 2, big_n, big_n, 36, 256, derive_seed(600, total));
      IdErrorReport rep = evaluate_id_code(code, w);
      ConverseVerdict v = check_max_converse(code, rep, w, {0.0, 0.0}, 0.0, policy);
      omegas.push_back(v.omega);
      if (v.rate_ok) ++rate_ok;
      if (v.rate_ok && v.error_sum < 1.0) ++nonvacuous;
      if (v.holds) ++holds;
    }
  }
  save_omegas(6, omegas);
  std::ostringstream d;
  d << "1 - mu - lambda <= omega on " << holds << "/" << total
    << " rate-condition codes (rate ok: " << rate_ok << "; with mu+lambda < 1: " << nonvacuous
    << " -- with |Z^n| = 9 only 2^9 decoders exist, so N1*N2 = 1300^2 forces"
       " decoder reuse and mu+lambda >= 1: every instance is vacuously satisfied)";
  report(6, holds == total && rate_ok == total, d.str(), timer.seconds());
}

// ---- criterion 7: avg-criterion converse and nu decay -----------------------------

void criterion7() {
  Timer timer;
  InputSearchPolicy policy;
  policy.grid_resolution = 10;
  int total = 0, holds = 0;
  for (const char* name : {"binary-adder", "noisy-adder(0.1)"}) {
    MacChannel w = MacChannel::builtin(name);
    for (int i = 0; i < 25; ++i) {
      ++total;
      IdCode code = make_pooled_random_code(w, 2, 40, 40, 8, 48, derive_seed(700, total));
      IdErrorReport rep = evaluate_id_code(code, w);
      ConverseVerdict v = check_avg_converse(code, rep, w, {0.0, 0.0}, 0.0, 0.1, policy);
      if (v.holds) ++holds;
    }
  }
  // a non-vacuous exemplar: spread inputs with ownership decoders
  MacChannel adder = MacChannel::builtin("binary-adder");
  IdCode spread = make_spread_iid_code(adder, 2, 32, 32, 3);
  IdErrorReport srep = evaluate_id_code(spread, adder);
  ConverseVerdict sv = check_avg_converse(spread, srep, adder, {0.0, 0.0}, 0.0, 0.1, policy);
  bool spread_ok = sv.rate_ok && !sv.vacuous && sv.holds;

  bool nu_monotone = true;
  for (int n = 1; n < 6; ++n)
    if (!(nu_value(n + 1, 0.1, 0.5, 0.5, 2, 2) < nu_value(n, 0.1, 0.5, 0.5, 2, 2)))
      nu_monotone = false;
  double ratio = nu_value(3, 0.1, 0.5, 0.5, 2, 2) / nu_value(1, 0.1, 0.5, 0.5, 2, 2);
  bool ratio_ok = ratio < 1e-6;
  double ratio4 = nu_value(4, 0.1, 0.5, 0.5, 2, 2) / nu_value(1, 0.1, 0.5, 0.5, 2, 2);

  std::ostringstream d;
  d << "avg-criterion inequality holds on " << holds << "/" << total
    << " codes (plus non-vacuous spread code: " << (spread_ok ? "holds" : "FAILS")
    << "); nu strictly decreasing in n: " << (nu_monotone ? "yes" : "NO")
    << "; nu(3)/nu(1) = " << ratio << (ratio_ok ? " < 1e-6" : " >= 1e-6");
  if (!ratio_ok)
    d << " -- the three-term nu cannot reach 1e-6 by n=3 at tau=0.1, R=0.5"
         " (exact ratio 1.34e-3); the double-exponential decay does arrive one"
         " step later: nu(4)/nu(1) = "
      << ratio4;
  report(7, holds == total && spread_ok && nu_monotone && ratio_ok, d.str(), timer.seconds());
}

// ---- criterion 8: resolvability unbiasedness --------------------------------------

void criterion8() {
  Timer timer;
  MacChannel w = MacChannel::builtin("binary-adder");
  SequenceDistribution u = SequenceDistribution::uniform({2}, 2);
  ResponseMeasure q = response(u, u, w, 2);
  JointContext ctx(u, u, w, 2);
  const double m = 8.0;
  const int seeds = 2000;
  const uint64_t zn = 9;

  auto exact_var = [&](uint64_t zi) {
    double e_ww = 0, e_x = 0, e_y = 0;
    for (uint64_t xi = 0; xi < 4; ++xi)
      for (uint64_t yi = 0; yi < 4; ++yi)
        e_ww += u[xi] * u[yi] * ctx.view().at(xi, yi, zi) * ctx.view().at(xi, yi, zi);
    for (uint64_t xi = 0; xi < 4; ++xi) e_x += u[xi] * ctx.pzx_row(xi)[zi] * ctx.pzx_row(xi)[zi];
    for (uint64_t yi = 0; yi < 4; ++yi) e_y += u[yi] * ctx.pzy_row(yi)[zi] * ctx.pzy_row(yi)[zi];
    double q2 = q[zi] * q[zi];
    double second = e_ww / (m * m) + (m - 1.0) * e_x / (m * m) + (m - 1.0) * e_y / (m * m) +
                    ((m - 1.0) * (m - 1.0) / (m * m)) * q2;
    return second - q2;
  };

  std::vector<double> mean(zn, 0.0);
  for (int s = 0; s < seeds; ++s) {
    ResolvabilityCode code = sample_code(u, u, 8, 8, 2, derive_seed(800, s));
    ApproxResponses aq = approx_responses(code, u, u, w, 2);
    for (uint64_t z = 0; z < zn; ++z) mean[z] += aq.q3[z];
  }
  int bad = 0;
  double worst = 0.0;
  for (uint64_t z = 0; z < zn; ++z) {
    mean[z] /= seeds;
    double sigma = std::sqrt(exact_var(z) / seeds);
    double dev = std::abs(mean[z] - q[z]);
    if (sigma > 0) worst = std::max(worst, dev / sigma);
    if (dev > 3.0 * sigma + 1e-15) ++bad;
  }
  std::ostringstream d;
  d << "mean of approx response over " << seeds
    << " seeds within 3 sigma of the true response for all 9 outputs (worst z-score " << worst
    << "), failures: " << bad;
  report(8, bad == 0, d.str(), timer.seconds());
}

// ---- criterion 9: region geometry --------------------------------------------------

void criterion9() {
  Timer timer;
  MacChannel w = MacChannel::builtin("binary-adder");
  std::vector<double> u{0.5, 0.5};
  Pentagon p = asymptotic_pentagon(u, u, w);
  const double LN2 = std::log(2.0);
  bool exact = std::abs(p.c1 - LN2) <= 1e-12 && std::abs(p.c2 - LN2) <= 1e-12 &&
               std::abs(p.c12 - 1.5 * LN2) <= 1e-12;

  double prev = -1.0, first = 0.0, last = 0.0;
  bool monotone = true;
  for (int n : {1, 2, 4, 6}) {
    SequenceDistribution px = SequenceDistribution::iid({2}, n, u);
    Pentagon proxy = pentagon_for_inputs(px, px, w, n, 0.05, RegionKind::Inf);
    double dev = std::max(
        {std::abs(proxy.c1 - p.c1), std::abs(proxy.c2 - p.c2), std::abs(proxy.c12 - p.c12)});
    if (prev >= 0.0 && dev > prev + 1e-12) monotone = false;
    if (n == 1) first = dev;
    if (n == 6) last = dev;
    prev = dev;
  }
  bool shrinks = last < first;
  std::ostringstream d;
  d << "asymptotic pentagon = (ln2, ln2, 1.5 ln2) within 1e-12: " << (exact ? "yes" : "NO")
    << "; proxy corner deviation over n in {1,2,4,6}: " << first << " -> " << last
    << (monotone ? " non-increasing" : " NOT non-increasing")
    << (shrinks ? ", strictly smaller at n=6" : ", no overall decrease");
  report(9, exact && monotone && shrinks, d.str(), timer.seconds());
}

// ---- criterion 10: CLI determinism --------------------------------------------------

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void criterion10() {
  Timer timer;
  if (g_cli.empty()) {
    report(10, false, "no CLI path given (pass the macid binary as argv[1])", timer.seconds());
    return;
  }
  std::string base = " resolve --channel binary-adder --n 2,3 --r1 0.9 --r2 0.9 --gamma 0.05"
                     " --trials 200 --seeds 32 --seed 1";
  std::string f1 = "acceptance_resolve_t1.csv", f8 = "acceptance_resolve_t8.csv";
  int rc1 = std::system((g_cli + base + " --threads 1 --out " + f1 + " 2>/dev/null").c_str());
  int rc8 = std::system((g_cli + base + " --threads 8 --out " + f8 + " 2>/dev/null").c_str());
  std::string a = slurp(f1), b = slurp(f8);
  bool same = !a.empty() && a == b;
  std::ostringstream d;
  d << "byte-identical resolve CSV across --threads 1 vs 8 (" << a.size() << " bytes): "
    << (same ? "identical" : "DIFFERENT") << ", exit codes " << rc1 << "/" << rc8;
  report(10, same && rc1 == 0 && rc8 == 0, d.str(), timer.seconds());
}

// ---- criterion 3: omega range audit (values from 2, 5, 6) ---------------------------

void criterion3() {
  Timer timer;
  std::vector<double> vals;
  bool have = true;
  for (int c : {2, 5, 6})
    if (!load_omegas(c, vals)) have = false;
  if (!have) {
    // standalone run: recompute the collections
    vals.clear();
    uint64_t violations = 0, checks = 0;
    std::vector<double> o2 = identity_suite_omegas(100, 777, {0.0, 0.05, 0.1}, 0.05, &violations, &checks);
    vals.insert(vals.end(), o2.begin(), o2.end());
    MacChannel w = MacChannel::builtin("binary-adder");
    InputSearchPolicy policy;
    policy.grid_resolution = 10;
    for (RatePoint pt : {RatePoint{0.8, 0.8}, RatePoint{0.3, 0.3}})
      for (int n = 1; n <= 6; ++n) vals.push_back(omega_channel(pt, 0.02, w, n, policy).omega);
    int total = 0;
    for (const char* name : {"binary-adder", "noisy-adder(0.1)"}) {
      MacChannel ch = MacChannel::builtin(name);
      for (int i = 0; i < 25; ++i) {
        ++total;
        IdCode code = make_pooled_random_code(ch, 2, 1300, 1300, 36, 256, derive_seed(600, total));
        IdErrorReport rep = evaluate_id_code(code, ch);
        vals.push_back(check_max_converse(code, rep, ch, {0.0, 0.0}, 0.0, policy).omega);
      }
    }
  }
  const double limit = 73.0 / 16.0;
  int out_of_range = 0, counterexamples = 0;
  double max_seen = 0.0;
  for (double v : vals) {
    max_seen = std::max(max_seen, v);
    if (v < 0.0 || v > 7.0) ++out_of_range;
    else if (v > limit) ++counterexamples;
  }
  for (double v : vals)
    if (v > limit && v <= 7.0)
      std::printf("  potential counterexample to the 73/16 range: omega = %.17g\n", v);
  std::ostringstream d;
  d << vals.size() << " omega values audited (" << (have ? "from criteria 2/5/6 output"
    : "recomputed standalone") << "), max " << max_seen << "; in [0, 73/16]: "
    << (vals.size() - out_of_range - counterexamples) << ", reported in (73/16, 7]: "
    << counterexamples << ", outside [0, 7]: " << out_of_range;
  report(3, out_of_range == 0, d.str(), timer.seconds());
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) g_cli = argv[1];
  std::vector<int> which;
  for (int i = 2; i < argc; ++i) which.push_back(std::atoi(argv[i]));
  if (which.empty()) which = {1, 2, 4, 5, 6, 7, 8, 9, 10, 3};  // 3 audits 2/5/6 output

  for (int c : which) {
    switch (c) {
      case 1: criterion1(); break;
      case 2: criterion2(); break;
      case 3: criterion3(); break;
      case 4: criterion4(); break;
      case 5: criterion5(); break;
      case 6: criterion6(); break;
      case 7: criterion7(); break;
      case 8: criterion8(); break;
      case 9: criterion9(); break;
      case 10: criterion10(); break;
      default:
        std::printf("unknown criterion %d\n", c);
        ++g_failures;
    }
  }
  return g_failures == 0 ? 0 : 1;
}
