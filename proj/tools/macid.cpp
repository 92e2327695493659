// macid: exact desk-scale experiments with identification-via-MAC converse
// quantities: information-density spectra, T-set/zeta/omega bounds, rate
// regions and MAC resolvability codes.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "macid/id_converse.hpp"
#include "macid/regions.hpp"
#include "macid/rng.hpp"
#include "macid/version.hpp"

using namespace macid;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitValidation = 2;
constexpr int kExitCap = 3;
constexpr int kExitPropertyViolation = 4;

// 17 significant digits, scientific; full-precision reproducible output
std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.16e", v);
  return buf;
}

double ln2() { return std::log(2.0); }

struct Units {
  bool bits = false;
  double rate(double nats) const { return bits ? nats / ln2() : nats; }
  const char* suffix() const { return bits ? "bits" : "nats"; }
};

// Writes atomically: payload lands under a temp name, then rename.
void write_file(const std::string& path, const std::string& payload) {
  if (path.empty() || path == "-") {
    std::cout << payload;
    return;
  }
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw UsageError("cannot open output file '" + tmp + "'");
    out << payload;
    if (!out) throw UsageError("failed writing '" + tmp + "'");
  }
  std::filesystem::rename(tmp, path);
}

// Config echo lines. Thread count is deliberately absent: it never affects
// payload bytes, and files must compare equal across --threads settings.
std::string echo_header(const std::vector<std::pair<std::string, std::string>>& kv) {
  std::ostringstream os;
  os << "# tool=macid version=" << kVersion << "\n";
  for (const auto& [k, v] : kv) os << "# " << k << "=" << v << "\n";
  return os.str();
}

std::vector<double> parse_letter(const std::string& csv, Alphabet a, const char* what) {
  if (csv.empty()) return std::vector<double>(a.size, 1.0 / a.size);
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
  if (out.size() != a.size)
    throw UsageError(std::string(what) + " needs exactly " + std::to_string(a.size) + " entries");
  return out;
}

std::vector<int> parse_int_list(const std::string& csv) {
  std::vector<int> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stoi(tok));
  return out;
}

std::vector<double> parse_double_list(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
  return out;
}

struct CommonArgs {
  std::string channel;
  unsigned threads = 0;  // 0: hardware default
  bool bits = false;
  std::string out;
};

// ---- spectrum -------------------------------------------------------------------

int run_spectrum(const CommonArgs& common, int n, double epsilon, const std::string& kind_name,
                 const std::string& px_csv, const std::string& py_csv,
                 const std::string& rates_out) {
  MacChannel w = MacChannel::resolve(common.channel);
  Units units{common.bits};
  DensityKind kind = density_kind_from_name(kind_name);
  SequenceDistribution px =
      SequenceDistribution::iid(w.in1(), n, parse_letter(px_csv, w.in1(), "--px"));
  SequenceDistribution py =
      SequenceDistribution::iid(w.in2(), n, parse_letter(py_csv, w.in2(), "--py"));
  JointContext ctx(px, py, w, n);
  DensityLaw law = density_law(kind, ctx);

  std::ostringstream os;
  os << echo_header({{"subcommand", "spectrum"},
                     {"channel", common.channel},
                     {"n", std::to_string(n)},
                     {"kind", kind_name},
                     {"epsilon", num(epsilon)},
                     {"px", px_csv.empty() ? "uniform" : px_csv},
                     {"py", py_csv.empty() ? "uniform" : py_csv},
                     {"units", units.suffix()}});
  os << "value_" << units.suffix() << ",prob\n";
  for (const auto& a : law.atoms) os << num(units.rate(a.value)) << "," << num(a.prob) << "\n";
  write_file(common.out, os.str());

  if (!rates_out.empty()) {
    SpectralRates r = spectral_rates(px, py, w, n, epsilon);
    nlohmann::json j;
    j["epsilon"] = r.epsilon;
    j["units"] = units.suffix();
    const char* names[3] = {"x_given_y", "y_given_x", "joint"};
    for (int i = 0; i < 3; ++i) {
      j["inf_rate"][names[i]] = units.rate(r.inf_rate[i]);
      j["sup_rate"][names[i]] = units.rate(r.sup_rate[i]);
    }
    write_file(rates_out, j.dump(2) + "\n");
  }
  return kExitOk;
}

// ---- omega ----------------------------------------------------------------------

int run_omega(const CommonArgs& common, const std::string& n_list, double r1, double r2,
              double gamma, int grid, int ascent, uint64_t seed) {
  MacChannel w = MacChannel::resolve(common.channel);
  Units units{common.bits};
  InputSearchPolicy policy;
  policy.grid_resolution = grid;
  policy.ascent_iters = ascent;
  policy.seed = seed;
  if (ascent > 0) policy.mode = InputSearchPolicy::Mode::IidGridAscent;

  std::ostringstream os;
  os << echo_header({{"subcommand", "omega"},
                     {"channel", common.channel},
                     {"n_list", n_list},
                     {"r1", num(r1)},
                     {"r2", num(r2)},
                     {"gamma", num(gamma)},
                     {"grid", std::to_string(grid)},
                     {"ascent", std::to_string(ascent)},
                     {"seed", std::to_string(seed)},
                     {"units", units.suffix()}});
  os << "n,r1_" << units.suffix() << ",r2_" << units.suffix()
     << ",gamma,t,omega1,omega2,omega,omega_min\n";
  for (int n : parse_int_list(n_list)) {
    OmegaChannelResult res = omega_channel({r1, r2}, gamma, w, n, policy);
    for (int t = 0; t < 3; ++t) {
      const BranchOmega& b = res.best.branch[t];
      os << n << "," << num(units.rate(r1)) << "," << num(units.rate(r2)) << ","
         << num(units.rate(gamma)) << "," << (t + 1) << "," << num(b.omega1) << ","
         << num(b.omega2) << "," << num(b.omega) << "," << num(res.omega) << "\n";
    }
  }
  write_file(common.out, os.str());
  return kExitOk;
}

// ---- resolve --------------------------------------------------------------------

int run_resolve(const CommonArgs& common, const std::string& n_list, double r1, double r2,
                double gamma, int trials, int seed_count, uint64_t seed,
                const std::string& px_csv, const std::string& py_csv, bool aggregate) {
  MacChannel w = MacChannel::resolve(common.channel);
  Units units{common.bits};
  std::vector<uint64_t> seeds(seed_count);
  for (int s = 0; s < seed_count; ++s) seeds[s] = derive_seed(seed, s);

  std::ostringstream os;
  os << echo_header({{"subcommand", "resolve"},
                     {"channel", common.channel},
                     {"n_list", n_list},
                     {"r1", num(r1)},
                     {"r2", num(r2)},
                     {"gamma", num(gamma)},
                     {"trials", std::to_string(trials)},
                     {"seeds", std::to_string(seed_count)},
                     {"seed", std::to_string(seed)},
                     {"px", px_csv.empty() ? "uniform" : px_csv},
                     {"py", py_csv.empty() ? "uniform" : py_csv},
                     {"units", units.suffix()}});
  if (aggregate) {
    os << "n,r1,r2,t,d_mean,d_min,d_max,bound,accept_rate\n";
    std::vector<RatePoint> grid{{r1, r2}};
    std::vector<int> ns = parse_int_list(n_list);
    auto rows = resolvability_sweep(w, parse_letter(px_csv, w.in1(), "--px"),
                                    parse_letter(py_csv, w.in2(), "--py"), ns, grid, gamma,
                                    trials, seeds);
    for (const auto& r : rows)
      os << r.n << "," << num(units.rate(r.r1)) << "," << num(units.rate(r.r2)) << "," << r.t
         << "," << num(r.d_mean) << "," << num(r.d_min) << "," << num(r.d_max) << ","
         << num(r.bound) << "," << num(r.accept_rate) << "\n";
  } else {
    os << "n,r1,r2,t,d_exact,bound,accepted,trials_used,seed\n";
    for (int n : parse_int_list(n_list)) {
      SequenceDistribution px =
          SequenceDistribution::iid(w.in1(), n, parse_letter(px_csv, w.in1(), "--px"));
      SequenceDistribution py =
          SequenceDistribution::iid(w.in2(), n, parse_letter(py_csv, w.in2(), "--py"));
      for (const auto& r : resolve_rows(px, py, w, n, {r1, r2}, gamma, trials, seeds))
        os << r.n << "," << num(units.rate(r.r1)) << "," << num(units.rate(r.r2)) << "," << r.t
           << "," << num(r.d_exact) << "," << num(r.bound) << "," << (r.accepted ? 1 : 0) << ","
           << r.trials_used << "," << r.seed << "\n";
    }
  }
  write_file(common.out, os.str());
  return kExitOk;
}

// ---- idcode ---------------------------------------------------------------------

int run_idcode(const CommonArgs& common, const std::string& code_path, double r1, double r2,
               double gamma, double tau, const std::string& criterion, int grid) {
  MacChannel w = MacChannel::resolve(common.channel);
  IdCode code = IdCode::load(code_path, w);
  IdErrorReport rep = evaluate_id_code(code, w);
  InputSearchPolicy policy;
  policy.grid_resolution = grid;
  ConverseVerdict v;
  if (criterion == "max")
    v = check_max_converse(code, rep, w, {r1, r2}, gamma, policy);
  else if (criterion == "avg")
    v = check_avg_converse(code, rep, w, {r1, r2}, gamma, tau, policy);
  else
    throw UsageError("--criterion must be max or avg");

  nlohmann::json j;
  j["config"] = {{"channel", common.channel}, {"code", code_path},     {"r1", r1},
                 {"r2", r2},                  {"gamma", gamma},        {"tau", tau},
                 {"criterion", criterion},    {"grid", grid},          {"version", kVersion}};
  j["n1"] = rep.n1;
  j["n2"] = rep.n2;
  j["mu_max"] = rep.mu_max;
  j["lambda_max"] = rep.lambda_max;
  j["mu_avg"] = rep.mu_avg;
  j["lambda_avg"] = rep.lambda_avg;
  j["r1n"] = rep.r1n;
  j["r2n"] = rep.r2n;
  j["rate_ok"] = v.rate_ok;
  j["rate_required"] = {v.rate.required1, v.rate.required2};
  j["vacuous"] = v.vacuous;
  j["vacuous_reason"] = v.label;
  j["lhs"] = v.lhs;
  j["omega"] = v.omega;
  j["nu"] = v.nu;
  j["rhs"] = v.rhs;
  j["holds"] = v.holds;
  write_file(common.out, j.dump(2) + "\n");
  return v.holds ? kExitOk : kExitPropertyViolation;
}

// ---- region ---------------------------------------------------------------------

int run_region(const CommonArgs& common, int n, double epsilon, int grid,
               const std::string& which_name, bool asymptotic, const std::string& map_out,
               int map_res, double map_max) {
  MacChannel w = MacChannel::resolve(common.channel);
  Units units{common.bits};
  RegionKind which = which_name == "inf"   ? RegionKind::Inf
                     : which_name == "sup" ? RegionKind::Sup
                     : which_name == "prime"
                         ? RegionKind::Prime
                         : throw UsageError("--which must be inf, sup or prime");
  InputSearchPolicy policy;
  policy.grid_resolution = grid;
  RegionUnion region = asymptotic ? asymptotic_union(w, policy, which)
                                  : union_region(w, n, epsilon, policy, which);

  nlohmann::json j;
  j["config"] = {{"channel", common.channel},
                 {"n", asymptotic ? 0 : n},
                 {"asymptotic", asymptotic},
                 {"epsilon", epsilon},
                 {"grid", grid},
                 {"which", which_name},
                 {"units", units.suffix()},
                 {"version", kVersion}};
  nlohmann::json pent = nlohmann::json::array();
  for (const auto& p : region.pentagons)
    pent.push_back({{"c1", units.rate(p.c1)}, {"c2", units.rate(p.c2)}, {"c12", units.rate(p.c12)}});
  j["pentagons"] = pent;
  write_file(common.out, j.dump(2) + "\n");

  if (!map_out.empty()) {
    double rmax = map_max;
    if (rmax <= 0.0) {
      for (const auto& p : region.pentagons) rmax = std::max({rmax, p.c1, p.c2});
      rmax *= 1.25;
      if (rmax <= 0.0) rmax = 1.0;
    }
    std::ostringstream os;
    os << echo_header({{"subcommand", "region-map"},
                       {"channel", common.channel},
                       {"which", which_name},
                       {"map_res", std::to_string(map_res)},
                       {"units", units.suffix()}});
    os << "r1,r2,in01\n";
    for (int i = 0; i <= map_res; ++i)
      for (int k = 0; k <= map_res; ++k) {
        RatePoint pt{rmax * i / map_res, rmax * k / map_res};
        int in01 = membership(pt, region) != Membership::Outside ? 1 : 0;
        os << num(units.rate(pt.r1)) << "," << num(units.rate(pt.r2)) << "," << in01 << "\n";
      }
    write_file(map_out, os.str());
  }
  return kExitOk;
}

// ---- props ----------------------------------------------------------------------

int run_props(const CommonArgs& common, int n, int instances, uint64_t seed,
              const std::string& gammas_csv, double tau_offset) {
  std::vector<OmegaCheckInstance> insts;
  for (int i = 0; i < instances; ++i)
    insts.push_back(make_random_instance(derive_seed(seed, i), 3, std::max(1, n)));
  if (!common.channel.empty()) {
    MacChannel w = MacChannel::resolve(common.channel);
    SequenceDistribution px = SequenceDistribution::uniform(w.in1(), n);
    SequenceDistribution py = SequenceDistribution::uniform(w.in2(), n);
    insts.push_back({std::move(w), std::move(px), std::move(py), n, {0.5, 0.9}, common.channel});
  }
  std::ostringstream os;
  os << echo_header({{"subcommand", "props"},
                     {"channel", common.channel.empty() ? "(random only)" : common.channel},
                     {"n", std::to_string(n)},
                     {"instances", std::to_string(instances)},
                     {"seed", std::to_string(seed)},
                     {"gammas", gammas_csv},
                     {"tau_offset", num(tau_offset)}});
  bool violated = false;
  for (double gamma : parse_double_list(gammas_csv)) {
    OmegaIdentityReport rep = verify_omega_identities(insts, gamma, gamma + tau_offset);
    double max_omega = 0.0;
    for (double om : rep.omega_values) max_omega = std::max(max_omega, om);
    os << "gamma=" << num(gamma) << " instances=" << rep.instances << " checks=" << rep.checks
       << " violations=" << rep.violations.size() << " max_omega=" << num(max_omega) << "\n";
    for (const auto& v : rep.violations) os << "VIOLATION " << v << "\n";
    if (!rep.ok()) violated = true;
  }
  write_file(common.out, os.str());
  return violated ? kExitPropertyViolation : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact identification-via-MAC converse laboratory"};
  app.require_subcommand(1);

  CommonArgs common;
  app.add_option("--threads", common.threads, "worker threads (0 = hardware)");
  std::string units = "nats";
  app.add_option("--units", units, "display units: nats|bits")
      ->check(CLI::IsMember({"nats", "bits"}));

  // spectrum
  auto* sp = app.add_subcommand("spectrum", "exact density law and quantile proxies");
  int sp_n = 1;
  double sp_eps = 0.05;
  std::string sp_kind = "joint", sp_px, sp_py, sp_rates_out;
  sp->add_option("--channel", common.channel, "builtin name or JSON file")->required();
  sp->add_option("--n", sp_n, "block length")->required();
  sp->add_option("--epsilon", sp_eps, "quantile parameter");
  sp->add_option("--kind", sp_kind, "x_given_y|y_given_x|joint|x_only|y_only");
  sp->add_option("--px", sp_px, "per-letter x distribution, comma separated");
  sp->add_option("--py", sp_py, "per-letter y distribution, comma separated");
  sp->add_option("--out", common.out, "law CSV output (default stdout)");
  sp->add_option("--rates-out", sp_rates_out, "spectral rates JSON output");

  // omega
  auto* om = app.add_subcommand("omega", "searched converse bound evaluation");
  std::string om_n = "1";
  double om_r1 = 0, om_r2 = 0, om_gamma = 0;
  int om_grid = 10, om_ascent = 0;
  uint64_t om_seed = 0;
  om->add_option("--channel", common.channel)->required();
  om->add_option("--n", om_n, "block length or comma list")->required();
  om->add_option("--r1", om_r1, "rate 1 (nats)")->required();
  om->add_option("--r2", om_r2, "rate 2 (nats)")->required();
  om->add_option("--gamma", om_gamma, "threshold margin");
  om->add_option("--grid", om_grid, "simplex grid resolution");
  om->add_option("--ascent", om_ascent, "coordinate-ascent iterations");
  om->add_option("--seed", om_seed);
  om->add_option("--out", common.out);

  // resolve
  auto* re = app.add_subcommand("resolve", "resolvability code selection experiments");
  std::string re_n = "2", re_px, re_py;
  double re_r1 = 0, re_r2 = 0, re_gamma = 0.05;
  int re_trials = 200, re_seeds = 32;
  uint64_t re_seed = 0;
  bool re_agg = false;
  re->add_option("--channel", common.channel)->required();
  re->add_option("--n", re_n, "block length or comma list")->required();
  re->add_option("--r1", re_r1)->required();
  re->add_option("--r2", re_r2)->required();
  re->add_option("--gamma", re_gamma);
  re->add_option("--trials", re_trials, "max rejection-sampling trials");
  re->add_option("--seeds", re_seeds, "number of independent runs");
  re->add_option("--seed", re_seed, "base seed");
  re->add_option("--px", re_px, "per-letter x distribution");
  re->add_option("--py", re_py, "per-letter y distribution");
  re->add_flag("--aggregate", re_agg, "emit mean/min/max rows instead of per-seed rows");
  re->add_option("--out", common.out);

  // idcode
  auto* id = app.add_subcommand("idcode", "evaluate an ID code against the converse bound");
  std::string id_code, id_criterion = "max", id_rates;
  double id_r1 = 0, id_r2 = 0, id_gamma = 0, id_tau = 0.1;
  int id_grid = 10;
  id->add_option("--channel", common.channel)->required();
  id->add_option("--code", id_code, "ID code JSON file")->required();
  id->add_option("--rates", id_rates, "rate pair 'r1,r2' in nats");
  id->add_option("--r1", id_r1);
  id->add_option("--r2", id_r2);
  id->add_option("--gamma", id_gamma);
  id->add_option("--tau", id_tau, "average-criterion slack");
  id->add_option("--criterion", id_criterion, "max|avg");
  id->add_option("--grid", id_grid);
  id->add_option("--out", common.out);

  // region
  auto* rg = app.add_subcommand("region", "rate-region pentagons and membership maps");
  int rg_n = 1, rg_grid = 10, rg_map_res = 50;
  double rg_eps = 0.05, rg_map_max = 0.0;
  std::string rg_which = "sup", rg_map_out;
  bool rg_asym = false;
  rg->add_option("--channel", common.channel)->required();
  rg->add_option("--n", rg_n, "block length for finite-n proxies");
  rg->add_option("--epsilon", rg_eps);
  rg->add_option("--grid", rg_grid, "input simplex grid resolution");
  rg->add_option("--which", rg_which, "inf|sup|prime");
  rg->add_flag("--asymptotic", rg_asym, "single-letter pentagons (memoryless only)");
  rg->add_option("--map-out", rg_map_out, "membership map CSV");
  rg->add_option("--map-res", rg_map_res);
  rg->add_option("--map-max", rg_map_max, "map range (default: auto)");
  rg->add_option("--out", common.out);

  // props
  auto* pr = app.add_subcommand("props", "verify the bound-function identities");
  int pr_n = 2, pr_instances = 100;
  uint64_t pr_seed = 0;
  std::string pr_gammas = "0,0.05,0.1";
  double pr_tau_offset = 0.05;
  pr->add_option("--channel", common.channel, "extra named channel instance");
  pr->add_option("--n", pr_n);
  pr->add_option("--instances", pr_instances);
  pr->add_option("--seed", pr_seed);
  pr->add_option("--gammas", pr_gammas, "comma list of gamma values");
  pr->add_option("--tau-offset", pr_tau_offset);
  pr->add_option("--out", common.out);

  // dump-channel
  auto* dc = app.add_subcommand("dump-channel", "resolve and re-emit a channel as JSON");
  dc->add_option("--channel", common.channel)->required();
  dc->add_option("--out", common.out);

  // global flags may appear after subcommand options
  for (auto* sub : app.get_subcommands(nullptr)) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  auto started = std::chrono::steady_clock::now();
  int rc = kExitOk;
  try {
    if (common.threads > 0) set_parallelism(common.threads);
    common.bits = units == "bits";
    if (sp->parsed())
      rc = run_spectrum(common, sp_n, sp_eps, sp_kind, sp_px, sp_py, sp_rates_out);
    else if (om->parsed())
      rc = run_omega(common, om_n, om_r1, om_r2, om_gamma, om_grid, om_ascent, om_seed);
    else if (re->parsed())
      rc = run_resolve(common, re_n, re_r1, re_r2, re_gamma, re_trials, re_seeds, re_seed, re_px,
                       re_py, re_agg);
    else if (id->parsed()) {
      if (!id_rates.empty()) {
        auto rr = parse_double_list(id_rates);
        if (rr.size() != 2) throw UsageError("--rates needs exactly two comma-separated values");
        id_r1 = rr[0];
        id_r2 = rr[1];
      }
      rc = run_idcode(common, id_code, id_r1, id_r2, id_gamma, id_tau, id_criterion, id_grid);
    }
    else if (rg->parsed())
      rc = run_region(common, rg_n, rg_eps, rg_grid, rg_which, rg_asym, rg_map_out, rg_map_res,
                      rg_map_max);
    else if (pr->parsed())
      rc = run_props(common, pr_n, pr_instances, pr_seed, pr_gammas, pr_tau_offset);
    else if (dc->parsed())
      write_file(common.out, MacChannel::resolve(common.channel).to_json_text() + "\n");
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const CapExceededError& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return kExitCap;
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - started);
  std::cerr << "wall_time_s=" << elapsed.count() << "\n";
  return rc;
}
