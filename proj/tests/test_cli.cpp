// Exercises the installed command-line surface: exit codes, channel
// round-trips and file outputs. Takes the CLI path as argv[1].

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

int g_failures = 0;
std::string g_cli;

void check(bool ok, const std::string& what) {
  std::printf("[%s] %s\n", ok ? "ok" : "FAIL", what.c_str());
  if (!ok) ++g_failures;
}

int run(const std::string& args) {
  int rc = std::system((g_cli + " " + args + " >/dev/null 2>/dev/null").c_str());
  return WEXITSTATUS(rc);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: cli_tests <macid binary>\n");
    return 2;
  }
  g_cli = argv[1];

  check(run("spectrum --channel binary-adder --n 1 --out cli_law.csv") == 0,
        "spectrum exits 0 on a builtin channel");
  check(run("omega --channel binary-adder --n 1 --r1 0.5 --r2 0.5 --grid 4 --out cli_om.csv") == 0,
        "omega exits 0");
  check(run("props --instances 3 --seed 5 --gammas 0,0.05 --out cli_props.txt") == 0,
        "props exits 0 with no violations");
  check(run("props --channel binary-adder --n 2 --seed 7 --instances 25") == 0,
        "props with a named channel exits 0");

  // usage errors exit 1
  check(run("spectrum --n 1") == 1, "missing required flag exits 1");
  check(run("spectrum --channel no-such-channel --n 1") == 1, "unknown channel exits 1");
  check(run("omega --channel binary-adder --n 1 --r1 0.5 --r2 0.5 --grid 1") == 1,
        "bad grid resolution exits 1");

  // validation errors exit 2, naming the bad row
  {
    std::ofstream bad("cli_bad_channel.json");
    bad << R"({"x_size":2,"y_size":2,"z_size":3,"kind":"memoryless","kernel":)"
        << R"([[[0.5,0.4,0.0],[0,1,0]],[[0,1,0],[0,0,1]]]})";
  }
  check(run("spectrum --channel cli_bad_channel.json --n 1") == 2,
        "kernel row summing to 0.9 exits 2");

  // cap exceeded exits 3
  check(run("omega --channel binary-adder --n 12 --r1 0.5 --r2 0.5 --grid 2") == 3,
        "over-cap block length exits 3");

  // the cap is tunable through the environment (2*2*3 = 12 states at n=1)
  check(WEXITSTATUS(std::system(("MACID_MAX_STATES=10 " + g_cli +
                                 " spectrum --channel binary-adder --n 1"
                                 " >/dev/null 2>/dev/null")
                                    .c_str())) == 3,
        "MACID_MAX_STATES=10 rejects even n=1 on the adder");
  check(WEXITSTATUS(std::system(("MACID_MAX_STATES=12 " + g_cli +
                                 " spectrum --channel binary-adder --n 1"
                                 " >/dev/null 2>/dev/null")
                                    .c_str())) == 0,
        "MACID_MAX_STATES=12 admits n=1");

  // dump-channel round-trips bit-identically
  check(run("dump-channel --channel 'noisy-adder(0.3)' --out cli_dump1.json") == 0,
        "dump-channel exits 0");
  check(run("dump-channel --channel cli_dump1.json --out cli_dump2.json") == 0,
        "re-dump of the dumped channel exits 0");
  check(!slurp("cli_dump1.json").empty() && slurp("cli_dump1.json") == slurp("cli_dump2.json"),
        "dumped channel reloads to identical bytes");

  // identical configs produce byte-identical payloads
  check(run("resolve --channel binary-adder --n 2 --r1 1.0 --r2 1.0 --gamma 0.05 --trials 100"
            " --seeds 8 --seed 3 --out cli_r1.csv") == 0,
        "resolve exits 0");
  check(run("resolve --channel binary-adder --n 2 --r1 1.0 --r2 1.0 --gamma 0.05 --trials 100"
            " --seeds 8 --seed 3 --out cli_r2.csv") == 0,
        "repeat resolve exits 0");
  check(!slurp("cli_r1.csv").empty() && slurp("cli_r1.csv") == slurp("cli_r2.csv"),
        "identical configs give byte-identical CSV");

  // an ID code file through the idcode verdict path
  {
    std::ofstream code("cli_code.json");
    code << R"({"n":1,"inputs1":[[1.0,0.0],[0.0,1.0],[0.5,0.5]],)"
         << R"("inputs2":[[1.0,0.0],[0.0,1.0],[0.5,0.5]],)"
         << R"("decoders":[[[0],[1],[0,1]],[[1],[2],[1,2]],[[0,1],[1,2],[1]]]})";
  }
  check(run("idcode --channel binary-adder --code cli_code.json --r1 0 --r2 0 --criterion max"
            " --grid 4 --out cli_verdict.json") == 0,
        "idcode verdict exits 0 when the inequality holds");

  // region emission with a membership map
  check(run("region --channel binary-adder --asymptotic --which prime --grid 6"
            " --out cli_region.json --map-out cli_map.csv --map-res 10") == 0,
        "region exits 0");
  check(slurp("cli_map.csv").find("r1,r2,in01") != std::string::npos,
        "membership map carries the documented header");

  // bits display divides rates by ln 2
  check(run("spectrum --channel binary-adder --n 1 --units bits --out cli_law_bits.csv") == 0,
        "spectrum with --units bits exits 0");
  check(slurp("cli_law_bits.csv").find("value_bits") != std::string::npos,
        "bits output renames the value column");

  std::printf("%s\n", g_failures == 0 ? "cli surface: all checks passed" : "cli surface: FAILURES");
  return g_failures == 0 ? 0 : 1;
}
