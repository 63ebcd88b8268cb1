#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

struct RunResult {
  int exit_code;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  const std::string out_path = "cli_stdout.tmp";
  const std::string cmd =
      std::string(CFM_CLI_PATH) + " " + args + " > " + out_path + " 2> cli_stderr.tmp";
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WEXITSTATUS(status);
  r.out = slurp(out_path);
  return r;
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("convert-units") {
  const RunResult r = run_cli("convert-units 1 eV cm-1");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "8065.47"));
  const RunResult identity = run_cli("convert-units 2.5 hartree au");
  CHECK(contains(identity.out, "2.5"));
  CHECK(run_cli("convert-units 1 eV parsecs").exit_code == 3);
}

TEST_CASE("list-presets") {
  const RunResult r = run_cli("list-presets");
  CHECK(r.exit_code == 0);
  for (const char* name : {"infinite-well-25", "finite-well-24", "harmonic-26",
                           "dgw", "johnson-dwp", "hydrogen", "morse", "kp-1band",
                           "kp-3band", "kp-5band"})
    CHECK(contains(r.out, name));
}

TEST_CASE("solve with oracle column and summary") {
  const RunResult r = run_cli(
      "solve --preset infinite-well-25 --emax 0.05 --grid-points 400 --oracle "
      "--csv cli_levels.csv");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "# max relative error vs oracle:"));
  CHECK(contains(r.out, "1.60000000e-03"));

  SUBCASE("summary equals the value recomputed from the CSV") {
    std::ifstream csv("cli_levels.csv");
    std::string line;
    std::getline(csv, line);  // header
    double max_rel = 0.0;
    while (std::getline(csv, line)) {
      double e, o;
      int idx;
      char c;
      std::istringstream row(line);
      row >> idx >> c >> e >> c >> o;
      max_rel = std::max(max_rel, std::abs(e - o) / std::abs(o));
    }
    char expected[64];
    std::snprintf(expected, sizeof expected, "%.3e", max_rel);
    CHECK(contains(r.out, expected));
  }

  SUBCASE("byte-identical reruns") {
    const RunResult again = run_cli(
        "solve --preset infinite-well-25 --emax 0.05 --grid-points 400 --oracle "
        "--csv cli_levels2.csv");
    CHECK(again.out == r.out);
    CHECK(slurp("cli_levels2.csv") == slurp("cli_levels.csv"));
  }
}

TEST_CASE("exit codes distinguish failure classes") {
  CHECK(run_cli("solve --preset does-not-exist").exit_code == 2);
  CHECK(run_cli("solve --preset johnson-dwp --emax 4000 --grid-points 300")
            .exit_code == 3);  // missing mass
  CHECK(run_cli("solve").exit_code == 3);  // neither preset nor config
  CHECK(run_cli("frobnicate").exit_code != 0);
}

TEST_CASE("scan emits plot data with blanked pole rows") {
  const RunResult quick = run_cli(
      "scan --preset infinite-well-25 --parity even --emin 0.003 --emax 0.02 "
      "--points 60");
  CHECK(quick.exit_code == 0);
  CHECK(contains(quick.out, "# preset: infinite-well-25"));

  // Aim a grid point at the l+ pole (derivative-ratio denominator zero at
  // kappa (b - x0) = pi/2) so the pole row is exercised deterministically.
  const double pi = 3.14159265358979323846;
  const double b = 0.5 * 25.0 * pi / std::sqrt(2.0);
  const double x0 = 0.37 * b;
  const double kappa_p = 0.5 * pi / (b - x0);
  const double e_p = 0.5 * kappa_p * kappa_p;
  const double spacing = 1e-4;
  char args[256];
  std::snprintf(args, sizeof args,
                "scan --preset infinite-well-25 --parity even --emin %.17g "
                "--emax %.17g --points 10",
                e_p - 5.0 * spacing, e_p + 5.0 * spacing);
  const RunResult r = run_cli(args);
  CHECK(r.exit_code == 0);
  std::istringstream lines(r.out);
  std::string line;
  int data_rows = 0, blank_rows = 0;
  bool past_header = false;
  while (std::getline(lines, line)) {
    if (!line.empty() && line[0] == '#') continue;
    past_header = true;
    if (line.empty()) {
      ++blank_rows;
    } else {
      ++data_rows;
      double e, f;
      CHECK(std::sscanf(line.c_str(), "%lf %lf", &e, &f) == 2);
    }
  }
  CHECK(past_header);
  CHECK(data_rows + blank_rows == 10);
  CHECK(blank_rows >= 1);
}

TEST_CASE("scan trace dumps canonical columns") {
  const RunResult r = run_cli(
      "scan --preset morse --trace-at -100.0 --trace-out cli_trace.dat");
  CHECK(r.exit_code == 0);
  const std::string trace = slurp("cli_trace.dat");
  CHECK(contains(trace, "# x  alpha  alpha_p  beta  beta_p"));
  std::istringstream lines(trace);
  std::string line;
  int rows = 0;
  while (std::getline(lines, line)) {
    if (line.empty() || line[0] == '#') continue;
    double x, a, ap, b, bp;
    CHECK(std::sscanf(line.c_str(), "%lf %lf %lf %lf %lf", &x, &a, &ap, &b, &bp) == 5);
    ++rows;
  }
  CHECK(rows > 100);
}

TEST_CASE("bands emit k columns plus the oracle overlay") {
  const RunResult r = run_cli(
      "bands --preset kp-1band --kpoints 11 --out cli_bands.dat "
      "--oracle-out cli_bands_oracle.dat");
  CHECK(r.exit_code == 0);
  const std::string bands = slurp("cli_bands.dat");
  const std::string oracle = slurp("cli_bands_oracle.dat");
  int data_rows = 0;
  std::istringstream lines(bands);
  std::string line;
  while (std::getline(lines, line)) {
    if (line.empty() || line[0] == '#') continue;
    double k, e1;
    CHECK(std::sscanf(line.c_str(), "%lf %lf", &k, &e1) == 2);
    ++data_rows;
  }
  CHECK(data_rows == 11);
  CHECK(contains(oracle, "analytic dispersion"));

  SUBCASE("flag-built comb matches the preset") {
    const RunResult custom = run_cli(
        "bands --a 2.22 --g 1 --x0 1 --nbands 1 --kpoints 11 --out cli_bands2.dat");
    CHECK(custom.exit_code == 0);
    // energies identical line by line (headers differ by name)
    std::istringstream a(slurp("cli_bands.dat")), b(slurp("cli_bands2.dat"));
    std::string la, lb;
    while (std::getline(a, la) && std::getline(b, lb)) {
      if (la.empty() || la[0] == '#') continue;
      CHECK(la == lb);
    }
  }
}

TEST_CASE("config driven run") {
  {
    std::ofstream cfg("cli_run.cfg");
    cfg << "[problem]\n"
           "preset = morse\n"
           "unit = au\n"
           "emin = -5.0 au\n"
           "emax = -0.05 au\n"
           "grid_points = 400\n";
  }
  const RunResult r = run_cli("solve --config cli_run.cfg --oracle");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "# preset: morse"));

  {
    std::ofstream cfg("cli_bad.cfg");
    cfg << "[problem]\npreset = morse\nwhatever = 1\n";
  }
  CHECK(run_cli("solve --config cli_bad.cfg").exit_code == 3);
  CHECK(run_cli("solve --config does_not_exist.cfg").exit_code == 3);
}
