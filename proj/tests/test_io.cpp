#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "napprox/io.hpp"
#include "napprox/orbits.hpp"
#include "napprox/units.hpp"

using namespace napprox;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_cli(const std::string& args, const std::string& redirect = "> /dev/null 2>&1") {
  const char* cli = std::getenv("NAPPROX_CLI");
  REQUIRE(cli != nullptr);
  int rc = std::system((std::string(cli) + " " + args + " " + redirect).c_str());
  return WEXITSTATUS(rc);
}

}  // namespace

TEST_CASE("format_g is stable at 12 significant digits") {
  CHECK(format_g(0.4472135954999579) == "0.4472135955");
  CHECK(format_g(-0.0) == "0");
  CHECK(format_g(1234567890123.0) == "1.23456789012e+12");
}

TEST_CASE("CSV schema for a quadratic and a cubic lattice") {
  FieldPtr gf = field_new({-1, -1, 1}, Rat(1), Rat(2));
  ModuleLattice glat = power_basis_lattice(gf);
  auto list = oracle_scan(glat, {Rat(1), 20});
  std::string csv = approximations_csv(glat, list, csv_context(glat));
  CHECK(csv.rfind("q,p1,v1,gamma,norm_level,sign_class,source,err\n", 0) == 0);
  CHECK(csv.find(",oracle,") != std::string::npos);

  FieldPtr tf = field_new({-1, -2, 1, 1}, Rat(1), Rat(2));
  ModuleLattice tlat = power_basis_lattice(tf);
  UnitGroup tu = fundamental_units(multiplier_ring(tlat));
  auto alg = enumerate_algebraic(tlat, tu, {Rat(3), 50});
  REQUIRE(!alg.empty());
  std::string tcsv = approximations_csv(tlat, alg, csv_context(tlat));
  CHECK(tcsv.rfind("q,p1,p2,v1,v2,gamma,norm_level,sign_class,source,err\n", 0) == 0);
  // sign_class populated on a totally real cubic
  CHECK((tcsv.find(",+,algebraic,") != std::string::npos ||
         tcsv.find(",-,algebraic,") != std::string::npos));
}

TEST_CASE("empty input produces a header-only CSV and an axes-only SVG") {
  FieldPtr gf = field_new({-1, -1, 1}, Rat(1), Rat(2));
  ModuleLattice glat = power_basis_lattice(gf);
  std::vector<NormalizedApproximation> empty;
  std::string csv = approximations_csv(glat, empty, csv_context(glat));
  CHECK(csv == "q,p1,v1,gamma,norm_level,sign_class,source,err\n");
  std::string svg = approximations_svg(glat, empty, PlotSpec{});
  CHECK(svg.rfind("<svg ", 0) == 0);
  CHECK(svg.find("<circle") == std::string::npos);
  CHECK(svg.find("<line") != std::string::npos);
  CHECK(svg.find("</svg>") != std::string::npos);
}

TEST_CASE("SVG emission is deterministic") {
  FieldPtr cf = field_new({-2, 0, 0, 1}, Rat(1), Rat(2));
  ModuleLattice clat = power_basis_lattice(cf);
  auto list = oracle_scan(clat, {Rat(3), 100});
  std::string a = approximations_svg(clat, list, PlotSpec{}, 10, 8);
  std::string b = approximations_svg(clat, list, PlotSpec{}, 10, 8);
  CHECK(a == b);
  CHECK(a.find("<circle") != std::string::npos);
  CHECK(a.find("<polyline") != std::string::npos);
}

TEST_CASE("cli: reports and exit codes") {
  CHECK(run_cli("dual --poly -1,-1,1") == 0);
  CHECK(run_cli("ring --poly -2,0,0,1") == 0);
  CHECK(run_cli("field --poly not-a-poly") == 2);
  CHECK(run_cli("no-such-command") == 2);
  CHECK(run_cli("curves --poly -2,0,0,1 --level-max 0") == 2);
}

TEST_CASE("cli: scan with C=0 emits only the header") {
  const char* tmp = std::getenv("TMPDIR");
  std::string out = std::string(tmp ? tmp : "/tmp") + "/napprox_empty.csv";
  CHECK(run_cli("scan --poly -1,-1,1 --C 0 --qmax 10 --out " + out) == 0);
  CHECK(slurp(out) == "q,p1,v1,gamma,norm_level,sign_class,source,err\n");
}

TEST_CASE("cli: approx --verify agrees with the oracle") {
  CHECK(run_cli("approx --poly -2,0,0,1 --C 3 --qmax 500 --verify") == 0);
}

TEST_CASE("cli: config file with flag override") {
  const char* tmp = std::getenv("TMPDIR");
  std::string dir = tmp ? tmp : "/tmp";
  std::string cfg = dir + "/napprox_job.json";
  {
    std::ofstream f(cfg);
    f << R"({"poly": [-1,-1,1], "C": "1", "qmax": 30})" << "\n";
  }
  std::string out1 = dir + "/napprox_cfg1.csv";
  std::string out2 = dir + "/napprox_cfg2.csv";
  CHECK(run_cli("scan --config " + cfg + " --out " + out1) == 0);
  CHECK(run_cli("scan --config " + cfg + " --qmax 5 --out " + out2) == 0);
  std::string a = slurp(out1), b = slurp(out2);
  CHECK(a.size() > b.size());  // the flag overrode the config's qmax
  CHECK(a.substr(0, a.find('\n')) == b.substr(0, b.find('\n')));
}
