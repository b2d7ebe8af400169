#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

const std::string kCli = CORNEREXT_CLI_PATH;
const std::string kData = CORNEREXT_DATA_DIR;

int run(const std::string& args) {
  const std::string cmd = kCli + " " + args + " > /dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("borel subcommand passes and validates order bounds") {
  CHECK(run("borel --order 8 --case sin@0") == 0);
  CHECK(run("borel --case zeros") == 0);
  CHECK(run("borel --order 13") == 2);
  CHECK(run("borel --order 0") == 2);
  CHECK(run("--no-such-flag") == 2);
}

TEST_CASE("extend subcommand: interval battery and box case") {
  CHECK(run("extend --case sin --order 6") == 0);
  CHECK(run("extend --case exp2d --order 4") == 0);
  // constant source: every residual row is exactly zero
  const std::string out = "/tmp/cornerext_cli_const.csv";
  CHECK(run("extend --case const5 --order 6 --out " + out) == 0);
  const std::string csv = slurp(out);
  std::istringstream lines(csv);
  std::string line;
  std::getline(lines, line);  // header
  while (std::getline(lines, line)) {
    if (line.find("restriction-identity") != std::string::npos ||
        line.find("seam-jet") != std::string::npos)
      CHECK(line.find(",0,") != std::string::npos);
  }
}

TEST_CASE("manifold subcommand needs a readable atlas") {
  CHECK(run("manifold") == 2);
  CHECK(run("manifold --atlas /no/such/file.atlas") == 2);
  CHECK(run("manifold --atlas " + kData + "/quarter-disc.atlas") == 0);
  // the broken atlas produces FAIL rows, hence exit status 1
  CHECK(run("manifold --atlas " + kData + "/quarter-disc-broken.atlas") == 1);
}

TEST_CASE("mapspace subcommand") {
  CHECK(run("mapspace --case so3-loop --grid 16 --order 4") == 0);
  CHECK(run("mapspace --case holomorphy") == 0);
}

TEST_CASE("identical config produces byte-identical CSV") {
  const std::string out1 = "/tmp/cornerext_cli_a.csv";
  const std::string out2 = "/tmp/cornerext_cli_b.csv";
  const std::string args = "extend --case exp --order 5 --seed 7 --out ";
  CHECK(run(args + out1) == 0);
  CHECK(run(args + out2) == 0);
  const std::string a = slurp(out1);
  const std::string b = slurp(out2);
  CHECK(a == b);
  CHECK(a.rfind("case,check,location,value,bound,status\n", 0) == 0);
  // a different seed changes sampling but not the verdicts
  CHECK(run("extend --case exp --order 5 --seed 8 --out " + out2) == 0);
}

TEST_CASE("config file with flag override") {
  const std::string cfgpath = "/tmp/cornerext_cli.cfg";
  {
    std::ofstream f(cfgpath);
    f << "order=5\ncase=exp\nseed=7\n";
  }
  const std::string outa = "/tmp/cornerext_cli_c.csv";
  const std::string outb = "/tmp/cornerext_cli_d.csv";
  CHECK(run("extend --config " + cfgpath + " --out " + outa) == 0);
  CHECK(run("extend --case exp --order 5 --seed 7 --out " + outb) == 0);
  CHECK(slurp(outa) == slurp(outb));
  // flags override file values: order 13 from the flag is rejected
  CHECK(run("extend --config " + cfgpath + " --order 13") == 2);
}
