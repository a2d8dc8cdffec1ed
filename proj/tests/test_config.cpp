#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "core/config.hpp"
#include "core/csvio.hpp"
#include "core/driver.hpp"

using namespace dpnls;
namespace fs = std::filesystem;

namespace {
std::string tmpdir() {
  static std::string d = [] {
    auto p = fs::temp_directory_path() / "dpnls_test_cfg";
    fs::create_directories(p);
    return p.string();
  }();
  return d;
}

std::string write_file(const std::string& name, const std::string& text) {
  std::string path = tmpdir() + "/" + name;
  std::ofstream(path) << text;
  return path;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}
}  // namespace

TEST_CASE("defaults resolve to the headline problem") {
  Config c = parse_config("");
  CHECK(c.d == 1);
  CHECK(c.p == 3.0);
  CHECK(c.alpha() == doctest::Approx(1.0));
  CHECK(c.sigma() == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("file with sections and comments parses") {
  std::string path = write_file("ok.cfg",
                                "# comment\n[problem]\nd = 2\np = 2.5\n\n"
                                "[run]\nds = 1e-3\n[output]\ndir = /tmp/x\n");
  Config c = parse_config(path);
  CHECK(c.d == 2);
  CHECK(c.p == 2.5);
  CHECK(c.ds == 1e-3);
  CHECK(c.output_dir == "/tmp/x");
}

TEST_CASE("overrides win over the file") {
  std::string path = write_file("ov.cfg", "[problem]\nd = 2\np = 2.5\n");
  Config c = parse_config(path, {"problem.p=1.75", "grid.Ny=512"});
  CHECK(c.p == 1.75);
  CHECK(c.Ny == 512);
}

TEST_CASE("unknown keys and bad values are rejected") {
  CHECK_THROWS_WITH_AS(parse_config(write_file("bad1.cfg", "problem.dd = 1\n")),
                       doctest::Contains("unknown config key"),
                       std::runtime_error);
  CHECK_THROWS(parse_config("", {"problem.d=banana"}));
  CHECK_THROWS(parse_config("", {"nonsense"}));
}

TEST_CASE("admissibility of (d, p, epsilon) is enforced") {
  CHECK_THROWS(parse_config("", {"problem.p=5"}));   // p = 1+4/d excluded
  CHECK_THROWS(parse_config("", {"problem.p=0.5"}));
  CHECK_THROWS(parse_config("", {"problem.d=4"}));
  CHECK_THROWS(parse_config("", {"problem.epsilon=2"}));
  CHECK_NOTHROW(parse_config("", {"problem.d=2", "problem.p=2.9"}));
}

TEST_CASE("missing file error names the path") {
  CHECK_THROWS_WITH_AS(parse_config("/no/such/file.cfg"),
                       doctest::Contains("/no/such/file.cfg"),
                       std::runtime_error);
}

TEST_CASE("dump round-trips through the parser") {
  Config c = parse_config("", {"problem.d=3", "problem.p=1.5",
                               "run.eps_tube=0.25"});
  std::string path = write_file("dump.cfg", dump_config(c));
  Config c2 = parse_config(path);
  CHECK(c2.d == 3);
  CHECK(c2.p == 1.5);
  CHECK(c2.eps_tube == 0.25);
  CHECK(dump_config(c2) == dump_config(c));
}

TEST_CASE("csv writer emits 17 significant digits") {
  std::string path = tmpdir() + "/w.csv";
  {
    CsvWriter w(path, {"a", "b"});
    w.row({1.0 / 3.0, 2.0});
  }
  CHECK(slurp(path) == "a,b\n0.33333333333333331,2\n");
  CsvWriter w2(path, {"a"});
  CHECK_THROWS(w2.row({1.0, 2.0}));
}

TEST_CASE("report runs cleanly on an empty directory") {
  Config c = parse_config("");
  c.output_dir = tmpdir() + "/empty";
  std::ostringstream log;
  CHECK(run_command("report", c, log) == 0);
  CHECK(log.str().find("no artifacts") != std::string::npos);
  CHECK_THROWS(run_command("frobnicate", c, log));
}

TEST_CASE("identical configs give byte-identical artifacts") {
  // law-integrate is the cheapest artifact-producing command
  std::ostringstream log;
  for (const char* sub : {"a", "b"}) {
    Config c = parse_config(
        "", {"grid.Ny=1024", std::string("output.dir=") + tmpdir() + "/" + sub});
    CHECK(run_command("law-integrate", c, log) == 0);
  }
  CHECK(slurp(tmpdir() + "/a/law.csv") == slurp(tmpdir() + "/b/law.csv"));
  CHECK(slurp(tmpdir() + "/a/law_rate_fit.csv") ==
        slurp(tmpdir() + "/b/law_rate_fit.csv"));
  CHECK(!slurp(tmpdir() + "/a/law.csv").empty());
}
