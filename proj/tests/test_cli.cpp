#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

const std::string kBin = COVERLAB_CLI_PATH;
const std::string kData = COVERLAB_TEST_DATA_DIR;

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("coverlab-cli-" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const {
    return (path / name).string();
  }
};

int run(const std::string& args, const std::string& stdoutFile = "") {
  std::string cmd = kBin + " " + args;
  cmd += stdoutFile.empty() ? " >/dev/null" : " >" + stdoutFile;
  cmd += " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  REQUIRE(WIFEXITED(status));
  return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("pipeline round trip on a small formula") {
  TempDir t;
  const std::string formula = kData + "/corpus/f01.json";
  CHECK(run("gen --formula " + formula + " --out " + t.file("inst.json")) == 0);
  CHECK(run("sat --formula " + formula + " --out " + t.file("asg.json")) == 0);
  CHECK(run("witness --instance " + t.file("inst.json") + " --assignment " +
            t.file("asg.json") + " --cover " + t.file("cover.json") +
            " --cuts " + t.file("cuts.json")) == 0);
  CHECK(run("verify --instance " + t.file("inst.json") + " --cover " +
            t.file("cover.json")) == 0);
  CHECK(run("verify --instance " + t.file("inst.json") + " --cuts " +
            t.file("cuts.json")) == 0);

  // budget decrement flips the verdict
  CHECK(run("verify --instance " + t.file("inst.json") + " --cover " +
            t.file("cover.json") + " --limit 3") == 1);

  CHECK(run("render --instance " + t.file("inst.json") + " --cover " +
            t.file("cover.json") + " --cuts " + t.file("cuts.json") +
            " --out " + t.file("pic.svg")) == 0);
  CHECK(fs::exists(t.file("pic.svg")));
}

TEST_CASE("identical inputs produce identical output files") {
  TempDir t;
  const std::string formula = kData + "/corpus/f02.json";
  REQUIRE(run("gen --formula " + formula + " --out " + t.file("a.json")) == 0);
  REQUIRE(run("gen --formula " + formula + " --out " + t.file("b.json")) == 0);
  CHECK(slurp(t.file("a.json")) == slurp(t.file("b.json")));

  REQUIRE(run("render --instance " + t.file("a.json") + " --out " +
              t.file("a.svg")) == 0);
  REQUIRE(run("render --instance " + t.file("a.json") + " --out " +
              t.file("b.svg")) == 0);
  const std::string svg = slurp(t.file("a.svg"));
  CHECK(svg == slurp(t.file("b.svg")));
  CHECK(!svg.empty());
}

TEST_CASE("oracle subcommand writes the report and signals the verdict") {
  TempDir t;
  const std::string pts = kData + "/gap9.json";
  CHECK(run("oracle --points " + pts + " --limit 3 --mode segments --out " +
            t.file("r1.json")) == 0);
  CHECK(slurp(t.file("r1.json")).find("\"FOUND\"") != std::string::npos);

  CHECK(run("oracle --points " + pts + " --limit 2 --mode segments --out " +
            t.file("r2.json")) == 1);
  CHECK(slurp(t.file("r2.json")).find("\"NONE\"") != std::string::npos);

  CHECK(run("oracle --points " + pts + " --limit 3 --mode guillotine --out " +
            t.file("r3.json")) == 1);
  CHECK(slurp(t.file("r3.json")).find("\"NONE_IN_FAMILY\"") !=
        std::string::npos);
}

TEST_CASE("certify prints the two-sided verdict") {
  TempDir t;
  CHECK(run("certify --formula " + kData + "/corpus/f01.json --out " +
            t.file("rep.json"), t.file("stdout.txt")) == 0);
  const std::string line = slurp(t.file("stdout.txt"));
  CHECK(line.find("SAT ∧ FOUND@4") != std::string::npos);
  CHECK(slurp(t.file("rep.json")).find("\"certify\"") != std::string::npos);
}

TEST_CASE("usage and format errors exit 2") {
  TempDir t;
  CHECK(run("gen --formula /does/not/exist.json --out " + t.file("x.json")) ==
        2);
  CHECK(run("nonsense") == 2);
  CHECK(run("verify --instance " + kData + "/gap9.json") == 2);
  CHECK(run("oracle --points " + kData + "/gap9.json --limit 3 "
            "--mode nonsense") == 2);

  // malformed json
  std::ofstream(t.file("bad.json")) << "{ not json";
  CHECK(run("gen --formula " + t.file("bad.json") + " --out " +
            t.file("y.json")) == 2);

  // assignment length contradicts the instance
  REQUIRE(run("gen --formula " + kData + "/corpus/f01.json --out " +
              t.file("inst.json")) == 0);
  std::ofstream(t.file("short.json")) << "{ \"values\": [true] }";
  CHECK(run("witness --instance " + t.file("inst.json") + " --assignment " +
            t.file("short.json") + " --cover " + t.file("c.json") +
            " --cuts " + t.file("k.json")) == 2);
}
