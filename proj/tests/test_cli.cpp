#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <sys/wait.h>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fplab/set_io.hpp"

namespace fs = std::filesystem;

namespace {

int run(const std::string& args) {
  const std::string cmd = std::string(FPLAB_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct TempDir {
  fs::path path;
  TempDir() : path(fs::temp_directory_path() / "fplab_cli_test") {
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("construct emits fpset files and sumset combines them") {
  TempDir tmp;
  const auto a_path = tmp.path / "a.fpset";
  const auto b_path = tmp.path / "b.fpset";
  const auto out_path = tmp.path / "out.fpset";

  CHECK(run("construct --kind ap --p 13 --start 1 --step 1 --len 2 --out " + a_path.string()) == 0);
  CHECK(run("construct --kind ap --p 13 --start 10 --step 1 --len 1 --out " + b_path.string()) == 0);
  CHECK(run("sumset --a " + a_path.string() + " --b " + b_path.string() + " --out " +
            out_path.string()) == 0);
  CHECK(slurp(out_path) == "# fpset v1\np=13\n11,12\n");
}

TEST_CASE("experiment subcommand writes deterministic reports and exits cleanly") {
  TempDir tmp;
  const auto r1 = tmp.path / "r1.json";
  const auto r2 = tmp.path / "r2.json";
  const std::string base =
      "experiment covering --primes 101 --trials 2 --seed 5 --out ";
  CHECK(run(base + r1.string()) == 0);
  CHECK(run(base + r2.string() + " --threads 3") == 0);
  CHECK(slurp(r1) == slurp(r2));
  CHECK(!slurp(r1).empty());
}

TEST_CASE("cover subcommand certifies a progression") {
  TempDir tmp;
  const auto p_path = tmp.path / "p.fpset";
  CHECK(run("construct --kind ap --p 1009 --start 0 --step 1 --len 303 --out " + p_path.string()) == 0);
  CHECK(run("cover --in " + p_path.string() + " --eps 0.25") == 0);
  CHECK(run("cover --in " + p_path.string()) == 0);
}

TEST_CASE("assertion failures exit with status 1") {
  // a slack above 1 is unattainable: |A^{r_1}+...+A^{r_k}| never exceeds the cap
  CHECK(run("experiment lower-bound --primes 101 --densities 0.3 --trials 2 --seed 3 "
            "--slack 1.5") == 1);
}

TEST_CASE("usage errors exit with status 2") {
  CHECK(run("definitely-not-a-subcommand") == 2);
  CHECK(run("experiment no-such-name --trials 1") == 2);
  CHECK(run("construct --kind ap --start 0 --step 1 --len 2") == 2);  // missing --p
  TempDir tmp;
  const auto a_path = tmp.path / "a.fpset";
  CHECK(run("construct --kind ap --p 13 --start 1 --step 1 --len 2 --out " + a_path.string()) == 0);
  CHECK(run("aip --sets " + a_path.string() + " --exponents 1 --exponents 2") == 2);
}

TEST_CASE("transform and rho read set files") {
  TempDir tmp;
  const auto p_path = tmp.path / "p.fpset";
  CHECK(run("construct --kind ap --p 101 --start 0 --step 1 --len 30 --out " + p_path.string()) == 0);
  CHECK(run("transform --in " + p_path.string()) == 0);
  CHECK(run("rho --a " + p_path.string() + " --b " + p_path.string()) == 0);
  CHECK(run("aip --sets " + p_path.string() + " --exponents 1") == 0);
}

TEST_CASE("counterexample construction writes both interval files") {
  TempDir tmp;
  const auto w_path = tmp.path / "w.fpset";
  const auto w1_path = tmp.path / "w1.fpset";
  CHECK(run("construct --kind counterexample --p 1009 --omega 0.05 --omega1 0.05 --out " +
            w_path.string() + " --out2 " + w1_path.string()) == 0);
  auto w = fplab::read_fpset_file(w_path);
  auto w1 = fplab::read_fpset_file(w1_path);
  CHECK(w.size() == 51);
  CHECK(w1.size() == 51);
  CHECK(w.elements().front() == 60);
  CHECK(w1.elements().front() == 0);
}
