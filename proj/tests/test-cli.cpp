#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

const fs::path& scratch_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() /
                 ("relmon-cli-tests-" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

struct RunResult {
  int exit_code;
  std::string output;  // stdout + stderr
};

RunResult run_cli(const std::string& args) {
  static int counter = 0;
  const fs::path capture = scratch_dir() / ("capture-" + std::to_string(counter++));
  const std::string cmd = std::string(RELMON_CLI_PATH) + " " + args + " > " +
                          capture.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  std::ifstream in(capture, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return {code, ss.str()};
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("sieve subcommand", "[cli]") {
  const fs::path out = scratch_dir() / "sieve2";
  const RunResult r = run_cli("sieve --n 2 --out " + out.string());
  INFO(r.output);
  REQUIRE(r.exit_code == 0);
  REQUIRE(r.output.find("units=2 reducible=14 irreducible=0 total=16") != std::string::npos);
  REQUIRE(r.output.find("witness-pair=none") != std::string::npos);
  REQUIRE(r.output.find("modes-agree=yes") != std::string::npos);

  const std::string csv = read_file(out / "classification-n2.csv");
  const std::string golden = read_file(fs::path(RELMON_GOLDEN_DIR) / "classification-n2.csv");
  REQUIRE(csv == golden);

  const RunResult r1 = run_cli("sieve --n 1 --out " + out.string());
  REQUIRE(r1.exit_code == 0);
  REQUIRE(r1.output.find("irreducible=0") != std::string::npos);

  REQUIRE(run_cli("sieve --n 5").exit_code != 0);
  REQUIRE(run_cli("sieve --n 2 --mode sideways").exit_code == 2);
}

TEST_CASE("certify subcommand on small n", "[cli]") {
  const fs::path out = scratch_dir() / "certify2";
  const RunResult r = run_cli("certify --relations --n 2 --out " + out.string());
  REQUIRE(r.exit_code == 1);  // hypothesis fails below n=4
  REQUIRE(r.output.find("witness-pair mode=exhaustive result=fail") != std::string::npos);
  REQUIRE(r.output.find("VERDICT\nhypothesis not established") != std::string::npos);

  // identical config, byte-identical certificate
  const std::string first = read_file(out / "certificate-b2.txt");
  REQUIRE(run_cli("certify --relations --n 2 --out " + out.string()).exit_code == 1);
  REQUIRE(read_file(out / "certificate-b2.txt") == first);

  REQUIRE(run_cli("certify --relations --lattice chain2 --n 4").exit_code == 2);
  REQUIRE(run_cli("certify --n 4").exit_code == 2);
}

TEST_CASE("lattice-check subcommand", "[cli]") {
  REQUIRE(run_cli("lattice-check --name chain3").exit_code == 0);
  REQUIRE(run_cli("lattice-check --name boolean2").output.find("atoms=2") !=
          std::string::npos);

  // M3: three incomparable atoms under a common top
  const fs::path m3 = scratch_dir() / "m3.lat";
  {
    std::ofstream f(m3);
    f << "5\n"
         "0 0 0 0 0\n"
         "0 1 0 0 1\n"
         "0 0 2 0 2\n"
         "0 0 0 3 3\n"
         "0 1 2 3 4\n"
         "0 1 2 3 4\n"
         "1 1 4 4 4\n"
         "2 4 2 4 4\n"
         "3 4 4 3 4\n"
         "4 4 4 4 4\n";
  }
  const RunResult r = run_cli("lattice-check --file " + m3.string());
  REQUIRE(r.exit_code == 1);
  REQUIRE(r.output.find("distributivity violated at (") != std::string::npos);

  REQUIRE(run_cli("lattice-check --name nosuch").exit_code == 2);
  REQUIRE(run_cli("lattice-check --file /nonexistent.lat").exit_code == 2);
}

TEST_CASE("localize subcommand", "[cli]") {
  const fs::path out = scratch_dir() / "localize";
  const RunResult r = run_cli("localize --lattice boolean2 --n 5 --Y 1,2,3,4 --pairs 300 --out " +
                              out.string());
  INFO(r.output);
  REQUIRE(r.exit_code == 0);
  REQUIRE(r.output.find("iso-project-lift mode=exhaustive result=pass") != std::string::npos);
  REQUIRE(r.output.find("iso-homomorphism mode=random(42,300) result=pass") !=
          std::string::npos);
  REQUIRE(fs::exists(out / "localizer-boolean2-n5.txt"));

  const RunResult bad = run_cli("localize --lattice chain1 --n 4");
  REQUIRE(bad.exit_code == 2);
  REQUIRE(bad.output.find("nontrivial lattice required") != std::string::npos);

  REQUIRE(run_cli("localize --lattice chain2 --n 4 --Y 1,2,3").exit_code == 2);
  REQUIRE(run_cli("localize --lattice chain3 --n 4 --atom 2").exit_code == 2);
}

TEST_CASE("output directory environment override", "[cli]") {
  const fs::path envdir = scratch_dir() / "env-out";
  ::setenv("RELMON_OUT", envdir.c_str(), 1);
  const RunResult r = run_cli("sieve --n 1");
  ::unsetenv("RELMON_OUT");
  REQUIRE(r.exit_code == 0);
  REQUIRE(fs::exists(envdir / "classification-n1.csv"));
}
