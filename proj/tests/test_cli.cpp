#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {
int run(const std::string& args) {
  const std::string cmd = std::string(TTROSE_BIN) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch() {
  auto dir = fs::temp_directory_path() / ("ttrose_cli_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir;
}

fs::path write(const fs::path& p, const std::string& text) {
  std::ofstream(p) << text;
  return p;
}
}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("certify exit codes and schema") {
    const auto dir = scratch();
    const auto out = dir / "cert.json";
    CHECK(run("certify --word 23322 --rank 3 --format json --out " + out.string()) == 0);
    const auto j = nlohmann::json::parse(slurp(out));
    CHECK(j["schema"] == 1);
    CHECK(j["verdicts"]["lone_axis"] == true);

    const auto golden = write(dir / "golden.map", "rank:2\na -> b\nb -> ba\n");
    const auto text = dir / "golden.txt";
    CHECK(run("certify " + golden.string() + " --format text --out " + text.string()) == 0);
    CHECK(slurp(text).find("fully irreducible: criteria passed except PNP-free; iNP found") != std::string::npos);

    const auto id = write(dir / "id.map", "rank:3\na -> a\nb -> b\nc -> c\n");
    const auto idout = dir / "id.txt";
    CHECK(run("certify " + id.string() + " --format text --out " + idout.string()) == 0);
    CHECK(slurp(idout).find("expanding       no") != std::string::npos);

    CHECK(run("certify --word 2222 --rank 3") == 1);
    CHECK(run("certify " + (dir / "missing.map").string()) == 1);
    CHECK(run("certify --word 23322 --rank 3 --budget 1") == 1);
    fs::remove_all(dir);
  }

  TEST_CASE("inconclusive searches exit with 2") {
    const auto dir = scratch();
    const auto golden = write(dir / "golden.map", "rank:2\na -> b\nb -> ba\n");
    CHECK(run("inp " + golden.string() + " --max-period 2") == 0);
    CHECK(run("inp " + golden.string() + " --max-period 2 --max-depth 1") == 2);
    const auto f = write(dir / "f.map", "rank:3\na -> b\nb -> c\nc -> abbccbbb\n");
    CHECK(run("certify " + f.string() + " --max-depth 1") == 2);
    fs::remove_all(dir);
  }

  TEST_CASE("census output is byte-identical across runs") {
    const auto dir = scratch();
    for (const std::string fmt : {"json", "csv"}) {
      const auto a = dir / ("a." + fmt), b = dir / ("b." + fmt);
      const std::string args = "census --rank 3 --len 5..7 --mode sample --count 30 --seed 11 --format " + fmt + " --out ";
      REQUIRE(run(args + a.string()) == 0);
      REQUIRE(run(args + b.string()) == 0);
      CHECK(slurp(a) == slurp(b));
      CHECK_FALSE(slurp(a).empty());
    }
    std::istringstream lines(slurp(dir / "a.json"));
    std::string line;
    while (std::getline(lines, line)) CHECK(nlohmann::json::parse(line)["schema"] == 1);
    fs::remove_all(dir);
  }

  TEST_CASE("other subcommands") {
    const auto dir = scratch();
    CHECK(run("spectrum --rank 3 --len 5..6 --out " + (dir / "s.json").string()) == 0);
    CHECK(run("upper --rank 2 --norm 4 --out " + (dir / "u.json").string()) == 0);
    CHECK(nlohmann::json::parse(slurp(dir / "u.json"))["entry_bound_ok"] == true);
    CHECK(run("entropy --synthetic 2,2.718281828459045,5,20 --out " + (dir / "e.json").string()) == 0);
    CHECK(nlohmann::json::parse(slurp(dir / "e.json"))["principal_log_b"].get<double>() == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(run("census --rank 3 --len 5..7 --out " + (dir / "c.json").string()) == 0);
    CHECK(run("entropy --axis loglen --in " + (dir / "c.json").string()) == 0);
    CHECK(run("folds --word 23322 --rank 3 --out " + (dir / "f.json").string()) == 0);
    const auto folds = nlohmann::json::parse(slurp(dir / "f.json"));
    CHECK(folds["replay_ok"] == true);
    CHECK(folds["schema"] == 1);
    CHECK(run("census --rank 3 --len 5 --mode bogus") == 1);
    CHECK(run("nonsense") != 0);
    fs::remove_all(dir);
  }
}
