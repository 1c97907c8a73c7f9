#include <doctest.h>

#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

struct RunResult {
  int exit_code = -1;
  std::string output;
};

fs::path work_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "kcbsim_cli_tests";
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

RunResult run_cli(const std::string& args) {
  const fs::path out_file = work_dir() / "stdout.txt";
  const std::string command = std::string(KCBSIM_CLI_PATH) + " " + args +
                              " > " + out_file.string() + " 2>&1";
  const int status = std::system(command.c_str());
  RunResult result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(out_file);
  std::stringstream buffer;
  buffer << in.rdbuf();
  result.output = buffer.str();
  return result;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

TEST_CASE("ideal prints the violation summary") {
  const auto result = run_cli("ideal");
  CHECK(result.exit_code == 0);
  CHECK(result.output.find("2.23607") != std::string::npos);
  CHECK(result.output.find("-3.94427") != std::string::npos);
  CHECK(result.output.find("VIOLATION") != std::string::npos);
}

TEST_CASE("fock reports the verdict") {
  const auto result = run_cli("fock --n 2");
  CHECK(result.exit_code == 0);
  CHECK(result.output.find("1.47214") != std::string::npos);
  CHECK(result.output.find("nonclassical") != std::string::npos);
}

TEST_CASE("coherent accepts either amplitude convention") {
  const auto by_sq = run_cli("coherent --alpha-sq 1.0");
  CHECK(by_sq.exit_code == 0);
  const auto by_alpha = run_cli("coherent --alpha 1.0");
  CHECK(by_alpha.exit_code == 0);
  CHECK(by_sq.output == by_alpha.output);

  CHECK(run_cli("coherent --alpha-sq 1 --alpha 1").exit_code == 2);
  CHECK(run_cli("coherent").exit_code == 2);
  CHECK(run_cli("coherent --alpha-sq=-2").exit_code == 2);
}

TEST_CASE("mixture evaluates populations") {
  const auto result = run_cli("mixture --populations 0.2,0.8");
  CHECK(result.exit_code == 0);
  CHECK(result.output.find("1.78885") != std::string::npos);

  CHECK(run_cli("mixture --populations 0.5,0.2").exit_code == 2);
}

TEST_CASE("sample requires a seed and is byte-reproducible") {
  CHECK(run_cli("sample --shots 100 --reps 3").exit_code == 2);

  const fs::path a = work_dir() / "a.csv";
  const fs::path b = work_dir() / "b.csv";
  const auto first = run_cli("sample --shots 200 --reps 5 --seed 7 --out " +
                             a.string());
  const auto second = run_cli("sample --shots 200 --reps 5 --seed 7 --out " +
                              b.string());
  CHECK(first.exit_code == 0);
  CHECK(second.exit_code == 0);
  const std::string contents = slurp(a);
  CHECK(contents == slurp(b));
  CHECK(contents.rfind("context,", 0) == 0);  // header row

  const fs::path c = work_dir() / "c.csv";
  run_cli("sample --shots 200 --reps 5 --seed 8 --out " + c.string());
  CHECK(contents != slurp(c));
}

TEST_CASE("sample embeds the configuration in JSON artifacts") {
  const fs::path out = work_dir() / "sample.json";
  const auto result = run_cli(
      "sample --shots 150 --reps 4 --seed 11 --format json --out " +
      out.string());
  CHECK(result.exit_code == 0);
  const std::string content = slurp(out);
  CHECK(content.find("\"seed\": 11") != std::string::npos);
  CHECK(content.find("\"shots\": 150") != std::string::npos);
  CHECK(content.find("\"s_hat\"") != std::string::npos);
}

TEST_CASE("loss-sweep writes the sweep table") {
  const fs::path out = work_dir() / "sweep.csv";
  const auto result = run_cli(
      "loss-sweep --grid 0,0.5,1 --shots 300 --reps 4 --seed 3 --out " +
      out.string());
  CHECK(result.exit_code == 0);
  const std::string content = slurp(out);
  CHECK(content.rfind("loss_rate,s_ideal,s_sampled,sigma\n", 0) == 0);
  CHECK(std::count(content.begin(), content.end(), '\n') == 4);

  CHECK(run_cli("loss-sweep --grid 0,0.5 --shots 10 --reps 2").exit_code == 2);
}

TEST_CASE("oracle and bench run standalone") {
  const auto oracle = run_cli("oracle");
  CHECK(oracle.exit_code == 0);
  CHECK(oracle.output.find("[-3, 5]") != std::string::npos);

  const auto bench = run_cli("bench --context 1");
  CHECK(bench.exit_code == 0);
  CHECK(bench.output.find("[verified]") != std::string::npos);
}

TEST_CASE("bad usage exits with the validation code") {
  CHECK(run_cli("no-such-command").exit_code == 2);
  CHECK(run_cli("fock").exit_code == 2);           // missing --n
  CHECK(run_cli("fock --n -1").exit_code == 2);    // domain error
  CHECK(run_cli("bench --context 9").exit_code == 2);
  CHECK(run_cli("--help").exit_code == 0);
}

TEST_CASE("unwritable output path exits with the runtime code") {
  const auto result =
      run_cli("ideal --out /nonexistent-dir/deep/out.csv");
  CHECK(result.exit_code == 3);
}
