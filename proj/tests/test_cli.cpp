// Drives the installed CLI binary end to end. The binary path comes from the
// BIS_CLI_PATH compile definition (or environment override).
#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>

namespace {

namespace fs = std::filesystem;

std::string cli_path() {
  if (const char* env = std::getenv("BIS_CLI_PATH")) return env;
  return BIS_CLI_PATH;
}

struct RunResult {
  int exit_code;
  std::string out;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunResult run_cli(const std::string& args) {
  static int counter = 0;
  const fs::path out =
      fs::temp_directory_path() / ("bis_cli_out_" + std::to_string(counter++));
  const std::string cmd =
      cli_path() + " " + args + " > " + out.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  fs::remove(out);
  return r;
}

fs::path write_temp(const std::string& name, const std::string& content) {
  const fs::path p = fs::temp_directory_path() / name;
  std::ofstream(p) << content;
  return p;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

}  // namespace

TEST_CASE("binary-region emits the default 513-row sweep") {
  const RunResult r =
      run_cli("binary-region --pe 0.03 --pd 0.1 --gamma 0.2 --ri 0 "
              "--rc-rule full");
  CHECK(r.exit_code == 0);
  const auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 515);  // comment + header + 513 rows
  CHECK(lines[0] == "# unit: bits");
  CHECK(lines[1] == "gamma,izu,rj_min,rg_max,feasible");
  CHECK(lines[2].starts_with("0,0.459249522037,1,0.2,1"));
}

TEST_CASE("binary-region honors the grid flag") {
  const RunResult r =
      run_cli("binary-region --pe 0 --pd 0 --gamma 0 --grid 5");
  CHECK(r.exit_code == 0);
  const auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 7);
  CHECK(lines[2].starts_with("0,1,"));
  CHECK(lines[3].starts_with("0.125,"));
  CHECK(lines[4].starts_with("0.25,"));
  CHECK(lines[5].starts_with("0.375,"));
  CHECK(lines[6].starts_with("0.5,0,"));
}

TEST_CASE("region commands reject invalid parameters") {
  CHECK(run_cli("binary-region --pe 0.7 --pd 0.1").exit_code == 2);
  CHECK(run_cli("binary-region --pd 0.1").exit_code == 2);  // missing --pe
  CHECK(run_cli("gaussian-region --rho1 1.5 --rho2 0.2").exit_code == 2);
  CHECK(run_cli("binary-region --pe 0.1 --pd 0.1 --rc-rule bogus").exit_code ==
        2);
}

TEST_CASE("gaussian-region endpoint row") {
  const RunResult r =
      run_cli("gaussian-region --rho1 0.9 --rho2 0.8 --gamma 0 --grid 16");
  CHECK(r.exit_code == 0);
  const auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 18);
  CHECK(lines[0] == "# unit: nats");
  // alpha = 1: all information quantities and both boundary values are 0.
  CHECK(lines.back() == "1,0,0,0,0,0,1");
  // Gamma = 0 under the full rule: no generated-key rate anywhere.
  for (std::size_t i = 2; i < lines.size(); ++i) {
    const auto cols = lines[i];
    const auto last_two = cols.rfind(",0,1");
    CHECK(last_two != std::string::npos);
  }
}

TEST_CASE("membership finds the trivial witness and is deterministic") {
  const auto model = write_temp("bis_model.json",
                                R"({"kind":"binary","p_e":0.03,"p_d":0.1})");
  const auto rates = write_temp(
      "bis_rates.json",
      R"({"r_i":0,"r_c":0,"r_g":0,"r_j":3,"r_l":3,"gamma":0,"unit":"bits"})");
  const std::string args = "membership --model " + model.string() +
                           " --rates " + rates.string() +
                           " --restarts 4 --steps 20 --seed 1";
  const RunResult a = run_cli(args);
  const RunResult b = run_cli(args);
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.find("\"found\": true") != std::string::npos);
  CHECK(a.out.find("\"witness\"") != std::string::npos);
}

TEST_CASE("membership reports not-found for impossible rates") {
  const auto model = write_temp("bis_model2.json",
                                R"({"kind":"binary","p_e":0.03,"p_d":0.1})");
  // R_I above log2 |Z| = 1 bit can never satisfy R_I <= I(Z;U).
  const auto rates = write_temp(
      "bis_rates2.json",
      R"({"r_i":1.5,"r_c":0,"r_g":0,"r_j":9,"r_l":9,"gamma":0,"unit":"bits"})");
  const RunResult r = run_cli("membership --model " + model.string() +
                              " --rates " + rates.string() +
                              " --restarts 4 --steps 40 --seed 1");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("\"found\": false") != std::string::npos);

  const RunResult bad = run_cli("membership --model " + model.string() +
                                " --rates /nonexistent.json");
  CHECK(bad.exit_code == 2);
}

TEST_CASE("membership rejects gaussian models") {
  const auto model = write_temp("bis_model3.json",
                                R"({"kind":"gaussian","rho1":0.9,"rho2":0.8})");
  const auto rates = write_temp(
      "bis_rates3.json",
      R"({"r_i":0,"r_c":0,"r_g":0,"r_j":1,"r_l":1,"gamma":0,"unit":"bits"})");
  const RunResult r = run_cli("membership --model " + model.string() +
                              " --rates " + rates.string());
  CHECK(r.exit_code == 2);
}

TEST_CASE("simulate runs, repeats identically, and writes transcripts") {
  const auto model = write_temp("bis_model4.json",
                                R"({"kind":"binary","p_e":0.03,"p_d":0.1})");
  const auto test = write_temp("bis_test.json",
                               R"({"table":[[0.9,0.1],[0.1,0.9]]})");
  const auto cfg = write_temp(
      "bis_cfg.json",
      R"({"n":4,"m_i":2,"m_gamma":1,"m_c_rest":1,"m_g_rest":1,"m_m":8,)"
      R"("epsilon":1.5,"seed":7,"trials":200})");
  const fs::path transcript = fs::temp_directory_path() / "bis_transcript.csv";

  const std::string args = "simulate --config " + cfg.string() + " --model " +
                           model.string() + " --test " + test.string() +
                           " --transcript " + transcript.string();
  const RunResult a = run_cli(args);
  const RunResult b = run_cli(args);
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.find("\"error_rate\"") != std::string::npos);
  CHECK(a.out.find("\"exact\": false") != std::string::npos);

  const std::string tr = slurp(transcript);
  const auto lines = lines_of(tr);
  REQUIRE(lines.size() == 201);
  CHECK(lines[0] == "trial,event,w,w_hat,correct");
  fs::remove(transcript);
}

TEST_CASE("simulate exact mode and its guard") {
  const auto model = write_temp("bis_model5.json",
                                R"({"kind":"binary","p_e":0.03,"p_d":0.1})");
  const auto test = write_temp("bis_test5.json",
                               R"({"table":[[0.9,0.1],[0.1,0.9]]})");
  const auto tiny = write_temp(
      "bis_cfg_tiny.json",
      R"({"n":3,"m_i":1,"m_gamma":2,"m_c_rest":1,"m_g_rest":2,"m_m":2,)"
      R"("epsilon":1.5,"seed":7,"trials":50})");
  const RunResult r = run_cli("simulate --exact --config " + tiny.string() +
                              " --model " + model.string() + " --test " +
                              test.string());
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("\"exact\": true") != std::string::npos);
  CHECK(r.out.find("\"exact_mode\": true") != std::string::npos);

  const auto huge = write_temp(
      "bis_cfg_huge.json",
      R"({"n":30,"m_i":1,"m_gamma":2,"m_c_rest":1,"m_g_rest":2,"m_m":2,)"
      R"("epsilon":1.5,"seed":7,"trials":1})");
  const RunResult g = run_cli("simulate --exact --config " + huge.string() +
                              " --model " + model.string() + " --test " +
                              test.string());
  CHECK(g.exit_code == 3);
  CHECK(g.out.find("2^24") != std::string::npos);

  const auto zero_trials = write_temp(
      "bis_cfg_zero.json",
      R"({"n":3,"m_i":1,"m_gamma":2,"m_c_rest":1,"m_g_rest":2,"m_m":2,)"
      R"("epsilon":1.5,"seed":7,"trials":0})");
  const RunResult z = run_cli("simulate --config " + zero_trials.string() +
                              " --model " + model.string() + " --test " +
                              test.string());
  CHECK(z.exit_code == 2);
}

TEST_CASE("output files match stdout") {
  const fs::path out = fs::temp_directory_path() / "bis_sweep.csv";
  const RunResult to_file = run_cli(
      "binary-region --pe 0.03 --pd 0.1 --grid 9 --out " + out.string());
  const RunResult to_stdout =
      run_cli("binary-region --pe 0.03 --pd 0.1 --grid 9");
  CHECK(to_file.exit_code == 0);
  CHECK(slurp(out) == to_stdout.out);
  fs::remove(out);
}
