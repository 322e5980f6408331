// End-to-end checks of the slotjet binary: exit codes, machine-readable
// errors, and byte-identical reruns.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

struct RunResult {
  int exit_code;
  std::string output;  // stdout + stderr
};

RunResult run(const std::string& args) {
  const std::string tmp =
      (fs::temp_directory_path() / "slotjet_cli_out.txt").string();
  const std::string cmd =
      std::string(SLOTJET_CLI_PATH) + " " + args + " > " + tmp + " 2>&1";
  const int rc = std::system(cmd.c_str());
  std::ifstream in(tmp);
  std::stringstream ss;
  ss << in.rdbuf();
  return {WEXITSTATUS(rc), ss.str()};
}

fs::path write_config(const std::string& name, const std::string& body) {
  const fs::path dir = fs::temp_directory_path() / "slotjet_cli_cfg";
  fs::create_directories(dir);
  const fs::path p = dir / name;
  std::ofstream(p) << body;
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const char* kBase =
    "a = 1\n"
    "b = 0\n"
    "theta = 1.5707963267948966\n"
    "L = 2\n"
    "mu = 2\n";

}  // namespace

TEST_CASE("missing Q exits 1 with the key name") {
  const auto cfg = write_config("noq.cfg", std::string(kBase) + "dx = 0.125\n");
  const RunResult r = run("solve --config " + cfg.string());
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("MISSING_KEY:Q") != std::string::npos);
}

TEST_CASE("degenerate slot exits 1 with the invariant name") {
  const auto cfg = write_config("degen.cfg",
                                "a = 1\nb = 2\ntheta = 0.7853981633974483\n"
                                "L = 4\nmu = 2\nQ = 1\ndx = 0.05\n");
  const RunResult r = run("solve --config " + cfg.string());
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("SLOT_DEGENERATE") != std::string::npos);
}

TEST_CASE("unknown key exits 1") {
  const auto cfg = write_config("unk.cfg", std::string(kBase) + "speed = 3\n");
  const RunResult r = run("solve --config " + cfg.string());
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("UNKNOWN_KEY:speed") != std::string::npos);
}

TEST_CASE("trace with one flux exits 1") {
  const auto cfg = write_config(
      "one.cfg", std::string(kBase) + "dx = 0.125\nQ_list = 1\n");
  const RunResult r = run("trace --config " + cfg.string());
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("NEED_TWO_POINTS") != std::string::npos);
}

TEST_CASE("harmonic prints both fluxes") {
  const auto cfg = write_config("harm.cfg", kBase);
  const RunResult r = run("harmonic --config " + cfg.string());
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("Q_infinite 1") != std::string::npos);
  CHECK(r.output.find("Q_truncated 1.28077640543") != std::string::npos);
}

TEST_CASE("solve emits artifacts and reruns byte-identically") {
  const fs::path out1 = fs::temp_directory_path() / "slotjet_out1";
  const fs::path out2 = fs::temp_directory_path() / "slotjet_out2";
  fs::remove_all(out1);
  fs::remove_all(out2);
  const auto cfg = write_config(
      "solve.cfg",
      std::string(kBase) + "Q = 1.2807764064044151\ndx = 0.125\npad = 2\n");
  const RunResult r1 =
      run("solve --config " + cfg.string() + " --out " + out1.string());
  CHECK(r1.exit_code == 0);
  for (const char* name :
       {"report.csv", "curve.csv", "field.csv", "field.svg", "trace.csv"})
    CHECK(fs::exists(out1 / name));
  CHECK(r1.output.find("lambda ") != std::string::npos);

  const RunResult r2 =
      run("solve --config " + cfg.string() + " --out " + out2.string());
  CHECK(r2.exit_code == 0);
  for (const char* name : {"report.csv", "curve.csv", "field.csv"})
    CHECK(slurp(out1 / name) == slurp(out2 / name));
}

TEST_CASE("trace runs a short flux list") {
  const fs::path out = fs::temp_directory_path() / "slotjet_out_trace";
  fs::remove_all(out);
  const auto cfg = write_config(
      "trace.cfg", std::string(kBase) + "dx = 0.125\nQ_list = 0.9, 1.6\n");
  const RunResult r =
      run("trace --config " + cfg.string() + " --out " + out.string());
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("lambda_monotonic PASS") != std::string::npos);
  CHECK(fs::exists(out / "lambda_q.csv"));
}
