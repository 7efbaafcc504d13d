#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#ifndef PERMREG_CLI_BIN
#error "PERMREG_CLI_BIN must point at the CLI binary"
#endif

namespace {

int run(const std::string& args, const std::string& stdout_path = "/dev/null") {
  const std::string cmd = std::string(PERMREG_CLI_BIN) + " " + args + " > " + stdout_path + " 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  std::stringstream ss;
  ss << file.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("estimate consumes a generated instance") {
  CHECK(run("make-instance --n 20 --d 1 --sigma 1 --x-norm 50 --seed 5 --out cli_inst.json") == 0);
  CHECK(run("estimate --instance cli_inst.json --method sort1d", "cli_est.json") == 0);
  const std::string text = slurp("cli_est.json");
  CHECK(text.find("\"pi_hat\"") != std::string::npos);
  CHECK(text.find("\"objective\"") != std::string::npos);
  CHECK(text.find("\"hamming_to_truth\"") != std::string::npos);

  SUBCASE("all methods run on the same instance") {
    CHECK(run("estimate --instance cli_inst.json --method oracle") == 0);
    CHECK(run("estimate --instance cli_inst.json --method altmin --restarts 3") == 0);
  }
  std::remove("cli_inst.json");
  std::remove("cli_est.json");
}

TEST_CASE("simulate writes a CSV and respects exit codes") {
  CHECK(run("simulate --n 20 --d 1 --gamma-grid 1,5 --trials 10 --estimator sort1d --seed 3 "
            "--out cli_sim.csv") == 0);
  const std::string csv = slurp("cli_sim.csv");
  CHECK(csv.rfind("n,d,sigma,snr,gamma,estimator,trials,successes,freq,stderr\n", 0) == 0);
  std::remove("cli_sim.csv");

  SUBCASE("estimator/dimension mismatch is a config error before any trial") {
    CHECK(run("simulate --n 20 --d 2 --gamma-grid 1 --trials 5 --estimator sort1d") == 2);
  }
  SUBCASE("unknown flags are config errors") {
    CHECK(run("simulate --frobnicate 3") == 2);
  }
  SUBCASE("unknown estimator is a config error") {
    CHECK(run("simulate --n 20 --d 1 --gamma-grid 1 --trials 5 --estimator magic") == 2);
  }
}

TEST_CASE("config file with flag overrides") {
  {
    std::ofstream cfg("cli_cfg.json");
    cfg << "{\"n_grid\":[20],\"d\":1,\"gamma_grid\":[1.0,5.0],\"trials\":10,"
        << "\"estimator\":\"sort1d\",\"master_seed\":3,\"output_path\":\"cli_a.csv\"}";
  }
  CHECK(run("simulate --config cli_cfg.json") == 0);
  CHECK(run("simulate --config cli_cfg.json --out cli_b.csv") == 0);
  CHECK(slurp("cli_a.csv") == slurp("cli_b.csv"));
  std::remove("cli_cfg.json");
  std::remove("cli_a.csv");
  std::remove("cli_b.csv");
}

TEST_CASE("bounds subcommand emits a report and verdict") {
  CHECK(run("bounds --result thm1 --n 100 --d 1 --snr 20000 --epsilon 1", "cli_bounds.txt") == 0);
  const std::string text = slurp("cli_bounds.txt");
  CHECK(text.find("\"satisfied\": true") != std::string::npos);
  CHECK(text.find("SATISFIED") != std::string::npos);
  CHECK(run("bounds --result prop1 --n 8 --snr 0.1") == 2);  // out of the stated range
  CHECK(run("bounds --result nope --n 10 --snr 1") == 2);
  std::remove("cli_bounds.txt");
}

TEST_CASE("reduce-partition verdicts") {
  CHECK(run("reduce-partition --b 1,1,2", "cli_red.txt") == 0);
  CHECK(slurp("cli_red.txt").find("feasible") != std::string::npos);
  CHECK(run("reduce-partition --b 1,1,3", "cli_red.txt") == 0);
  CHECK(slurp("cli_red.txt").find("infeasible") != std::string::npos);
  // d = 4 exceeds the default enumeration cap.
  CHECK(run("reduce-partition --b 1,1,1,1") == 2);
  CHECK(run("reduce-partition --b 1,0,2") == 2);
  std::remove("cli_red.txt");
}

TEST_CASE("distortion subcommand juxtaposes the converse verdict") {
  CHECK(run("distortion --n 30 --d 1 --gamma-grid 0.3 --trials 20 --estimator oracle --seed 7 "
            "--D 10",
            "cli_dist.txt") == 0);
  const std::string text = slurp("cli_dist.txt");
  CHECK(text.find("error_freq=") != std::string::npos);
  CHECK(text.find("converse_satisfied=") != std::string::npos);
  std::remove("cli_dist.txt");
}

TEST_CASE("verify-lemmas exits 3 while the fixed-point check disagrees") {
  // The Hamming-ball fixed-point frequency check fails by construction of the
  // sampled process (see README); the command must report it and exit 3.
  const int code = run("verify-lemmas --samples 20000 --seed 5", "cli_verify.txt");
  CHECK(code == 3);
  const std::string text = slurp("cli_verify.txt");
  CHECK(text.find("[FAIL] hprob") != std::string::npos);
  CHECK(text.find("[PASS] chi2_tail(ell=1)") != std::string::npos);
  CHECK(text.find("[PASS] partition_lemma") != std::string::npos);
  CHECK(text.find("[PASS] lemma7_eigs") != std::string::npos);
  std::remove("cli_verify.txt");
}
