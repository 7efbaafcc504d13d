// Command-line harness: instance generation, estimation, closed-form bound
// evaluation, the PARTITION reduction, Monte Carlo sweeps, and the
// lemma-verification suite.
//
// Exit codes: 0 success, 2 configuration error, 3 lemma-verification failure,
// 1 other runtime failure.

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "permreg/bounds.hpp"
#include "permreg/errors.hpp"
#include "permreg/estimators.hpp"
#include "permreg/experiment.hpp"
#include "permreg/hardness.hpp"
#include "permreg/instance.hpp"
#include "permreg/serialization.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitConfig = 2;
constexpr int kExitVerification = 3;

struct SimulateArgs {
  std::vector<int> n_grid;
  std::optional<int> d;
  std::vector<double> gamma_grid;
  std::optional<int> trials;
  std::optional<double> sigma;
  std::optional<std::string> estimator;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<int> workers;
  std::optional<int> side_info_hbar;
  std::optional<int> distortion;
  std::string config_path;
};

// Config file first, explicit flags override.
permreg::ExperimentConfig resolve_config(const SimulateArgs& args) {
  permreg::ExperimentConfig cfg;
  if (!args.config_path.empty()) cfg = permreg::config_from_json_file(args.config_path, cfg);
  if (!args.n_grid.empty()) cfg.n_grid = args.n_grid;
  if (args.d) cfg.d = *args.d;
  if (!args.gamma_grid.empty()) cfg.gamma_grid = args.gamma_grid;
  if (args.trials) cfg.trials = *args.trials;
  if (args.sigma) cfg.sigma = *args.sigma;
  if (args.estimator) cfg.estimator = permreg::estimator_from_string(*args.estimator);
  if (args.seed) cfg.master_seed = *args.seed;
  if (args.out) cfg.output_path = *args.out;
  if (args.workers) cfg.workers = *args.workers;
  if (args.side_info_hbar) cfg.side_info_hbar = *args.side_info_hbar;
  if (args.distortion) cfg.distortion_D = *args.distortion;
  return cfg;
}

void add_simulate_flags(CLI::App* cmd, SimulateArgs& args) {
  cmd->add_option("--n", args.n_grid, "Sample sizes (grid)")->delimiter(',');
  cmd->add_option("--d", args.d, "Signal dimension");
  cmd->add_option("--gamma-grid", args.gamma_grid, "Target Gamma values")->delimiter(',');
  cmd->add_option("--trials", args.trials, "Trials per grid point");
  cmd->add_option("--sigma", args.sigma, "Noise standard deviation (0 = noiseless)");
  cmd->add_option("--estimator", args.estimator, "sort1d|brute|oracle|altmin");
  cmd->add_option("--seed", args.seed, "Master seed");
  cmd->add_option("--out", args.out, "Output CSV path");
  cmd->add_option("--workers", args.workers, "Worker threads");
  cmd->add_option("--side-info-hbar", args.side_info_hbar,
                  "Draw the truth from the radius-hbar Hamming-ball sampler");
  cmd->add_option("--config", args.config_path, "JSON config file (flags override)");
}

int run_simulate(const SimulateArgs& args, bool distortion_mode) {
  permreg::ExperimentConfig cfg = resolve_config(args);
  const permreg::TrialBatch batch = distortion_mode ? permreg::run_distortion_experiment(cfg)
                                                    : permreg::run_phase_transition(cfg);
  if (!cfg.output_path.empty()) {
    permreg::emit_csv(batch, cfg.output_path);
    std::cout << "wrote " << cfg.output_path << "\n";
  } else {
    std::cout << permreg::render_csv(batch);
  }
  if (distortion_mode) {
    for (const auto& agg : batch.aggregates) {
      std::cout << "n=" << agg.n << " gamma=" << agg.gamma << " snr=" << agg.snr
                << " D=" << *cfg.distortion_D << ": error_freq=" << agg.frequency
                << " converse_satisfied="
                << (agg.converse_satisfied.value_or(false) ? "true" : "false") << "\n";
    }
  }
  return kExitOk;
}

int run_estimate(const std::string& instance_path, const std::string& method,
                 std::uint64_t seed, int restarts, int max_iters) {
  const permreg::ProblemInstance inst = permreg::instance_from_json_file(instance_path);
  const permreg::EstimatorKind kind = permreg::estimator_from_string(method);

  permreg::EstimationResult result;
  switch (kind) {
    case permreg::EstimatorKind::Sort1D:
      if (inst.d != 1) throw std::invalid_argument("sort1d requires a d = 1 instance");
      result = permreg::sort_mle_d1(inst.y, inst.A.col(0));
      break;
    case permreg::EstimatorKind::Brute:
      result = permreg::brute_force_mle(inst.y, inst.A);
      break;
    case permreg::EstimatorKind::Oracle:
      result = permreg::oracle_x_estimator(inst.y, inst.A, inst.x_star);
      break;
    case permreg::EstimatorKind::AltMin: {
      auto rng = permreg::make_engine(permreg::substream_seed(seed, permreg::StreamTag::Restart));
      permreg::AltMinOptions opts;
      opts.restarts = restarts;
      opts.max_iters = max_iters;
      result = permreg::alternating_min(inst.y, inst.A, rng, opts);
      break;
    }
  }
  result.hamming_to_truth = permreg::hamming_distance(result.pi_hat, inst.pi_star);
  std::cout << permreg::estimation_result_to_json(result, method) << "\n";
  return kExitOk;
}

int run_bounds(const std::string& result, int n, int d, double snr, double epsilon, double delta,
               int distortion, double c1) {
  permreg::BoundReport report;
  std::ostringstream verdict;
  if (result == "thm1") {
    report = permreg::sufficient_condition_exact(n, d, snr, epsilon, c1);
    verdict << "sufficient condition " << (report.satisfied ? "SATISFIED" : "not satisfied")
            << ": needs snr >= " << std::exp(report.rhs) << " (have " << snr << ")";
  } else if (result == "thm2") {
    report = permreg::strong_converse(n, snr, delta);
    verdict << "strong converse " << (report.satisfied ? "SATISFIED" : "not satisfied")
            << ": needs snr <= " << std::expm1(report.rhs - 2.0) << " (have " << snr << ")";
  } else if (result == "prop1") {
    report = permreg::side_information_converse(n, snr);
    verdict << "side-information converse " << (report.satisfied ? "SATISFIED" : "not satisfied")
            << ": needs snr <= " << std::expm1(report.rhs) << " (have " << snr << ")";
  } else if (result == "thm3") {
    report = permreg::approximate_recovery_converse(n, snr, distortion);
    verdict << "approximate-recovery converse "
            << (report.satisfied ? "SATISFIED" : "not satisfied") << ": needs snr <= "
            << std::expm1(report.rhs) << " (have " << snr << ")";
  } else {
    throw std::invalid_argument("unknown --result '" + result + "' (expected thm1|thm2|prop1|thm3)");
  }
  std::cout << permreg::bound_report_to_json(report) << "\n" << verdict.str() << "\n";
  return kExitOk;
}

int run_reduce_partition(const std::vector<std::int64_t>& b, int max_d) {
  permreg::PartitionInstance inst{b};
  const permreg::ReductionOutput out = permreg::reduce_partition(inst);
  const permreg::PartitionDecision decision = permreg::partition_brute_force(inst);
  const permreg::FeasibilityResult feas = permreg::feasibility_check(out, max_d);
  std::cout << permreg::reduction_to_json(out, feas, decision) << "\n";
  std::cout << (feas.feasible ? "feasible: some permutation solves y_pi = A x"
                              : "infeasible: no permutation solves y_pi = A x")
            << "\n";
  return kExitOk;
}

int run_verify_lemmas(std::uint64_t seed, std::size_t samples) {
  auto rng = permreg::make_engine(seed);
  std::vector<permreg::VerifierReport> reports;

  for (int ell : {1, 2, 5, 10}) {
    std::vector<double> grid;
    for (int i = 1; i <= 20; ++i) grid.push_back(double(ell) * double(i) / 20.0);
    reports.push_back(permreg::verify_chi2_bound_mc(ell, grid, samples, rng));
  }
  reports.push_back(
      permreg::verify_projection_bound_mc(10, 2, {1.05, 1.25, 1.5, 2.0, 3.0, 4.5}, samples, rng));
  reports.push_back(
      permreg::verify_projection_bound_mc(20, 5, {1.05, 1.25, 1.5, 2.0, 3.0}, samples, rng));
  reports.push_back(permreg::verify_hamming_ball_fixed_point(10, 2, samples, rng));
  reports.push_back(permreg::verify_hamming_ball_fixed_point(10, 5, samples, rng));
  reports.push_back(permreg::verify_independent_partition(1000, 3, 50, rng));
  reports.push_back(permreg::verify_covariance_eigs(12));

  bool all_passed = true;
  for (const auto& rep : reports) {
    std::cout << (rep.passed ? "[PASS] " : "[FAIL] ") << rep.name << " (" << rep.checks
              << " checks, " << rep.violations << " violations)";
    if (!rep.passed && !rep.detail.empty()) std::cout << " -- " << rep.detail;
    std::cout << "\n";
    all_passed = all_passed && rep.passed;
  }
  return all_passed ? kExitOk : kExitVerification;
}

int run_make_instance(int n, int d, double sigma, double x_norm, std::uint64_t seed,
                      const std::string& out_path) {
  Eigen::VectorXd x_star(d);
  if (d == 1) {
    x_star(0) = x_norm;
  } else {
    auto rng = permreg::make_engine(permreg::substream_seed(seed, permreg::StreamTag::Direction));
    std::normal_distribution<double> unit_normal(0.0, 1.0);
    do {
      for (int j = 0; j < d; ++j) x_star(j) = unit_normal(rng);
    } while (x_star.squaredNorm() == 0.0);
    x_star *= x_norm / x_star.norm();
  }
  const permreg::ProblemInstance inst =
      permreg::generate_instance(n, d, x_star, sigma, permreg::TruthSpec::random(), seed);
  if (out_path.empty()) {
    std::cout << permreg::instance_to_json(inst) << "\n";
  } else {
    permreg::instance_to_json_file(inst, out_path);
    std::cout << "wrote " << out_path << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"permutation recovery in noisy linear regression: estimators, bounds, experiments"};
  app.require_subcommand(1);

  SimulateArgs sim_args;
  CLI::App* simulate = app.add_subcommand("simulate", "Exact-recovery phase-transition sweep");
  add_simulate_flags(simulate, sim_args);

  SimulateArgs dist_args;
  CLI::App* distortion = app.add_subcommand("distortion", "Approximate-recovery error sweep");
  add_simulate_flags(distortion, dist_args);
  distortion->add_option("--D", dist_args.distortion, "Hamming distortion threshold");

  std::string est_instance, est_method = "sort1d";
  std::uint64_t est_seed = 1;
  int est_restarts = 10, est_max_iters = 100;
  CLI::App* estimate = app.add_subcommand("estimate", "Run one estimator on an instance JSON");
  estimate->add_option("--instance", est_instance, "Instance JSON path")->required();
  estimate->add_option("--method", est_method, "sort1d|brute|oracle|altmin");
  estimate->add_option("--seed", est_seed, "Seed for altmin restarts");
  estimate->add_option("--restarts", est_restarts, "altmin restarts");
  estimate->add_option("--max-iters", est_max_iters, "altmin iteration cap");

  std::string bounds_result;
  int bounds_n = 100, bounds_d = 1, bounds_D = 3;
  double bounds_snr = 1.0, bounds_eps = 1.0, bounds_delta = 1.0, bounds_c1 = 1.0;
  CLI::App* bounds = app.add_subcommand("bounds", "Evaluate a closed-form recovery condition");
  bounds->add_option("--result", bounds_result, "thm1|thm2|prop1|thm3")->required();
  bounds->add_option("--n", bounds_n, "Sample size");
  bounds->add_option("--d", bounds_d, "Signal dimension (thm1)");
  bounds->add_option("--snr", bounds_snr, "Signal-to-noise ratio");
  bounds->add_option("--epsilon", bounds_eps, "Slack exponent (thm1)");
  bounds->add_option("--delta", bounds_delta, "Converse margin in (0,2) (thm2)");
  bounds->add_option("--D", bounds_D, "Hamming distortion (thm3)");
  bounds->add_option("--c1", bounds_c1, "Absolute constant in the sufficient condition");

  std::vector<std::int64_t> partition_b;
  int partition_max_d = 3;
  CLI::App* reduce = app.add_subcommand("reduce-partition",
                                        "Build the (y, A) system from PARTITION integers");
  reduce->add_option("--b", partition_b, "Integers, e.g. --b 1,1,2")->required()->delimiter(',');
  reduce->add_option("--max-d", partition_max_d, "Permutation-enumeration cap on d");

  std::uint64_t verify_seed = 20240901;
  std::size_t verify_samples = 100000;
  CLI::App* verify = app.add_subcommand("verify-lemmas",
                                        "Monte Carlo and eigensolve checks of the closed forms");
  verify->add_option("--seed", verify_seed, "Seed");
  verify->add_option("--samples", verify_samples, "Samples per Monte Carlo check");

  int mk_n = 100, mk_d = 1;
  double mk_sigma = 1.0, mk_xnorm = 10.0;
  std::uint64_t mk_seed = 1;
  std::string mk_out;
  CLI::App* make_instance = app.add_subcommand("make-instance", "Generate an instance JSON");
  make_instance->add_option("--n", mk_n, "Sample size");
  make_instance->add_option("--d", mk_d, "Signal dimension");
  make_instance->add_option("--sigma", mk_sigma, "Noise standard deviation");
  make_instance->add_option("--x-norm", mk_xnorm, "||x*||");
  make_instance->add_option("--seed", mk_seed, "Seed");
  make_instance->add_option("--out", mk_out, "Output path (stdout if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (simulate->parsed()) return run_simulate(sim_args, false);
    if (distortion->parsed()) return run_simulate(dist_args, true);
    if (estimate->parsed())
      return run_estimate(est_instance, est_method, est_seed, est_restarts, est_max_iters);
    if (bounds->parsed())
      return run_bounds(bounds_result, bounds_n, bounds_d, bounds_snr, bounds_eps, bounds_delta,
                        bounds_D, bounds_c1);
    if (reduce->parsed()) return run_reduce_partition(partition_b, partition_max_d);
    if (verify->parsed()) return run_verify_lemmas(verify_seed, verify_samples);
    if (make_instance->parsed())
      return run_make_instance(mk_n, mk_d, mk_sigma, mk_xnorm, mk_seed, mk_out);
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::domain_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const permreg::EnumerationLimitError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitOk;
}
