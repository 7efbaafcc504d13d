#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "permreg/estimators.hpp"
#include "permreg/instance.hpp"

namespace permreg {

enum class EstimatorKind { Sort1D, Brute, Oracle, AltMin };

/// CLI token for an estimator ("sort1d", "brute", "oracle", "altmin").
std::string to_string(EstimatorKind kind);
EstimatorKind estimator_from_string(const std::string& token);

/// A phase-transition or distortion sweep: the grid is the cross product of
/// n_grid and gamma_grid, with `trials` seeded trials per point. Per-trial
/// seeds are a counter-based hash of (master_seed, n index, gamma index,
/// trial index), so results are independent of worker count and scheduling.
struct ExperimentConfig {
  std::vector<int> n_grid;
  int d = 1;
  std::vector<double> gamma_grid;
  int trials = 100;
  double sigma = 1.0;
  EstimatorKind estimator = EstimatorKind::Sort1D;
  std::optional<int> distortion_D;
  std::optional<int> side_info_hbar;  // draw the truth from the Hamming-ball sampler
  std::uint64_t master_seed = 1;
  std::string output_path;
  int workers = 1;
  int altmin_restarts = 10;
  int altmin_max_iters = 100;
};

/// Throws std::invalid_argument when the configuration cannot run (empty
/// grids, estimator/dimension mismatch, enumeration caps, bad ranges).
void validate_config(const ExperimentConfig& config);

struct TrialRecord {
  std::uint64_t seed = 0;
  bool recovered = false;  // exact: hamming_error == 0
  std::size_t hamming_error = 0;
  double objective = 0.0;
};

struct GridPointAggregate {
  int n = 0;
  double gamma = 0.0;  // +inf when sigma == 0
  double snr = 0.0;    // +inf when sigma == 0
  std::size_t trials = 0;
  std::size_t successes = 0;  // exact recoveries, or distortion-error events in distortion mode
  double frequency = 0.0;
  double std_error = 0.0;
  std::optional<bool> converse_satisfied;  // distortion mode only
};

struct TrialBatch {
  ExperimentConfig config;
  // records[point][trial], points ordered n-major then gamma.
  std::vector<std::vector<TrialRecord>> records;
  std::vector<GridPointAggregate> aggregates;
};

/// Recomputes a point's aggregate from its records; used to cross-check
/// stored aggregates. `count_distortion_at` switches the success event from
/// exact recovery to {hamming_error >= D}.
GridPointAggregate aggregate_records(const std::vector<TrialRecord>& records, int n, double gamma,
                                     double snr, std::optional<int> count_distortion_at);

/// Exact-recovery sweep over the configured grid.
TrialBatch run_phase_transition(const ExperimentConfig& config);

/// Distortion sweep: aggregates the frequency of {d_H(pi_hat, pi*) >= D} and
/// attaches the approximate-recovery converse verdict at each grid point.
TrialBatch run_distortion_experiment(const ExperimentConfig& config);

/// Writes `n,d,sigma,snr,gamma,estimator,trials,successes,freq,stderr` plus
/// one row per grid point; floating values at 17 significant digits;
/// byte-deterministic for a given batch. Throws std::runtime_error naming the
/// path when it cannot be written.
void emit_csv(const TrialBatch& batch, const std::string& path);

/// The CSV content as a string (emit_csv writes exactly this).
std::string render_csv(const TrialBatch& batch);

}  // namespace permreg
