#pragma once

#include <string>

#include "permreg/bounds.hpp"
#include "permreg/estimators.hpp"
#include "permreg/experiment.hpp"
#include "permreg/hardness.hpp"
#include "permreg/instance.hpp"

namespace permreg {

/// JSON document {n, d, seed, sigma, x_star, pi_star, A (row-major), w, y}.
/// Numbers round-trip losslessly at full double precision.
std::string instance_to_json(const ProblemInstance& inst, int indent = 2);
ProblemInstance instance_from_json(const std::string& text);

std::string instance_to_json_file(const ProblemInstance& inst, const std::string& path);
ProblemInstance instance_from_json_file(const std::string& path);

std::string estimation_result_to_json(const EstimationResult& result, const std::string& method,
                                      int indent = 2);

std::string bound_report_to_json(const BoundReport& report, int indent = 2);

std::string reduction_to_json(const ReductionOutput& out, const FeasibilityResult& feas,
                              const PartitionDecision& subset_decision, int indent = 2);

/// Config as JSON; missing fields keep the passed-in defaults, unknown
/// fields are rejected.
std::string config_to_json(const ExperimentConfig& config, int indent = 2);
ExperimentConfig config_from_json(const std::string& text, ExperimentConfig defaults = {});
ExperimentConfig config_from_json_file(const std::string& path, ExperimentConfig defaults = {});

}  // namespace permreg
