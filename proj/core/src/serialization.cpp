#include "permreg/serialization.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace permreg {

namespace {

using nlohmann::json;

json vector_to_json(const Eigen::VectorXd& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
  return arr;
}

Eigen::VectorXd vector_from_json(const json& arr) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(arr.size()));
  Eigen::Index i = 0;
  for (const auto& x : arr) v(i++) = x.get<double>();
  return v;
}

json matrix_to_json_row_major(const Eigen::MatrixXd& m) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) arr.push_back(m(i, j));
  return arr;
}

json permutation_to_json(const Permutation& p) {
  json arr = json::array();
  for (std::size_t v : p.map()) arr.push_back(v);
  return arr;
}

Permutation permutation_from_json(const json& arr) {
  std::vector<std::size_t> map;
  map.reserve(arr.size());
  for (const auto& x : arr) map.push_back(x.get<std::size_t>());
  return Permutation(std::move(map));
}

std::string read_file(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << file.rdbuf();
  return ss.str();
}

}  // namespace

std::string instance_to_json(const ProblemInstance& inst, int indent) {
  json doc;
  doc["n"] = inst.n;
  doc["d"] = inst.d;
  doc["seed"] = inst.seed;
  doc["sigma"] = inst.sigma;
  doc["x_star"] = vector_to_json(inst.x_star);
  doc["pi_star"] = permutation_to_json(inst.pi_star);
  doc["A"] = matrix_to_json_row_major(inst.A);
  doc["w"] = vector_to_json(inst.w);
  doc["y"] = vector_to_json(inst.y);
  return doc.dump(indent);
}

ProblemInstance instance_from_json(const std::string& text) {
  const json doc = json::parse(text);
  ProblemInstance inst;
  inst.n = doc.at("n").get<int>();
  inst.d = doc.at("d").get<int>();
  inst.seed = doc.at("seed").get<std::uint64_t>();
  inst.sigma = doc.at("sigma").get<double>();
  inst.x_star = vector_from_json(doc.at("x_star"));
  inst.pi_star = permutation_from_json(doc.at("pi_star"));
  inst.w = vector_from_json(doc.at("w"));
  inst.y = vector_from_json(doc.at("y"));

  const auto& a = doc.at("A");
  if (a.size() != static_cast<std::size_t>(inst.n) * static_cast<std::size_t>(inst.d))
    throw std::invalid_argument("instance JSON: A has wrong length");
  inst.A.resize(inst.n, inst.d);
  std::size_t k = 0;
  for (int i = 0; i < inst.n; ++i)
    for (int j = 0; j < inst.d; ++j) inst.A(i, j) = a[k++].get<double>();

  if (inst.x_star.size() != inst.d || inst.w.size() != inst.n || inst.y.size() != inst.n ||
      inst.pi_star.size() != static_cast<std::size_t>(inst.n))
    throw std::invalid_argument("instance JSON: inconsistent dimensions");
  return inst;
}

std::string instance_to_json_file(const ProblemInstance& inst, const std::string& path) {
  std::string text = instance_to_json(inst);
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open '" + path + "' for writing");
  file << text << '\n';
  if (!file) throw std::runtime_error("write failed for '" + path + "'");
  return text;
}

ProblemInstance instance_from_json_file(const std::string& path) {
  return instance_from_json(read_file(path));
}

std::string estimation_result_to_json(const EstimationResult& result, const std::string& method,
                                      int indent) {
  json doc;
  doc["method"] = method;
  doc["pi_hat"] = permutation_to_json(result.pi_hat);
  doc["x_hat"] = vector_to_json(result.x_hat);
  doc["objective"] = result.objective;
  doc["exact"] = result.exact;
  doc["iterations"] = result.iterations;
  if (result.hamming_to_truth)
    doc["hamming_to_truth"] = *result.hamming_to_truth;
  else
    doc["hamming_to_truth"] = nullptr;
  return doc.dump(indent);
}

std::string bound_report_to_json(const BoundReport& report, int indent) {
  json doc;
  doc["name"] = report.name;
  doc["inputs"] = report.inputs;
  doc["lhs"] = report.lhs;
  doc["rhs"] = report.rhs;
  doc["satisfied"] = report.satisfied;
  doc["guarantee"] = report.guarantee;
  return doc.dump(indent);
}

std::string reduction_to_json(const ReductionOutput& out, const FeasibilityResult& feas,
                              const PartitionDecision& subset_decision, int indent) {
  json doc;
  json y = json::array();
  for (Eigen::Index i = 0; i < out.y.size(); ++i) y.push_back(out.y(i));
  doc["y"] = y;
  json a = json::array();
  for (Eigen::Index i = 0; i < out.A.rows(); ++i)
    for (Eigen::Index j = 0; j < out.A.cols(); ++j) a.push_back(out.A(i, j));
  doc["A"] = a;
  doc["rows"] = out.A.rows();
  doc["cols"] = out.A.cols();
  doc["feasible"] = feas.feasible;
  if (feas.witness) {
    doc["witness"] = {{"pi", permutation_to_json(feas.witness->pi)},
                      {"x", vector_to_json(feas.witness->x)}};
  } else {
    doc["witness"] = nullptr;
  }
  doc["partition_exists"] = subset_decision.exists;
  if (subset_decision.subset)
    doc["partition_subset"] = *subset_decision.subset;
  else
    doc["partition_subset"] = nullptr;
  return doc.dump(indent);
}

std::string config_to_json(const ExperimentConfig& config, int indent) {
  json doc;
  doc["n_grid"] = config.n_grid;
  doc["d"] = config.d;
  doc["gamma_grid"] = config.gamma_grid;
  doc["trials"] = config.trials;
  doc["sigma"] = config.sigma;
  doc["estimator"] = to_string(config.estimator);
  if (config.distortion_D) doc["distortion_D"] = *config.distortion_D;
  if (config.side_info_hbar) doc["side_info_hbar"] = *config.side_info_hbar;
  doc["master_seed"] = config.master_seed;
  doc["output_path"] = config.output_path;
  doc["workers"] = config.workers;
  doc["altmin_restarts"] = config.altmin_restarts;
  doc["altmin_max_iters"] = config.altmin_max_iters;
  return doc.dump(indent);
}

ExperimentConfig config_from_json(const std::string& text, ExperimentConfig defaults) {
  const json doc = json::parse(text);
  ExperimentConfig cfg = std::move(defaults);
  static const char* known[] = {"n_grid",        "d",          "gamma_grid",     "trials",
                                "sigma",         "estimator",  "distortion_D",   "side_info_hbar",
                                "master_seed",   "output_path", "workers",       "altmin_restarts",
                                "altmin_max_iters"};
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    bool ok = false;
    for (const char* k : known)
      if (it.key() == k) ok = true;
    if (!ok) throw std::invalid_argument("config JSON: unknown field '" + it.key() + "'");
  }
  if (doc.contains("n_grid")) cfg.n_grid = doc["n_grid"].get<std::vector<int>>();
  if (doc.contains("d")) cfg.d = doc["d"].get<int>();
  if (doc.contains("gamma_grid")) cfg.gamma_grid = doc["gamma_grid"].get<std::vector<double>>();
  if (doc.contains("trials")) cfg.trials = doc["trials"].get<int>();
  if (doc.contains("sigma")) cfg.sigma = doc["sigma"].get<double>();
  if (doc.contains("estimator")) cfg.estimator = estimator_from_string(doc["estimator"].get<std::string>());
  if (doc.contains("distortion_D")) cfg.distortion_D = doc["distortion_D"].get<int>();
  if (doc.contains("side_info_hbar")) cfg.side_info_hbar = doc["side_info_hbar"].get<int>();
  if (doc.contains("master_seed")) cfg.master_seed = doc["master_seed"].get<std::uint64_t>();
  if (doc.contains("output_path")) cfg.output_path = doc["output_path"].get<std::string>();
  if (doc.contains("workers")) cfg.workers = doc["workers"].get<int>();
  if (doc.contains("altmin_restarts")) cfg.altmin_restarts = doc["altmin_restarts"].get<int>();
  if (doc.contains("altmin_max_iters")) cfg.altmin_max_iters = doc["altmin_max_iters"].get<int>();
  return cfg;
}

ExperimentConfig config_from_json_file(const std::string& path, ExperimentConfig defaults) {
  return config_from_json(read_file(path), std::move(defaults));
}

}  // namespace permreg
