#include "permreg/instance.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "permreg/rng.hpp"

namespace permreg {

ProblemInstance generate_instance(int n, int d, const Eigen::VectorXd& x_star, double sigma,
                                  const TruthSpec& truth, std::uint64_t seed) {
  if (d < 1) throw std::invalid_argument("generate_instance: d must be >= 1");
  if (d >= n) throw std::invalid_argument("generate_instance: requires d < n");
  if (x_star.size() != d) throw std::invalid_argument("generate_instance: x_star has wrong dimension");
  if (sigma < 0.0) throw std::invalid_argument("generate_instance: sigma must be >= 0");
  if (truth.fixed && truth.fixed->size() != static_cast<std::size_t>(n))
    throw std::invalid_argument("generate_instance: pi_star size mismatch");

  ProblemInstance inst;
  inst.n = n;
  inst.d = d;
  inst.x_star = x_star;
  inst.sigma = sigma;
  inst.seed = seed;

  auto design_rng = make_engine(substream_seed(seed, StreamTag::Design));
  std::normal_distribution<double> unit_normal(0.0, 1.0);
  inst.A.resize(n, d);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < d; ++j) inst.A(i, j) = unit_normal(design_rng);

  auto noise_rng = make_engine(substream_seed(seed, StreamTag::Noise));
  inst.w.resize(n);
  for (int i = 0; i < n; ++i) inst.w[i] = sigma * unit_normal(noise_rng);

  if (truth.fixed) {
    inst.pi_star = *truth.fixed;
  } else {
    auto truth_rng = make_engine(substream_seed(seed, StreamTag::Truth));
    inst.pi_star = sample_uniform(static_cast<std::size_t>(n), truth_rng);
  }

  inst.y = inst.pi_star.apply(inst.A * inst.x_star) + inst.w;
  return inst;
}

double snr_of(const ProblemInstance& inst) {
  if (inst.sigma == 0.0) return std::numeric_limits<double>::infinity();
  return inst.x_star.squaredNorm() / (inst.sigma * inst.sigma);
}

double gamma_of(const ProblemInstance& inst) {
  if (inst.n < 2) throw std::invalid_argument("gamma_of: requires n >= 2");
  const double snr = snr_of(inst);
  if (std::isinf(snr)) return std::numeric_limits<double>::infinity();
  return std::log1p(snr) / std::log(static_cast<double>(inst.n));
}

double snr_for_gamma(int n, double gamma) {
  if (n < 2) throw std::invalid_argument("snr_for_gamma: requires n >= 2");
  if (gamma < 0.0) throw std::invalid_argument("snr_for_gamma: gamma must be >= 0");
  return std::expm1(gamma * std::log(static_cast<double>(n)));
}

}  // namespace permreg
