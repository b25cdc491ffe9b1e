#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "eiregret/gp.hpp"

namespace eiregret::bench {

struct CheckResult {
  std::string suite;
  std::string name;
  bool passed = false;
  std::string detail;
};

// Reference posterior by explicit dense inversion of K + noise_var I.
// Deliberately the slow textbook route; used only to cross-check GpModel.
void oracle_posterior(const Dataset& data, const KernelSpec& kernel,
                      double noise_var, const Eigen::Ref<const Vector>& x,
                      double& mean, double& var);

// Max abs deviation of GpModel mean/variance from the dense oracle over
// random instances (d <= 4, t <= 30, several probes each).
double gp_oracle_max_error(std::uint64_t seed, int instances);

// Max abs deviation of the closed form from a Monte-Carlo estimate of
// E[max(xi - f, 0)] over random (xi - mu, sigma) pairs.
double ei_mc_max_error(std::uint64_t seed, int triples, long draws);

// Max relative disagreement between the three EI forms: the moment form,
// the trade-off form, and sigma * tau(z).
double ei_forms_max_rel_error(std::uint64_t seed, int triples);

// Min over random (model, probe) pairs of sigma_t(x) minus its theoretical
// floor sigma * sqrt(1 / (t + sigma^2)); spans t <= 100 and noise levels
// {0.05, 0.1, 0.5}.
double sigma_bound_min_margin(std::uint64_t seed, int pairs);

std::vector<CheckResult> verify_lemmas(std::uint64_t seed, int probes);
std::vector<CheckResult> verify_gp(std::uint64_t seed);
std::vector<CheckResult> verify_ei(std::uint64_t seed);

// suite: "all", "lemmas", "gp" or "ei".
std::vector<CheckResult> run_verify(const std::string& suite);

std::string render_verify_table(const std::vector<CheckResult>& results);
void write_verify_csv(const std::vector<CheckResult>& results,
                      const std::string& path);

}  // namespace eiregret::bench
