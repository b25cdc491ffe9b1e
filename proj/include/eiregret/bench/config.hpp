#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "eiregret/acquisition.hpp"
#include "eiregret/objectives.hpp"

namespace eiregret::bench {

// Parsed from flat "key = value" lines with '#' comments. Zero-valued count
// fields mean "use the default for the function/profile"; finalize() fills
// them in.
struct ExperimentConfig {
  FunctionId function = FunctionId::Branin2;
  KernelFamily kernel = KernelFamily::Matern32;
  std::optional<double> lengthscale;  // fixed kernel scale; unset selects MLE
  bool mle = true;
  LengthscaleGrid grid;
  int refit_period = 1;
  IncumbentRule incumbent = IncumbentRule::Bpmi;
  double noise_sigma = 0.01;  // one of 1e-3, 1e-2, 1e-1
  int n0 = 0;                 // default 10 * dim
  int n_total = 0;            // default n0 + 500 (paper) or n0 + 150 (desk)
  int trials = 0;             // default 100 (paper) or 20 (desk)
  std::uint64_t seed = 1;
  int acq_pool = 0;           // default 2048 * dim
  double delta = 0.1;
  double alpha = 1.0;
  std::string profile = "paper";  // "paper" or "desk"
  std::string out_dir = ".";
};

ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig parse_config_file(const std::string& path);

// Applies function/profile defaults and validates every field.
void finalize(ExperimentConfig& cfg);

}  // namespace eiregret::bench
