#pragma once

#include <string>
#include <vector>

#include "eiregret/acquisition.hpp"
#include "eiregret/objectives.hpp"

namespace eiregret::bench {

// One evaluation of the objective. Rows t = 1..n0 come from the initial
// design and carry only x/y/f/r/R; acquisition fields are meaningful on loop
// rows (is_design == false).
struct RegretRecord {
  int t = 0;  // overall sample index, 1-based
  Vector x;   // native coordinates
  double y = 0.0;
  double f = 0.0;
  double r = 0.0;      // f - f_star
  double cum_r = 0.0;  // running sum of r from t = 1
  bool is_design = true;

  double xi_plus = 0.0;        // incumbent used by the EI step
  double sigma_xt = 0.0;       // posterior std at x before observing it
  double mu_xt = 0.0;          // posterior mean at x before observing it
  double ei_xt = 0.0;          // EI value attained at x
  double simple_regret = 0.0;  // y_plus before this step minus f_star
  bool ey_flag = false;        // E^y(t) indicator
  bool ef_flag = false;        // confidence interval contains f(x_t)
  double info_gain = 0.0;      // running empirical information gain
  double bspmi_value = 0.0;    // diagnostic: min posterior mean over samples
};

struct RegretTrace {
  int trial_index = 0;
  FunctionId function = FunctionId::Branin2;
  IncumbentRule rule = IncumbentRule::Bpmi;
  int dim = 0;
  int n0 = 0;
  double f_star = 0.0;
  double noise_sigma = 0.0;
  double lipschitz = 1.0;
  bool failed = false;
  std::string failure;
  std::vector<RegretRecord> records;

  int loop_len() const {
    return static_cast<int>(records.size()) - n0;
  }
};

}  // namespace eiregret::bench
