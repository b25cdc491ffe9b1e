#pragma once

#include <string>
#include <vector>

#include "eiregret/bench/config.hpp"
#include "eiregret/bench/csv.hpp"
#include "eiregret/bench/trace.hpp"

namespace eiregret::bench {

// Aggregates over the non-failed trials. The per-step curves are indexed by
// loop iteration j = 1..n_total-n0 and use the loop-relative cumulative
// regret (R_{n0+j} - R_{n0}) / j.
struct ExperimentSummary {
  std::string label;  // incumbent rule name
  std::vector<int> t;
  std::vector<double> mean_rt_over_t;
  std::vector<double> ci_half_width;  // 1.96 * sample std / sqrt(R)
  std::vector<double> final_cum_regret;   // one entry per surviving trial
  std::vector<int> ny;                    // per-trial count of failed E^y events
  std::vector<double> mean_simple_regret; // BOI only: mean y_plus_t - f_star
  int trials_requested = 0;
  int trials_ok = 0;

  SummaryCurve curve() const;
};

// Executes one full optimization run. Deterministic in (cfg.seed,
// trial_index): per-trial substreams are split from cfg.seed ^ trial_index.
// GP failures mark the trace failed instead of propagating.
RegretTrace run_trial(const ExperimentConfig& cfg, int trial_index);

// Runs trials 1..cfg.trials on up to `parallel` worker threads. The result
// is ordered by trial index and independent of the thread count.
std::vector<RegretTrace> run_trials(const ExperimentConfig& cfg, int parallel);

// Ordered reduce of the traces; throws std::runtime_error if every trial
// failed.
ExperimentSummary summarize(const ExperimentConfig& cfg,
                            const std::vector<RegretTrace>& traces);

ExperimentSummary run_experiment(const ExperimentConfig& cfg, int parallel = 1);

}  // namespace eiregret::bench
