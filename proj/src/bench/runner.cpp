#include "eiregret/bench/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include "eiregret/theory.hpp"

namespace eiregret::bench {

SummaryCurve ExperimentSummary::curve() const {
  SummaryCurve out;
  out.label = label;
  out.t = t;
  out.mean_rt_over_t = mean_rt_over_t;
  out.ci_low.resize(t.size());
  out.ci_high.resize(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    out.ci_low[i] = mean_rt_over_t[i] - ci_half_width[i];
    out.ci_high[i] = mean_rt_over_t[i] + ci_half_width[i];
  }
  return out;
}

RegretTrace run_trial(const ExperimentConfig& cfg, int trial_index) {
  const TestFunction fn = make_test_function(cfg.function);
  const Box unit = Box::unit(fn.dim);

  RegretTrace trace;
  trace.trial_index = trial_index;
  trace.function = cfg.function;
  trace.rule = cfg.incumbent;
  trace.dim = fn.dim;
  trace.n0 = cfg.n0;
  trace.f_star = fn.f_star;
  trace.noise_sigma = cfg.noise_sigma;
  trace.lipschitz = fn.lipschitz;

  std::uint64_t split_state = cfg.seed ^ static_cast<std::uint64_t>(trial_index);
  RngStream design_stream(splitmix64(split_state));
  RngStream noise_stream(splitmix64(split_state));
  RngStream acq_stream(splitmix64(split_state));
  NoiseModel noise{cfg.noise_sigma, &noise_stream};

  // Noiseless runs keep the regret diagnostics defined via a tiny surrogate
  // noise scale; the GP itself still uses the true noise variance.
  const double diag_sigma = cfg.noise_sigma > 0.0 ? cfg.noise_sigma : 1e-6;
  TheoryParams theory;
  theory.delta = cfg.delta;
  theory.alpha = cfg.alpha;
  theory.lipschitz = fn.lipschitz;
  theory.box_scale = 1.0;  // GP coordinates live on the unit cube
  theory.dim = fn.dim;
  theory.sigma = diag_sigma;
  validate(theory);

  const Matrix design = initial_design(fn, cfg.n0, design_stream);
  Dataset data;
  data.X.resize(cfg.n0, fn.dim);
  data.y.resize(cfg.n0);

  double cum_r = 0.0;
  double y_min = std::numeric_limits<double>::infinity();
  for (int i = 0; i < cfg.n0; ++i) {
    const Vector x = design.row(i).transpose();
    const double f = eval_objective(fn, x);
    const double y = observe(fn, x, noise);
    data.X.row(i) = fn.box.to_unit(x).transpose();
    data.y(i) = y;
    y_min = std::min(y_min, y);
    cum_r += f - fn.f_star;

    RegretRecord rec;
    rec.t = i + 1;
    rec.x = x;
    rec.y = y;
    rec.f = f;
    rec.r = f - fn.f_star;
    rec.cum_r = cum_r;
    rec.is_design = true;
    trace.records.push_back(std::move(rec));
  }

  const double noise_var = cfg.noise_sigma * cfg.noise_sigma;
  KernelSpec spec = make_kernel_spec(cfg.kernel, cfg.lengthscale.value_or(0.5));
  const int loop_steps = cfg.n_total - cfg.n0;
  double info_gain = 0.0;

  try {
    for (int j = 1; j <= loop_steps; ++j) {
      const int t = cfg.n0 + j;  // overall sample index of this step
      if (cfg.mle && (j - 1) % cfg.refit_period == 0)
        spec = mle_fit_lengthscale(data, cfg.kernel, noise_var, cfg.grid).kernel;
      const GpModel model = fit(data, spec, noise_var);

      const IncumbentValue incumbent = compute_incumbent(
          model, cfg.incumbent, unit, cfg.acq_pool, acq_stream);
      const double bspmi_value = best_sampled_posterior_mean(model).second;
      const AcqChoice choice =
          maximize_ei(model, incumbent, unit, cfg.acq_pool, acq_stream);

      const Vector x_native = fn.box.from_unit(choice.x);
      const double f = eval_objective(fn, x_native);
      const double y = observe(fn, x_native, noise);

      const double beta = beta_t(theory, t);
      const double r_s = noisy_simple_regret(y_min, fn.f_star);
      cum_r += f - fn.f_star;
      info_gain +=
          0.5 * std::log1p(choice.std * choice.std / (diag_sigma * diag_sigma));

      RegretRecord rec;
      rec.t = t;
      rec.x = x_native;
      rec.y = y;
      rec.f = f;
      rec.r = f - fn.f_star;
      rec.cum_r = cum_r;
      rec.is_design = false;
      rec.xi_plus = incumbent.xi_plus;
      rec.sigma_xt = choice.std;
      rec.mu_xt = choice.mean;
      rec.ei_xt = choice.ei;
      rec.simple_regret = r_s;
      rec.ey_flag = event_ey(r_s, beta, choice.std);
      rec.ef_flag = std::abs(f - choice.mean) <= std::sqrt(beta) * choice.std;
      rec.info_gain = info_gain;
      rec.bspmi_value = bspmi_value;
      trace.records.push_back(std::move(rec));

      data.append(choice.x, y);
      y_min = std::min(y_min, y);
    }
  } catch (const std::exception& e) {
    trace.failed = true;
    trace.failure = e.what();
  }
  return trace;
}

std::vector<RegretTrace> run_trials(const ExperimentConfig& cfg, int parallel) {
  if (parallel < 1)
    throw std::invalid_argument("runner: parallel must be >= 1");
  std::vector<RegretTrace> traces(cfg.trials);
  const int workers = std::min(parallel, cfg.trials);
  if (workers == 1) {
    for (int i = 0; i < cfg.trials; ++i) traces[i] = run_trial(cfg, i + 1);
    return traces;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      while (true) {
        const int i = next.fetch_add(1);
        if (i >= cfg.trials) return;
        traces[i] = run_trial(cfg, i + 1);
      }
    });
  }
  for (std::thread& th : pool) th.join();
  return traces;
}

ExperimentSummary summarize(const ExperimentConfig& cfg,
                            const std::vector<RegretTrace>& traces) {
  ExperimentSummary summary;
  summary.label = to_string(cfg.incumbent);
  summary.trials_requested = static_cast<int>(traces.size());

  std::vector<const RegretTrace*> ok;
  for (const RegretTrace& trace : traces)
    if (!trace.failed) ok.push_back(&trace);
  summary.trials_ok = static_cast<int>(ok.size());
  if (ok.empty())
    throw std::runtime_error("runner: every trial failed; first diagnostic: " +
                             (traces.empty() ? std::string("no trials")
                                             : traces.front().failure));

  const int loops = cfg.n_total - cfg.n0;
  const double n = static_cast<double>(ok.size());
  summary.t.resize(loops);
  summary.mean_rt_over_t.resize(loops);
  summary.ci_half_width.resize(loops);
  const bool boi = cfg.incumbent == IncumbentRule::Boi;
  if (boi) summary.mean_simple_regret.resize(loops);

  // Per-trial running y-minimum for the BOI convergence curve.
  std::vector<double> y_best(ok.size());
  for (std::size_t k = 0; k < ok.size(); ++k) {
    double m = std::numeric_limits<double>::infinity();
    for (int i = 0; i < cfg.n0; ++i)
      m = std::min(m, ok[k]->records[i].y);
    y_best[k] = m;
  }

  std::vector<double> values(ok.size());
  for (int j = 1; j <= loops; ++j) {
    double sum_sr = 0.0;
    for (std::size_t k = 0; k < ok.size(); ++k) {
      const RegretTrace& trace = *ok[k];
      const double base = trace.records[cfg.n0 - 1].cum_r;
      const RegretRecord& rec = trace.records[cfg.n0 + j - 1];
      values[k] = (rec.cum_r - base) / j;
      if (boi) {
        y_best[k] = std::min(y_best[k], rec.y);
        sum_sr += y_best[k] - trace.f_star;
      }
    }
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= n;
    double half = 0.0;
    if (ok.size() > 1) {
      double ss = 0.0;
      for (double v : values) ss += (v - mean) * (v - mean);
      half = 1.96 * std::sqrt(ss / (n - 1.0) / n);
    }
    summary.t[j - 1] = j;
    summary.mean_rt_over_t[j - 1] = mean;
    summary.ci_half_width[j - 1] = half;
    if (boi) summary.mean_simple_regret[j - 1] = sum_sr / n;
  }

  summary.final_cum_regret.reserve(ok.size());
  summary.ny.reserve(ok.size());
  for (const RegretTrace* trace : ok) {
    summary.final_cum_regret.push_back(trace->records.back().cum_r);
    int failures = 0;
    for (const RegretRecord& rec : trace->records)
      if (!rec.is_design && !rec.ey_flag) ++failures;
    summary.ny.push_back(failures);
  }
  return summary;
}

ExperimentSummary run_experiment(const ExperimentConfig& cfg, int parallel) {
  return summarize(cfg, run_trials(cfg, parallel));
}

}  // namespace eiregret::bench
