// End-to-end release gate. Each numbered criterion prints exactly one
// PASS/FAIL line; the process exits nonzero if any criterion fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <fstream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "eiregret/acquisition.hpp"
#include "eiregret/bench/cli.hpp"
#include "eiregret/bench/config.hpp"
#include "eiregret/bench/runner.hpp"
#include "eiregret/bench/verify.hpp"
#include "eiregret/objectives.hpp"
#include "eiregret/theory.hpp"

using namespace eiregret;
using namespace eiregret::bench;

namespace {

namespace fs = std::filesystem;

int g_failures = 0;

void report(int index, const std::string& name, bool passed,
            const std::string& detail) {
  if (!passed) ++g_failures;
  std::printf("%s  %2d  %s (%s)\n", passed ? "PASS" : "FAIL", index,
              name.c_str(), detail.c_str());
  std::fflush(stdout);
}

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

std::string fmt(const char* pattern, double a, double b = 0.0,
                double c = 0.0) {
  char buf[192];
  std::snprintf(buf, sizeof(buf), pattern, a, b, c);
  return std::string(buf);
}

int workers() {
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc > 4 ? 4 : hc);
}

ExperimentConfig desk_config(FunctionId fn, IncumbentRule rule,
                             double noise_sigma) {
  ExperimentConfig cfg;
  cfg.function = fn;
  cfg.kernel = KernelFamily::Matern32;
  cfg.incumbent = rule;
  cfg.noise_sigma = noise_sigma;
  cfg.profile = "desk";
  cfg.seed = 1;
  finalize(cfg);
  return cfg;
}

std::string read_bytes(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

int main() {
  const std::uint64_t seed = 2026;

  {  // 1. posterior against the dense-inversion reference
    Timer timer;
    const double err = gp_oracle_max_error(seed, 200);
    const double sec = timer.seconds();
    report(1, "gp posterior matches dense oracle",
           err <= 1e-8 && sec < 10.0,
           fmt("max err %.2e, %.1f s", err, sec));
  }

  {  // 2. closed-form EI against Monte-Carlo and across algebraic forms
    Timer timer;
    const double mc = ei_mc_max_error(seed, 50, 1000000);
    const double forms = ei_forms_max_rel_error(seed, 2000);
    const double sec = timer.seconds();
    report(2, "ei closed form matches monte carlo and itself",
           mc <= 3e-3 && forms <= 1e-12 && sec < 30.0,
           fmt("mc err %.2e, form rel err %.2e, %.1f s", mc, forms, sec));
  }

  {  // 3. randomized inequality suite
    Timer timer;
    const std::vector<CheckResult> results = verify_lemmas(seed, 10000);
    int bad = 0;
    for (const CheckResult& r : results)
      if (!r.passed) ++bad;
    const double sec = timer.seconds();
    report(3, "inequality suite clean over 1e4 probes each",
           !results.empty() && bad == 0 && sec < 20.0,
           fmt("%.0f checks, %.0f failed, %.1f s",
               static_cast<double>(results.size()), static_cast<double>(bad),
               sec));
  }

  {  // 4. posterior-std floor on random models
    Timer timer;
    const double margin = sigma_bound_min_margin(seed, 500);
    const double sec = timer.seconds();
    report(4, "posterior std stays above its floor",
           margin >= -1e-10 && sec < 30.0,
           fmt("min margin %.2e, %.1f s", margin, sec));
  }

  // Shared regret experiments (criteria 5..8).
  const int nw = workers();
  Timer bench_timer;
  const ExperimentConfig cfg_a =
      desk_config(FunctionId::Branin2, IncumbentRule::Bpmi, 0.01);
  const ExperimentConfig cfg_b =
      desk_config(FunctionId::Branin2, IncumbentRule::Bspmi, 0.01);
  const ExperimentConfig cfg_c =
      desk_config(FunctionId::Styblinski2, IncumbentRule::Bpmi, 0.01);
  const ExperimentConfig cfg_d =
      desk_config(FunctionId::Styblinski2, IncumbentRule::Bspmi, 0.01);
  const std::vector<RegretTrace> traces_a = run_trials(cfg_a, nw);
  const std::vector<RegretTrace> traces_b = run_trials(cfg_b, nw);
  const std::vector<RegretTrace> traces_c = run_trials(cfg_c, nw);
  const std::vector<RegretTrace> traces_d = run_trials(cfg_d, nw);
  const double trend_sec = bench_timer.seconds();

  const ExperimentConfig cfg_e =
      desk_config(FunctionId::Rosenbrock4, IncumbentRule::Boi, 0.1);
  const std::vector<RegretTrace> traces_e = run_trials(cfg_e, nw);

  struct Batch {
    const ExperimentConfig* cfg;
    const std::vector<RegretTrace>* traces;
  };
  const std::vector<Batch> batches = {{&cfg_a, &traces_a},
                                      {&cfg_b, &traces_b},
                                      {&cfg_c, &traces_c},
                                      {&cfg_d, &traces_d},
                                      {&cfg_e, &traces_e}};

  {  // 5. variance-sum bound on every generated trace
    int violations = 0;
    int checked = 0;
    for (const Batch& batch : batches) {
      for (const RegretTrace& trace : *batch.traces) {
        if (trace.failed) continue;
        const int loops = trace.loop_len();
        Vector sigmas(loops);
        for (int j = 0; j < loops; ++j)
          sigmas[j] = trace.records[trace.n0 + j].sigma_xt;
        ++checked;
        if (!variance_sum_bound_check(sigmas, batch.cfg->noise_sigma))
          ++violations;
      }
    }
    report(5, "variance sum bounded by information gain",
           checked == 100 && violations == 0,
           fmt("%.0f traces, %.0f violations", checked, violations));
  }

  {  // 6. cumulative-regret trend on the 2d pair
    bool ok = true;
    double worst = 0.0;
    for (const Batch& batch :
         {batches[0], batches[1], batches[2], batches[3]}) {
      const ExperimentSummary summary = summarize(*batch.cfg, *batch.traces);
      const double early = summary.mean_rt_over_t[29];
      const double late = summary.mean_rt_over_t[149];
      const double ratio = late / early;
      worst = ratio > worst ? ratio : worst;
      ok = ok && late < 0.6 * early;
    }
    ok = ok && trend_sec < 600.0;
    report(6, "mean regret rate decays on branin and styblinski-tang", ok,
           fmt("worst t150/t30 ratio %.3f, %.1f s", worst, trend_sec));
  }

  {  // 7. noisy incumbent undershoot and its persistent event failures
    const TestFunction fn = make_test_function(cfg_e.function);
    int design_undershoot = 0;
    int undershoot = 0;
    int linear = 0;
    const int loops = cfg_e.n_total - cfg_e.n0;
    const int window = loops / 3;
    for (const RegretTrace& trace : traces_e) {
      if (trace.failed) continue;
      double y_min = std::numeric_limits<double>::infinity();
      for (int t = 0; t < cfg_e.n0; ++t)
        y_min = std::min(y_min, trace.records[t].y);
      if (y_min < fn.f_star) ++design_undershoot;
      for (int t = cfg_e.n0; t < cfg_e.n0 + 20; ++t)
        y_min = std::min(y_min, trace.records[t].y);
      if (!(y_min < fn.f_star)) continue;
      ++undershoot;
      int late_failures = 0;
      for (int j = loops - window; j < loops; ++j)
        if (!trace.records[cfg_e.n0 + j].ey_flag) ++late_failures;
      if (late_failures >= (9 * window) / 10) ++linear;
    }
    const int total = static_cast<int>(traces_e.size());
    const bool ok = design_undershoot * 2 > total &&
                    undershoot * 5 >= total * 3 && linear == undershoot;
    report(7, "noisy incumbent drops below the optimum and keeps failing",
           ok,
           fmt("undershoot %.0f/20 at t=n0, %.0f/20 by t=n0+20, %.0f linear",
               static_cast<double>(design_undershoot),
               static_cast<double>(undershoot),
               static_cast<double>(linear)));
  }

  {  // 8. incumbent ordering: whole-domain minimum never above sampled minimum
    int violations = 0;
    long rows = 0;
    for (const Batch& batch : {batches[0], batches[2]}) {
      for (const RegretTrace& trace : *batch.traces) {
        for (const RegretRecord& rec : trace.records) {
          if (rec.is_design) continue;
          ++rows;
          if (rec.xi_plus > rec.bspmi_value) ++violations;
        }
      }
    }
    report(8, "pool incumbent never exceeds sampled incumbent",
           rows == 6000 && violations == 0,
           fmt("%.0f rows, %.0f violations", static_cast<double>(rows),
               static_cast<double>(violations)));
  }

  {  // 9. constants ladder and the beta anchor
    bool ok = true;
    double min_gap = std::numeric_limits<double>::infinity();
    const double phi0 = std_normal_pdf(0.0);
    for (double alpha : {0.25, 0.5, 1.0}) {
      TheoryParams params;
      params.alpha = alpha;
      for (int t = 1; t <= 10000; ++t) {
        try {
          const LadderValues lv = ladder(params, t);
          const double lhs =
              lv.eta_sqrt * std_normal_cdf(-std::sqrt(lv.alpha_t));
          min_gap = std::min(min_gap, lhs - phi0);
          ok = ok && lhs > phi0;
        } catch (const std::exception&) {
          ok = false;
        }
      }
    }
    TheoryParams anchor;
    const double beta1 = beta_t(anchor, 1);
    ok = ok && std::abs(beta1 - 9.7596) < 1e-3;
    report(9, "constants ladder guard holds and beta anchor matches", ok,
           fmt("min guard gap %.3e, beta_1 %.6f", min_gap, beta1));
  }

  {  // 10. byte-identical output across repeated and threaded runs
    const fs::path base = fs::temp_directory_path() / "eiregret_acceptance";
    fs::remove_all(base);
    fs::create_directories(base);
    const fs::path cfg_path = base / "exp.cfg";
    {
      std::ofstream out(cfg_path);
      out << "function = camel2\nkernel = matern32\nlengthscale = 0.4\n"
             "incumbent = bspmi\nnoise_sigma = 0.01\nn0 = 8\nn_total = 28\n"
             "trials = 4\nseed = 7\nacq_pool = 128\nprofile = desk\n";
    }
    const std::string cfg_str = cfg_path.string();
    const fs::path out_a = base / "a";
    const fs::path out_b = base / "b";
    const fs::path out_c = base / "c";
    int rc = 0;
    auto run_into = [&](const fs::path& dir, bool threaded) {
      const std::string out_str = dir.string();
      std::vector<const char*> argv = {"eiregret", "run",  "--config",
                                       cfg_str.c_str(),    "--out",
                                       out_str.c_str()};
      if (threaded) {
        argv.push_back("--parallel");
        argv.push_back("3");
      }
      return run_cli(static_cast<int>(argv.size()), argv.data());
    };
    rc |= run_into(out_a, false);
    rc |= run_into(out_b, false);
    rc |= run_into(out_c, true);
    const std::string trace_a = read_bytes(out_a / "trace_bspmi.csv");
    const std::string summary_a = read_bytes(out_a / "summary_bspmi.csv");
    const bool ok = rc == 0 && !trace_a.empty() && !summary_a.empty() &&
                    trace_a == read_bytes(out_b / "trace_bspmi.csv") &&
                    trace_a == read_bytes(out_c / "trace_bspmi.csv") &&
                    summary_a == read_bytes(out_b / "summary_bspmi.csv") &&
                    summary_a == read_bytes(out_c / "summary_bspmi.csv");
    report(10, "repeated and threaded runs emit identical bytes", ok,
           fmt("exit code %.0f, trace bytes %.0f", static_cast<double>(rc),
               static_cast<double>(trace_a.size())));
  }

  if (g_failures == 0) {
    std::printf("acceptance: all 10 criteria passed\n");
    return 0;
  }
  std::printf("acceptance: %d criteria FAILED\n", g_failures);
  return 1;
}
