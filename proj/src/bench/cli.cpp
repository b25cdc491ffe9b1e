#include "eiregret/bench/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "eiregret/bench/runner.hpp"
#include "eiregret/bench/svg.hpp"
#include "eiregret/bench/verify.hpp"

namespace eiregret::bench {

namespace {

// Precedence: EIREGRET_OUT env var, then --out, then the config value.
std::string resolve_out_dir(const std::string& config_value,
                            const std::string& flag_value) {
  if (const char* env = std::getenv("EIREGRET_OUT"); env != nullptr && *env)
    return env;
  if (!flag_value.empty()) return flag_value;
  return config_value;
}

int do_run(const std::string& config_path, const std::string& out_flag,
           int parallel) {
  ExperimentConfig cfg;
  try {
    cfg = parse_config_file(config_path);
    finalize(cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  const std::string out = resolve_out_dir(cfg.out_dir, out_flag);
  try {
    std::filesystem::create_directories(out);
    const std::vector<RegretTrace> traces = run_trials(cfg, parallel);
    const ExperimentSummary summary = summarize(cfg, traces);
    const std::string trace_path = out + "/trace_" + summary.label + ".csv";
    const std::string summary_path = out + "/summary_" + summary.label + ".csv";
    write_trace_csv(traces, trace_path);
    write_summary_csv(summary.curve(), summary_path);
    std::cout << "wrote " << trace_path << "\n";
    std::cout << "wrote " << summary_path << "\n";
    std::cout << summary.trials_ok << "/" << summary.trials_requested
              << " trials ok, final mean R_t/t = "
              << format_double(summary.mean_rt_over_t.back()) << "\n";
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

int do_verify(const std::string& suite, const std::string& out_flag) {
  try {
    const std::vector<CheckResult> results = run_verify(suite);
    std::cout << render_verify_table(results);
    const std::string out = resolve_out_dir(".", out_flag);
    std::filesystem::create_directories(out);
    const std::string path = out + "/verify_" + suite + ".csv";
    write_verify_csv(results, path);
    std::cout << "wrote " << path << "\n";
    for (const CheckResult& r : results)
      if (!r.passed) return 2;
    return 0;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

int do_plot(const std::vector<std::string>& inputs, const std::string& out_path) {
  for (const std::string& in : inputs) {
    if (!std::filesystem::exists(in)) {
      std::cerr << "error: no such summary file: " << in << "\n";
      return 1;
    }
  }
  try {
    std::vector<SummaryCurve> curves;
    curves.reserve(inputs.size());
    for (const std::string& in : inputs) curves.push_back(read_summary_csv(in));
    emit_plot_svg(curves, out_path);
    std::cout << "wrote " << out_path << "\n";
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"GP-EI Bayesian-optimization regret experiments"};
  app.require_subcommand(1);

  CLI::App* run = app.add_subcommand("run", "run a multi-trial experiment");
  std::string config_path;
  std::string run_out;
  int parallel = 1;
  run->add_option("--config", config_path, "experiment config file")->required();
  run->add_option("--out", run_out, "output directory");
  run->add_option("--parallel", parallel, "worker thread count")
      ->check(CLI::PositiveNumber);

  CLI::App* verify = app.add_subcommand("verify", "run the self-check suites");
  std::string suite = "all";
  std::string verify_out;
  verify->add_option("--suite", suite, "all, lemmas, gp or ei")
      ->check(CLI::IsMember({"all", "lemmas", "gp", "ei"}));
  verify->add_option("--out", verify_out, "output directory");

  CLI::App* plot = app.add_subcommand("plot", "render summary CSVs to SVG");
  std::vector<std::string> inputs;
  std::string plot_out;
  plot->add_option("--in", inputs, "summary CSV files")
      ->required()
      ->expected(1, -1);
  plot->add_option("--out", plot_out, "output SVG path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  if (run->parsed()) return do_run(config_path, run_out, parallel);
  if (verify->parsed()) return do_verify(suite, verify_out);
  if (plot->parsed()) return do_plot(inputs, plot_out);
  return 1;
}

}  // namespace eiregret::bench
