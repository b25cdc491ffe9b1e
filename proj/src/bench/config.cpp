#include "eiregret/bench/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace eiregret::bench {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  std::size_t pos = 0;
  double out;
  try {
    out = std::stod(value, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("config: bad number for " + key + ": " + value);
  }
  if (pos != value.size())
    throw std::invalid_argument("config: bad number for " + key + ": " + value);
  return out;
}

long long parse_int(const std::string& key, const std::string& value) {
  std::size_t pos = 0;
  long long out;
  try {
    out = std::stoll(value, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("config: bad integer for " + key + ": " + value);
  }
  if (pos != value.size())
    throw std::invalid_argument("config: bad integer for " + key + ": " + value);
  return out;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true") return true;
  if (value == "false") return false;
  throw std::invalid_argument("config: bad boolean for " + key + ": " + value);
}

// "[lo, hi, count]"
LengthscaleGrid parse_grid(const std::string& value) {
  const std::string body = trim(value);
  if (body.size() < 2 || body.front() != '[' || body.back() != ']')
    throw std::invalid_argument("config: lengthscale_grid expects [lo, hi, n]");
  std::vector<std::string> parts;
  std::stringstream ss(body.substr(1, body.size() - 2));
  std::string item;
  while (std::getline(ss, item, ',')) parts.push_back(trim(item));
  if (parts.size() != 3)
    throw std::invalid_argument("config: lengthscale_grid expects [lo, hi, n]");
  LengthscaleGrid grid;
  grid.lo = parse_double("lengthscale_grid", parts[0]);
  grid.hi = parse_double("lengthscale_grid", parts[1]);
  grid.count = static_cast<int>(parse_int("lengthscale_grid", parts[2]));
  return grid;
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text) {
  ExperimentConfig cfg;
  bool mle_explicit = false;
  std::stringstream lines(text);
  std::string line;
  int line_no = 0;
  while (std::getline(lines, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config: line " + std::to_string(line_no) +
                                  " is not key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw std::invalid_argument("config: line " + std::to_string(line_no) +
                                  " is not key = value");

    if (key == "function") {
      cfg.function = parse_function_id(value);
    } else if (key == "kernel") {
      cfg.kernel = parse_kernel_family(value);
    } else if (key == "lengthscale") {
      cfg.lengthscale = parse_double(key, value);
    } else if (key == "mle") {
      cfg.mle = parse_bool(key, value);
      mle_explicit = true;
    } else if (key == "lengthscale_grid") {
      cfg.grid = parse_grid(value);
    } else if (key == "refit_period") {
      cfg.refit_period = static_cast<int>(parse_int(key, value));
    } else if (key == "incumbent") {
      cfg.incumbent = parse_incumbent_rule(value);
    } else if (key == "noise_sigma") {
      cfg.noise_sigma = parse_double(key, value);
    } else if (key == "n0") {
      cfg.n0 = static_cast<int>(parse_int(key, value));
    } else if (key == "n_total") {
      cfg.n_total = static_cast<int>(parse_int(key, value));
    } else if (key == "trials") {
      cfg.trials = static_cast<int>(parse_int(key, value));
    } else if (key == "seed") {
      cfg.seed = static_cast<std::uint64_t>(parse_int(key, value));
    } else if (key == "acq_pool") {
      cfg.acq_pool = static_cast<int>(parse_int(key, value));
    } else if (key == "delta") {
      cfg.delta = parse_double(key, value);
    } else if (key == "alpha") {
      cfg.alpha = parse_double(key, value);
    } else if (key == "profile") {
      cfg.profile = value;
    } else if (key == "out_dir") {
      cfg.out_dir = value;
    } else {
      throw std::invalid_argument("config: unknown key " + key);
    }
  }
  if (!mle_explicit) cfg.mle = !cfg.lengthscale.has_value();
  return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

void finalize(ExperimentConfig& cfg) {
  const TestFunction fn = make_test_function(cfg.function);
  if (cfg.profile != "paper" && cfg.profile != "desk")
    throw std::invalid_argument("config: profile must be paper or desk");
  if (cfg.n0 == 0) cfg.n0 = 10 * fn.dim;
  if (cfg.n_total == 0)
    cfg.n_total = cfg.n0 + (cfg.profile == "desk" ? 150 : 500);
  if (cfg.trials == 0) cfg.trials = cfg.profile == "desk" ? 20 : 100;
  if (cfg.acq_pool == 0) cfg.acq_pool = 2048 * fn.dim;

  if (cfg.n0 < 1) throw std::invalid_argument("config: n0 must be >= 1");
  if (cfg.n_total <= cfg.n0)
    throw std::invalid_argument("config: n_total must exceed n0");
  if (cfg.trials < 1) throw std::invalid_argument("config: trials must be >= 1");
  if (cfg.acq_pool < 1)
    throw std::invalid_argument("config: acq_pool must be >= 1");
  if (cfg.refit_period < 1)
    throw std::invalid_argument("config: refit_period must be >= 1");
  if (!std::isfinite(cfg.noise_sigma) || cfg.noise_sigma < 0.0)
    throw std::invalid_argument("config: noise_sigma must be finite and >= 0");
  if (!(cfg.delta > 0.0 && cfg.delta < 1.0))
    throw std::invalid_argument("config: delta must lie in (0,1)");
  if (!(cfg.alpha > 0.0 && cfg.alpha <= 1.0))
    throw std::invalid_argument("config: alpha must lie in (0,1]");
  if (cfg.lengthscale && cfg.mle)
    throw std::invalid_argument(
        "config: lengthscale fixes the kernel; mle = true conflicts");
  if (!cfg.lengthscale && !cfg.mle)
    throw std::invalid_argument(
        "config: mle = false requires a lengthscale value");
  if (cfg.lengthscale &&
      (!std::isfinite(*cfg.lengthscale) || *cfg.lengthscale <= 0.0))
    throw std::invalid_argument("config: lengthscale must be finite and > 0");
  if (cfg.grid.count < 2 || cfg.grid.lo <= 0.0 || cfg.grid.hi <= cfg.grid.lo)
    throw std::invalid_argument("config: lengthscale_grid must satisfy 0 < lo < hi, n >= 2");
  if (cfg.out_dir.empty())
    throw std::invalid_argument("config: out_dir must not be empty");
}

}  // namespace eiregret::bench
