#pragma once

#include <string>
#include <vector>

#include "eiregret/bench/trace.hpp"

namespace eiregret::bench {

// Shortest decimal string that parses back to exactly the same double.
// Rejects NaN and infinities.
std::string format_double(double v);

std::string trace_csv_header(int dim);

// All trials in one file, ordered by (trial, t). Design rows leave the
// acquisition columns empty; simple_regret is populated only for BOI loop
// rows. Any non-finite value that would be written aborts the whole write.
void write_trace_csv(const std::vector<RegretTrace>& traces,
                     const std::string& path);

struct SummaryCurve {
  std::string label;  // incumbent rule name; recovered from the filename on read
  std::vector<int> t;  // loop iteration, 1-based
  std::vector<double> mean_rt_over_t;
  std::vector<double> ci_low;
  std::vector<double> ci_high;
};

void write_summary_csv(const SummaryCurve& curve, const std::string& path);
SummaryCurve read_summary_csv(const std::string& path);

// Minimal comma-split reader; our writers never emit quoted fields.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  // Index of a named column; throws std::invalid_argument when absent.
  int column(const std::string& name) const;
};

CsvTable read_csv(const std::string& path);

}  // namespace eiregret::bench
