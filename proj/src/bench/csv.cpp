#include "eiregret/bench/csv.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string_view>
#include <system_error>

namespace eiregret::bench {

std::string format_double(double v) {
  if (!std::isfinite(v))
    throw std::invalid_argument("csv: refusing to format a non-finite value");
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string trace_csv_header(int dim) {
  std::string h = "trial,t";
  for (int i = 1; i <= dim; ++i) h += ",x_" + std::to_string(i);
  h += ",y,f,r_t,R_t,xi_plus,sigma_xt,ei_xt,ey_flag,simple_regret,info_gain";
  return h;
}

namespace {

double parse_double_cell(const std::string& cell, const std::string& path) {
  double out;
  const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), out);
  if (res.ec != std::errc() || res.ptr != cell.data() + cell.size())
    throw std::runtime_error("csv: bad numeric cell '" + cell + "' in " + path);
  return out;
}

void write_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("csv: cannot open for write: " + path);
  out << body;
  out.flush();
  if (!out) throw std::runtime_error("csv: write failed: " + path);
}

}  // namespace

void write_trace_csv(const std::vector<RegretTrace>& traces,
                     const std::string& path) {
  if (traces.empty())
    throw std::invalid_argument("csv: no traces to write for " + path);
  const int dim = traces.front().dim;
  std::string body = trace_csv_header(dim);
  body += '\n';
  for (const RegretTrace& trace : traces) {
    if (trace.dim != dim)
      throw std::invalid_argument("csv: traces mix dimensions in " + path);
    for (const RegretRecord& rec : trace.records) {
      if (rec.x.size() != dim)
        throw std::invalid_argument("csv: record dimension mismatch in " + path);
      std::string row = std::to_string(trace.trial_index);
      row += ',';
      row += std::to_string(rec.t);
      for (int i = 0; i < dim; ++i) {
        row += ',';
        row += format_double(rec.x(i));
      }
      for (double v : {rec.y, rec.f, rec.r, rec.cum_r}) {
        row += ',';
        row += format_double(v);
      }
      row += ',';
      if (!rec.is_design) {
        row += format_double(rec.xi_plus);
        row += ',';
        row += format_double(rec.sigma_xt);
        row += ',';
        row += format_double(rec.ei_xt);
        row += ',';
        row += rec.ey_flag ? '1' : '0';
      } else {
        row += ",,,";
      }
      row += ',';
      if (!rec.is_design && trace.rule == IncumbentRule::Boi)
        row += format_double(rec.simple_regret);
      row += ',';
      if (!rec.is_design) row += format_double(rec.info_gain);
      body += row;
      body += '\n';
    }
  }
  write_file(path, body);
}

void write_summary_csv(const SummaryCurve& curve, const std::string& path) {
  const std::size_t n = curve.t.size();
  if (curve.mean_rt_over_t.size() != n || curve.ci_low.size() != n ||
      curve.ci_high.size() != n)
    throw std::invalid_argument("csv: summary columns differ in length");
  std::string body = "t,mean_Rt_over_t,ci_low,ci_high\n";
  for (std::size_t i = 0; i < n; ++i) {
    body += std::to_string(curve.t[i]);
    for (double v : {curve.mean_rt_over_t[i], curve.ci_low[i], curve.ci_high[i]}) {
      body += ',';
      body += format_double(v);
    }
    body += '\n';
  }
  write_file(path, body);
}

SummaryCurve read_summary_csv(const std::string& path) {
  const CsvTable table = read_csv(path);
  const int ct = table.column("t");
  const int cm = table.column("mean_Rt_over_t");
  const int cl = table.column("ci_low");
  const int ch = table.column("ci_high");
  SummaryCurve curve;
  std::string stem = std::filesystem::path(path).stem().string();
  if (constexpr std::string_view prefix = "summary_"; stem.starts_with(prefix))
    stem = stem.substr(prefix.size());
  curve.label = stem;
  for (const auto& row : table.rows) {
    curve.t.push_back(
        static_cast<int>(parse_double_cell(row[ct], path)));
    curve.mean_rt_over_t.push_back(parse_double_cell(row[cm], path));
    curve.ci_low.push_back(parse_double_cell(row[cl], path));
    curve.ci_high.push_back(parse_double_cell(row[ch], path));
  }
  return curve;
}

int CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return static_cast<int>(i);
  throw std::invalid_argument("csv: missing column " + name);
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("csv: cannot open for read: " + path);
  CsvTable table;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
      const auto comma = line.find(',', start);
      if (comma == std::string::npos) {
        cells.push_back(line.substr(start));
        break;
      }
      cells.push_back(line.substr(start, comma - start));
      start = comma + 1;
    }
    if (first) {
      table.header = std::move(cells);
      first = false;
    } else {
      if (cells.size() != table.header.size())
        throw std::runtime_error("csv: ragged row in " + path);
      table.rows.push_back(std::move(cells));
    }
  }
  if (first) throw std::runtime_error("csv: empty file " + path);
  return table;
}

}  // namespace eiregret::bench
