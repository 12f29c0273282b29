#include "dsi/csv.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "dsi/errors.hpp"

namespace dsi {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary); // binary keeps LF endings everywhere
  if (!out) throw io_error("cannot open for writing: " + path);
  return out;
}

bool looks_numeric(const std::string& field) {
  for (char c : field) {
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '+' || c == '-' || c == '.' ||
        c == 'e' || c == 'E' || c == 'n' || c == 'a' || c == 'i' || c == 'f')
      continue;
    return false;
  }
  return !field.empty();
}

} // namespace

void write_series_csv(const std::string& path, const TimeSeries& x) {
  x.validate();
  std::ofstream out = open_out(path);
  out << "time,value\n";
  for (std::size_t i = 0; i < x.size(); ++i)
    out << format_double(x.times[i]) << ',' << format_double(x.values[i]) << '\n';
  if (!out) throw io_error("write failed: " + path);
}

TimeSeries read_series_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open for reading: " + path);
  TimeSeries x;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      throw io_error(path + ":" + std::to_string(line_no) + ": expected time,value");
    const std::string a = line.substr(0, comma);
    const std::string b = line.substr(comma + 1);
    if (line_no == 1 && !looks_numeric(a)) continue; // header
    try {
      x.times.push_back(std::stod(a));
      x.values.push_back(std::stod(b));
    } catch (const std::exception&) {
      throw io_error(path + ":" + std::to_string(line_no) + ": malformed number");
    }
  }
  x.validate();
  return x;
}

void write_columns_csv(const std::string& path, const std::vector<std::string>& header,
                       const std::vector<std::vector<double>>& columns) {
  if (header.size() != columns.size())
    throw std::invalid_argument("write_columns_csv: header/column count mismatch");
  std::ofstream out = open_out(path);
  for (std::size_t i = 0; i < header.size(); ++i)
    out << header[i] << (i + 1 < header.size() ? ',' : '\n');
  std::size_t rows = 0;
  for (const auto& c : columns) rows = std::max(rows, c.size());
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < columns.size(); ++c) {
      if (r < columns[c].size()) out << format_double(columns[c][r]);
      out << (c + 1 < columns.size() ? ',' : '\n');
    }
  }
  if (!out) throw io_error("write failed: " + path);
}

void write_bench_csv(const std::string& path, const std::vector<BenchRow>& rows) {
  std::ofstream out = open_out(path);
  out << "true_H,method,N,repetitions,mean_estimate,bias,variance,mse\n";
  for (const auto& r : rows) {
    out << format_double(r.true_hurst) << ',' << r.method << ',' << r.path_length << ','
        << r.repetitions << ',' << format_double(r.mean_estimate) << ','
        << format_double(r.bias) << ',' << format_double(r.variance) << ','
        << format_double(r.mse) << '\n';
  }
  if (!out) throw io_error("write failed: " + path);
}

} // namespace dsi
