#pragma once

#include <string>
#include <vector>

#include "dsi/bench.hpp"
#include "dsi/series.hpp"

namespace dsi {

/// Shortest exact decimal form of a double (17 significant digits), so that
/// written files round-trip bit-exactly.
std::string format_double(double v);

/// Writes "time,value" rows (header, comma separated, LF line endings).
void write_series_csv(const std::string& path, const TimeSeries& x);

/// Reads a two-column time,value CSV written by write_series_csv (a header
/// row is detected and skipped).
TimeSeries read_series_csv(const std::string& path);

/// Generic single-table writer: one header, aligned columns; shorter columns
/// leave trailing cells empty.
void write_columns_csv(const std::string& path, const std::vector<std::string>& header,
                       const std::vector<std::vector<double>>& columns);

void write_bench_csv(const std::string& path, const std::vector<BenchRow>& rows);

} // namespace dsi
