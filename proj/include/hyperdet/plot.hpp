#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hyperdet {

// Minimal comma-separated table: no quoting, first line is the header.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(const std::string& name) const;
};

CsvTable read_csv(std::istream& in);

// Heatmap over the (x, y) grid formed by two columns. The `verdict` column is
// drawn red for Undetectable and green for any Detectable* verdict; any other
// column is numeric and drawn on a green (low) to red (high) ramp. The grid
// must be complete and rectangular; otherwise a ConfigError lists the missing
// cells.
std::string render_heatmap_svg(const CsvTable& table, const std::string& x_column,
                               const std::string& y_column, const std::string& value_column);

}  // namespace hyperdet
