#include "hyperdet/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <optional>
#include <sstream>

#include "hyperdet/error.hpp"

namespace hyperdet {

namespace {

std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream row(line);
  while (std::getline(row, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::optional<double> as_number(const std::string& s) {
  if (s.empty()) return std::nullopt;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size()) return std::nullopt;
  return v;
}

// Orders axis labels numerically when every label parses, else lexically.
std::vector<std::string> ordered_labels(std::vector<std::string> labels) {
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  const bool numeric =
      std::all_of(labels.begin(), labels.end(), [](const std::string& s) { return as_number(s); });
  if (numeric) {
    std::stable_sort(labels.begin(), labels.end(), [](const std::string& a, const std::string& b) {
      return *as_number(a) < *as_number(b);
    });
  }
  return labels;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string hex_color(double r, double g, double b) {
  char buf[8];
  auto c = [](double v) { return static_cast<int>(std::lround(std::clamp(v, 0.0, 1.0) * 255)); };
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", c(r), c(g), c(b));
  return buf;
}

constexpr const char* kRed = "#d73027";
constexpr const char* kGreen = "#1a9850";
constexpr const char* kGrey = "#bdbdbd";
constexpr const char* kBlack = "#252525";

std::string verdict_color(const std::string& verdict) {
  if (verdict == "Undetectable") return kRed;
  if (verdict.rfind("Detectable", 0) == 0) return kGreen;
  if (verdict == "Indeterminate") return kGrey;
  return kBlack;
}

// Green (0) to red (1).
std::string ramp_color(double t) {
  t = std::clamp(t, 0.0, 1.0);
  const double r0 = 0x1a / 255.0, g0 = 0x98 / 255.0, b0 = 0x50 / 255.0;
  const double r1 = 0xd7 / 255.0, g1 = 0x30 / 255.0, b1 = 0x27 / 255.0;
  return hex_color(r0 + (r1 - r0) * t, g0 + (g1 - g0) * t, b0 + (b1 - b0) * t);
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

}  // namespace

std::size_t CsvTable::column(const std::string& name) const {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) throw ConfigError("CSV has no column '" + name + "'");
  return static_cast<std::size_t>(it - header.begin());
}

CsvTable read_csv(std::istream& in) {
  CsvTable table;
  std::string line;
  if (!std::getline(in, line)) throw ParseError("CSV is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  table.header = split_row(line);
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto row = split_row(line);
    if (row.size() != table.header.size()) {
      throw ParseError("CSV line " + std::to_string(line_no) + " has " +
                       std::to_string(row.size()) + " fields, header has " +
                       std::to_string(table.header.size()));
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::string render_heatmap_svg(const CsvTable& table, const std::string& x_column,
                               const std::string& y_column, const std::string& value_column) {
  const std::size_t xi = table.column(x_column);
  const std::size_t yi = table.column(y_column);
  const std::size_t vi = table.column(value_column);
  if (table.rows.empty()) throw ConfigError("CSV has no data rows");

  std::vector<std::string> xs, ys;
  for (const auto& row : table.rows) {
    xs.push_back(row[xi]);
    ys.push_back(row[yi]);
  }
  xs = ordered_labels(xs);
  ys = ordered_labels(ys);

  std::map<std::pair<std::string, std::string>, std::string> cells;
  for (const auto& row : table.rows) {
    if (!cells.emplace(std::make_pair(row[xi], row[yi]), row[vi]).second) {
      throw ConfigError("CSV has more than one row for cell (" + x_column + "=" + row[xi] + ", " +
                        y_column + "=" + row[yi] + ")");
    }
  }
  std::string missing;
  for (const auto& x : xs) {
    for (const auto& y : ys) {
      if (!cells.count({x, y})) missing += " (" + x_column + "=" + x + ", " + y_column + "=" + y + ")";
    }
  }
  if (!missing.empty()) throw ConfigError("ragged grid, missing cells:" + missing);

  const bool categorical = value_column == "verdict";
  double lo = 0.0, hi = 0.0;
  if (!categorical) {
    bool first = true;
    for (const auto& [key, text] : cells) {
      const auto v = as_number(text);
      if (!v) {
        if (text.empty()) continue;
        throw ConfigError("column '" + value_column + "' has non-numeric value '" + text + "'");
      }
      if (first || *v < lo) lo = *v;
      if (first || *v > hi) hi = *v;
      first = false;
    }
  }

  const int cell_w = 80, cell_h = 40, left = 90, top = 50, bottom = 70, legend_h = 30;
  const int width = left + cell_w * static_cast<int>(xs.size()) + 30;
  const int height = top + cell_h * static_cast<int>(ys.size()) + bottom + legend_h;

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << ' ' << height << "\" font-family=\"sans-serif\">\n";
  svg << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
  svg << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">"
      << escape(value_column) << " over (" << escape(x_column) << ", " << escape(y_column)
      << ")</text>\n";

  for (std::size_t row = 0; row < ys.size(); ++row) {
    // Largest y at the top.
    const std::string& y = ys[ys.size() - 1 - row];
    const int py = top + cell_h * static_cast<int>(row);
    for (std::size_t col = 0; col < xs.size(); ++col) {
      const std::string& x = xs[col];
      const std::string& text = cells.at({x, y});
      const int px = left + cell_w * static_cast<int>(col);
      std::string fill = kBlack;
      if (categorical) {
        fill = verdict_color(text);
      } else if (const auto v = as_number(text)) {
        fill = ramp_color(hi > lo ? (*v - lo) / (hi - lo) : 0.5);
      }
      svg << "<rect x=\"" << px << "\" y=\"" << py << "\" width=\"" << cell_w << "\" height=\""
          << cell_h << "\" fill=\"" << fill << "\" stroke=\"white\"><title>" << escape(x_column)
          << '=' << escape(x) << ' ' << escape(y_column) << '=' << escape(y) << ": "
          << escape(text) << "</title></rect>\n";
      if (!categorical && as_number(text)) {
        svg << "<text x=\"" << px + cell_w / 2 << "\" y=\"" << py + cell_h / 2 + 4
            << "\" text-anchor=\"middle\" font-size=\"11\" fill=\"white\">" << fmt(*as_number(text))
            << "</text>\n";
      }
    }
    svg << "<text x=\"" << left - 6 << "\" y=\"" << py + cell_h / 2 + 4
        << "\" text-anchor=\"end\" font-size=\"11\">" << escape(y) << "</text>\n";
  }
  const int axis_y = top + cell_h * static_cast<int>(ys.size());
  for (std::size_t col = 0; col < xs.size(); ++col) {
    svg << "<text x=\"" << left + cell_w * static_cast<int>(col) + cell_w / 2 << "\" y=\""
        << axis_y + 16 << "\" text-anchor=\"middle\" font-size=\"11\">" << escape(xs[col])
        << "</text>\n";
  }
  svg << "<text x=\"" << left + cell_w * static_cast<int>(xs.size()) / 2 << "\" y=\"" << axis_y + 36
      << "\" text-anchor=\"middle\" font-size=\"13\">" << escape(x_column) << "</text>\n";
  svg << "<text x=\"16\" y=\"" << top + cell_h * static_cast<int>(ys.size()) / 2
      << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 16 "
      << top + cell_h * static_cast<int>(ys.size()) / 2 << ")\">" << escape(y_column)
      << "</text>\n";

  const int legend_y = axis_y + 50;
  if (categorical) {
    svg << "<rect x=\"" << left << "\" y=\"" << legend_y << "\" width=\"14\" height=\"14\" fill=\""
        << kRed << "\"/><text x=\"" << left + 18 << "\" y=\"" << legend_y + 12
        << "\" font-size=\"11\">undetectable</text>\n";
    svg << "<rect x=\"" << left + 110 << "\" y=\"" << legend_y
        << "\" width=\"14\" height=\"14\" fill=\"" << kGreen << "\"/><text x=\"" << left + 128
        << "\" y=\"" << legend_y + 12 << "\" font-size=\"11\">detectable</text>\n";
  } else {
    svg << "<rect x=\"" << left << "\" y=\"" << legend_y << "\" width=\"14\" height=\"14\" fill=\""
        << ramp_color(0.0) << "\"/><text x=\"" << left + 18 << "\" y=\"" << legend_y + 12
        << "\" font-size=\"11\">" << fmt(lo) << "</text>\n";
    svg << "<rect x=\"" << left + 110 << "\" y=\"" << legend_y
        << "\" width=\"14\" height=\"14\" fill=\"" << ramp_color(1.0) << "\"/><text x=\""
        << left + 128 << "\" y=\"" << legend_y + 12 << "\" font-size=\"11\">" << fmt(hi)
        << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace hyperdet
