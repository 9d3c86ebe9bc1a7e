#include "patricia_lab/svg_plot.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "patricia_lab/error.hpp"

namespace patricia_lab {

namespace {

constexpr double kWidth = 720, kHeight = 440;
constexpr double kLeft = 80, kRight = 200, kTop = 40, kBottom = 60;
constexpr std::array<const char*, 8> kPalette = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                                 "#9467bd", "#8c564b", "#e377c2", "#17becf"};

double parse_cell(const std::string& cell, std::string_view column, std::size_t row) {
  double v = 0;
  const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (cell.empty() || res.ec != std::errc() || res.ptr != cell.data() + cell.size() || !std::isfinite(v)) {
    fail(ErrorCode::parse, "non-numeric cell \"" + cell + "\" in column " + std::string(column) + ", row " +
                               std::to_string(row + 2));
  }
  return v;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string render_svg(const CsvTable& table, std::string_view x_column, std::string_view y_column) {
  const std::size_t xi = table.column(x_column);
  const std::size_t yi = table.column(y_column);
  if (table.rows.size() < 2) fail(ErrorCode::invalid_argument, "plot needs at least 2 data rows");
  const auto has = [&](std::string_view name) {
    return std::find(table.header.begin(), table.header.end(), name) != table.header.end();
  };
  const bool grouped = has("dist") && has("params");

  // Groups keep first-appearance order.
  std::vector<std::string> order;
  std::map<std::string, std::vector<std::pair<double, double>>> series;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    const std::string key = grouped ? row[table.column("dist")] + " " + row[table.column("params")] : std::string(y_column);
    if (!series.count(key)) order.push_back(key);
    series[key].emplace_back(parse_cell(row[xi], x_column, r), parse_cell(row[yi], y_column, r));
  }

  double xmin = INFINITY, xmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY;
  for (auto& [_, pts] : series) {
    std::stable_sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto [x, y] : pts) {
      xmin = std::min(xmin, x), xmax = std::max(xmax, x);
      ymin = std::min(ymin, y), ymax = std::max(ymax, y);
    }
  }
  if (xmax == xmin) xmin -= 0.5, xmax += 0.5;
  if (ymax == ymin) ymin -= 0.5, ymax += 0.5;
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  auto sx = [&](double x) { return kLeft + (x - xmin) / (xmax - xmin) * plot_w; };
  auto sy = [&](double y) { return kTop + plot_h - (y - ymin) / (ymax - ymin) * plot_h; };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << num(kLeft + plot_w / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
      << escape(y_column) << " vs " << escape(x_column) << "</text>\n";
  // Axes.
  svg << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(kTop + plot_h) << "\" x2=\"" << num(kLeft + plot_w)
      << "\" y2=\"" << num(kTop + plot_h) << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(kTop) << "\" x2=\"" << num(kLeft) << "\" y2=\""
      << num(kTop + plot_h) << "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double fx = xmin + (xmax - xmin) * i / 4.0;
    const double fy = ymin + (ymax - ymin) * i / 4.0;
    svg << "<line x1=\"" << num(sx(fx)) << "\" y1=\"" << num(kTop + plot_h) << "\" x2=\"" << num(sx(fx)) << "\" y2=\""
        << num(kTop + plot_h + 5) << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << num(sx(fx)) << "\" y=\"" << num(kTop + plot_h + 18) << "\" text-anchor=\"middle\">"
        << tick_label(fx) << "</text>\n";
    svg << "<line x1=\"" << num(kLeft - 5) << "\" y1=\"" << num(sy(fy)) << "\" x2=\"" << num(kLeft) << "\" y2=\""
        << num(sy(fy)) << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << num(kLeft - 8) << "\" y=\"" << num(sy(fy) + 4) << "\" text-anchor=\"end\">"
        << tick_label(fy) << "</text>\n";
  }
  svg << "<text x=\"" << num(kLeft + plot_w / 2) << "\" y=\"" << num(kHeight - 15) << "\" text-anchor=\"middle\">"
      << escape(x_column) << "</text>\n";
  svg << "<text x=\"18\" y=\"" << num(kTop + plot_h / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
      << num(kTop + plot_h / 2) << ")\">" << escape(y_column) << "</text>\n";

  for (std::size_t g = 0; g < order.size(); ++g) {
    const char* color = kPalette[g % kPalette.size()];
    svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
    const auto& pts = series[order[g]];
    for (std::size_t i = 0; i < pts.size(); ++i) svg << (i ? " " : "") << num(sx(pts[i].first)) << ',' << num(sy(pts[i].second));
    svg << "\"/>\n";
    const double ly = kTop + 10 + 18.0 * static_cast<double>(g);
    svg << "<line x1=\"" << num(kLeft + plot_w + 15) << "\" y1=\"" << num(ly) << "\" x2=\"" << num(kLeft + plot_w + 35)
        << "\" y2=\"" << num(ly) << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    svg << "<text x=\"" << num(kLeft + plot_w + 40) << "\" y=\"" << num(ly + 4) << "\">" << escape(order[g]) << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

void emit_svg(const std::string& csv_path, std::string_view x_column, std::string_view y_column,
              const std::string& out_path) {
  const std::string svg = render_svg(read_csv_file(csv_path), x_column, y_column);
  std::ofstream out(out_path, std::ios::binary);
  if (!out) fail(ErrorCode::io, "cannot write " + out_path);
  out << svg;
  if (!out) fail(ErrorCode::io, "write failed for " + out_path);
}

}  // namespace patricia_lab
