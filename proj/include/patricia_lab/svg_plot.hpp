#pragma once

#include <string>
#include <string_view>

#include "patricia_lab/csv.hpp"

namespace patricia_lab {

/// Static line chart of y_column against x_column, one polyline per
/// (dist, params) group when those columns exist. Needs >= 2 rows and numeric
/// cells in both columns. Output bytes depend only on the input.
std::string render_svg(const CsvTable& table, std::string_view x_column, std::string_view y_column);

/// Reads a summary CSV and writes the chart to out_path.
void emit_svg(const std::string& csv_path, std::string_view x_column, std::string_view y_column,
              const std::string& out_path);

}  // namespace patricia_lab
