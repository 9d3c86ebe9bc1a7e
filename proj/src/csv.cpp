#include "patricia_lab/csv.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include "patricia_lab/error.hpp"
#include "patricia_lab/format.hpp"

namespace patricia_lab {

namespace {

std::string quoted(std::string_view field) {
  if (field.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

}  // namespace

void write_trials_csv(std::ostream& out, const ExperimentConfig& config, const GridResult& result) {
  const std::string prefix = quoted(config.spec.name()) + ',' + quoted(config.spec.params_string()) + ',';
  out << kTrialCsvHeader << '\n';
  for (const auto& r : result.records) {
    const double ms = std::chrono::duration<double, std::milli>(r.elapsed).count();
    out << prefix << r.n << ',' << r.trial_index << ',' << config.seed << ',' << r.height << ','
        << r.distinct_first_one << ',' << r.prefix_match_count << ',' << r.max_split_index << ','
        << format_double(ms) << '\n';
  }
}

void write_summary_csv(std::ostream& out, const GridResult& result) {
  const Summary& s = result.summary;
  const std::string prefix = quoted(s.dist) + ',' + quoted(s.params) + ',';
  out << kSummaryCsvHeader << '\n';
  for (const auto& row : s.rows) {
    out << prefix << row.n << ',' << row.trials << ',' << format_double(row.mean_height) << ','
        << format_double(row.std_height) << ',' << format_double(row.mean_ratio_h_over_n) << ','
        << format_double(row.mean_ratio_h_over_log2n) << ','
        << (row.mean_ratio_h_over_floor ? format_double(*row.mean_ratio_h_over_floor) : std::string()) << ','
        << format_double(row.mean_distinct) << '\n';
  }
}

std::string trials_csv(const ExperimentConfig& config, const GridResult& result) {
  std::ostringstream os;
  write_trials_csv(os, config, result);
  return os.str();
}

std::string summary_csv(const GridResult& result) {
  std::ostringstream os;
  write_summary_csv(os, result);
  return os.str();
}

std::size_t CsvTable::column(std::string_view name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  fail(ErrorCode::parse, "CSV has no column \"" + std::string(name) + "\"");
}

CsvTable parse_csv(std::string_view text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool in_quotes = false;
  bool field_started = false;
  auto end_field = [&] {
    record.push_back(std::move(field));
    field.clear();
    field_started = false;
  };
  auto end_record = [&] {
    end_field();
    if (!(record.size() == 1 && record[0].empty())) records.push_back(std::move(record));
    record.clear();
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    if (c == '"' && !field_started) {
      in_quotes = true;
      field_started = true;
    } else if (c == ',') {
      end_field();
    } else if (c == '\n') {
      end_record();
    } else if (c != '\r') {
      field += c;
      field_started = true;
    }
  }
  if (in_quotes) fail(ErrorCode::parse, "CSV ends inside a quoted field");
  if (field_started || !record.empty()) end_record();
  if (records.empty()) fail(ErrorCode::parse, "CSV is empty");

  CsvTable table;
  table.header = std::move(records.front());
  for (std::size_t r = 1; r < records.size(); ++r) {
    if (records[r].size() != table.header.size()) {
      fail(ErrorCode::parse, "CSV row " + std::to_string(r + 1) + " has " + std::to_string(records[r].size()) +
                                 " fields, header has " + std::to_string(table.header.size()));
    }
    table.rows.push_back(std::move(records[r]));
  }
  return table;
}

CsvTable read_csv_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::io, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_csv(buf.str());
}

}  // namespace patricia_lab
