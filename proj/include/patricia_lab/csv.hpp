#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "patricia_lab/experiment.hpp"

namespace patricia_lab {

inline constexpr std::string_view kTrialCsvHeader =
    "dist,params,n,trial,seed,height,distinct_first_one,prefix_match_count,max_split_index,elapsed_ms";
inline constexpr std::string_view kSummaryCsvHeader =
    "dist,params,n,trials,mean_height,std_height,h_over_n,h_over_log2n,h_over_floor,mean_distinct";

/// Per-trial rows. elapsed_ms is 0 unless config.record_timing is set.
void write_trials_csv(std::ostream& out, const ExperimentConfig& config, const GridResult& result);
/// One row per n. h_over_floor is empty for laws without a proven floor.
void write_summary_csv(std::ostream& out, const GridResult& result);

std::string trials_csv(const ExperimentConfig& config, const GridResult& result);
std::string summary_csv(const GridResult& result);

/// Minimal RFC 4180 reader: a header row plus data rows, quoted fields allowed.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Index of `name` in the header; throws ErrorCode::parse if absent.
  std::size_t column(std::string_view name) const;
};

CsvTable parse_csv(std::string_view text);
CsvTable read_csv_file(const std::string& path);

}  // namespace patricia_lab
