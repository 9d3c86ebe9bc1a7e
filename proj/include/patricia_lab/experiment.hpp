#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "patricia_lab/bitstring.hpp"
#include "patricia_lab/distribution.hpp"

namespace patricia_lab {

struct ExperimentConfig {
  DistributionSpec spec = DistributionSpec::bernoulli(0.5);
  std::vector<std::uint64_t> n_grid;
  std::uint32_t trials = 1;
  std::uint64_t seed = 0;
  std::uint64_t max_depth = kDefaultMaxDepth;
  bool emit_per_trial = true;
  // Wall-clock timings differ between runs; CSVs carry elapsed_ms = 0 unless set.
  bool record_timing = false;
  // 0 picks the hardware concurrency. PATRICIA_LAB_THREADS caps either way.
  unsigned threads = 0;
};

/// Throws invalid_argument unless n_grid is nonempty, ascending and positive
/// and trials >= 1.
void validate_config(const ExperimentConfig& config);

struct TrialRecord {
  std::uint64_t n = 0;
  std::uint32_t trial_index = 0;
  std::uint64_t height = 0;
  std::uint64_t distinct_first_one = 0;
  // X_n for mixture and nu laws: strings whose first one sits at beta_n. 0 otherwise.
  std::uint64_t prefix_match_count = 0;
  // 0 for a single-leaf tree.
  std::uint64_t max_split_index = 0;
  std::chrono::nanoseconds elapsed{0};
};

/// Equality of everything except the wall-clock time.
bool same_outcome(const TrialRecord& a, const TrialRecord& b);

struct TailRow {
  double t;
  double threshold;  // mean height - t
  double empirical;  // fraction of heights <= threshold
  double devroye;    // exp(-t^2 / 2n)
};

struct SummaryRow {
  std::uint64_t n = 0;
  std::uint32_t trials = 0;
  double mean_height = 0;
  double std_height = 0;  // sample standard deviation, 0 for one trial
  std::uint64_t min_height = 0;
  std::uint64_t max_height = 0;
  double mean_ratio_h_over_n = 0;
  double mean_ratio_h_over_log2n = 0;  // 0 at n = 1
  std::optional<double> mean_ratio_h_over_floor;
  double mean_distinct = 0;
  double mean_prefix_matches = 0;
  std::vector<TailRow> tails;  // t in {s, 2s, 4s}, s = ceil(sqrt(n))
};

struct Summary {
  std::string dist;
  std::string params;
  std::vector<SummaryRow> rows;
};

struct GridResult {
  std::vector<TrialRecord> records;  // sorted by (n, trial_index)
  Summary summary;
};

/// Substream key of string `index` in trial `trial` at size n.
std::uint64_t string_key(std::uint64_t seed, std::uint64_t n, std::uint64_t trial, std::uint64_t index);

/// The n strings of one trial, with ids 0..n-1.
std::vector<LazyBitString> sample_trial_strings(const ExperimentConfig& config, std::uint64_t n,
                                                std::uint32_t trial_index);

TrialRecord run_trial(const ExperimentConfig& config, std::uint64_t n, std::uint32_t trial_index);

/// Runs every (n, trial) pair, possibly on several threads. Output does not
/// depend on the thread count. Trial faults are rethrown with (n, trial)
/// attribution; when several trials fail the first in canonical order wins.
GridResult run_grid(const ExperimentConfig& config);

Summary summarize(const DistributionSpec& spec, std::span<const TrialRecord> records);

/// Proven floor on the mean height for the mixture laws: n / alpha_n over the
/// sampled mixing sequence. nullopt for the other laws.
std::optional<double> height_floor(const DistributionSpec& spec, std::uint64_t n);

/// Number of strings whose first |v| bits equal v.
std::size_t count_prefix_matches(std::span<const LazyBitString> strings, std::string_view v);

/// Fraction of heights <= threshold.
double empirical_tail(std::span<const std::uint64_t> heights, double threshold);

/// Worker count after applying PATRICIA_LAB_THREADS.
unsigned resolve_threads(unsigned requested);

}  // namespace patricia_lab
