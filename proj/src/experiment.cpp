#include "patricia_lab/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <thread>

#include "patricia_lab/alpha.hpp"
#include "patricia_lab/bounds.hpp"
#include "patricia_lab/error.hpp"
#include "patricia_lab/patricia_tree.hpp"

namespace patricia_lab {

void validate_config(const ExperimentConfig& config) {
  require(!config.n_grid.empty(), "n_grid is empty");
  require(config.n_grid.front() >= 1, "n_grid entries must be positive");
  require(std::is_sorted(config.n_grid.begin(), config.n_grid.end()), "n_grid must be ascending");
  require(config.n_grid.back() <= 0xfffffffeULL, "n_grid entries must fit 32-bit string ids");
  require(config.trials >= 1, "trials must be >= 1");
  require(config.max_depth >= 1, "max_depth must be >= 1");
}

bool same_outcome(const TrialRecord& a, const TrialRecord& b) {
  return a.n == b.n && a.trial_index == b.trial_index && a.height == b.height &&
         a.distinct_first_one == b.distinct_first_one && a.prefix_match_count == b.prefix_match_count &&
         a.max_split_index == b.max_split_index;
}

std::uint64_t string_key(std::uint64_t seed, std::uint64_t n, std::uint64_t trial, std::uint64_t index) {
  return mix_key({seed, n, trial, index});
}

std::vector<LazyBitString> sample_trial_strings(const ExperimentConfig& config, std::uint64_t n,
                                                std::uint32_t trial_index) {
  std::vector<LazyBitString> strings;
  strings.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    strings.push_back(LazyBitString::sample(config.spec, string_key(config.seed, n, trial_index, i),
                                            static_cast<std::uint32_t>(i), config.max_depth));
  }
  return strings;
}

TrialRecord run_trial(const ExperimentConfig& config, std::uint64_t n, std::uint32_t trial_index) {
  require(n >= 1, "trial needs n >= 1");
  const auto start = std::chrono::steady_clock::now();
  TrialRecord rec;
  rec.n = n;
  rec.trial_index = trial_index;
  try {
    const auto strings = sample_trial_strings(config, n, trial_index);
    const PatriciaTree tree = build_patricia(strings);
    rec.height = tree.height();
    rec.max_split_index = tree.max_split_index();
    rec.distinct_first_one = distinct_first_one_count(strings);
    if (const MixtureLaw* m = config.spec.mixing()) {
      const std::uint64_t beta = beta_of(m->alpha, n);
      rec.prefix_match_count = static_cast<std::uint64_t>(
          std::count_if(strings.begin(), strings.end(), [beta](const LazyBitString& s) { return s.first_one_index() == beta; }));
    }
  } catch (const Error& e) {
    fail(e.code(), "trial (n=" + std::to_string(n) + ", trial=" + std::to_string(trial_index) + "): " + e.what());
  }
  if (config.record_timing) {
    rec.elapsed = std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - start);
  }
  return rec;
}

unsigned resolve_threads(unsigned requested) {
  unsigned threads = requested != 0 ? requested : std::max(1U, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("PATRICIA_LAB_THREADS")) {
    char* end = nullptr;
    const unsigned long cap = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && cap >= 1) threads = std::min<unsigned>(threads, static_cast<unsigned>(cap));
  }
  return std::max(1U, threads);
}

GridResult run_grid(const ExperimentConfig& config) {
  validate_config(config);
  struct Task {
    std::uint64_t n;
    std::uint32_t trial;
  };
  std::vector<Task> tasks;
  for (std::uint64_t n : config.n_grid) {
    for (std::uint32_t t = 0; t < config.trials; ++t) tasks.push_back({n, t});
  }

  std::vector<TrialRecord> records(tasks.size());
  std::vector<std::exception_ptr> errors(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      try {
        records[i] = run_trial(config, tasks[i].n, tasks[i].trial);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };

  const auto threads = static_cast<unsigned>(std::min<std::size_t>(resolve_threads(config.threads), tasks.size()));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  GridResult out;
  out.summary = summarize(config.spec, records);
  out.records = std::move(records);
  return out;
}

std::optional<double> height_floor(const DistributionSpec& spec, std::uint64_t n) {
  const MixtureLaw* m = spec.mixing();
  if (!m) return std::nullopt;
  return bounds::mixture_height_floor(n, m->alpha.value(n));
}

Summary summarize(const DistributionSpec& spec, std::span<const TrialRecord> records) {
  Summary summary{spec.name(), spec.params_string(), {}};
  std::size_t i = 0;
  while (i < records.size()) {
    std::size_t j = i;
    while (j < records.size() && records[j].n == records[i].n) ++j;
    const auto group = records.subspan(i, j - i);
    const std::uint64_t n = records[i].n;
    const auto count = static_cast<double>(group.size());

    SummaryRow row;
    row.n = n;
    row.trials = static_cast<std::uint32_t>(group.size());
    std::vector<std::uint64_t> heights;
    heights.reserve(group.size());
    double sum = 0, distinct = 0, matches = 0;
    for (const auto& r : group) {
      heights.push_back(r.height);
      sum += static_cast<double>(r.height);
      distinct += static_cast<double>(r.distinct_first_one);
      matches += static_cast<double>(r.prefix_match_count);
    }
    row.mean_height = sum / count;
    double sq = 0;
    for (auto h : heights) sq += (static_cast<double>(h) - row.mean_height) * (static_cast<double>(h) - row.mean_height);
    row.std_height = group.size() > 1 ? std::sqrt(sq / (count - 1)) : 0.0;
    row.min_height = *std::min_element(heights.begin(), heights.end());
    row.max_height = *std::max_element(heights.begin(), heights.end());
    row.mean_ratio_h_over_n = row.mean_height / static_cast<double>(n);
    row.mean_ratio_h_over_log2n = n > 1 ? row.mean_height / std::log2(static_cast<double>(n)) : 0.0;
    if (auto floor = height_floor(spec, n)) row.mean_ratio_h_over_floor = row.mean_height / *floor;
    row.mean_distinct = distinct / count;
    row.mean_prefix_matches = matches / count;

    const double step = std::ceil(std::sqrt(static_cast<double>(n)));
    for (double mult : {1.0, 2.0, 4.0}) {
      const double t = mult * step;
      const double threshold = row.mean_height - t;
      row.tails.push_back({t, threshold, empirical_tail(heights, threshold), bounds::devroye_tail(n, t)});
    }
    summary.rows.push_back(std::move(row));
    i = j;
  }
  return summary;
}

std::size_t count_prefix_matches(std::span<const LazyBitString> strings, std::string_view v) {
  require(!v.empty(), "prefix must be nonempty");
  require(v.find_first_not_of("01") == std::string_view::npos, "prefix must consist of '0' and '1'");
  std::size_t count = 0;
  for (const auto& s : strings) {
    bool match = true;
    for (std::size_t j = 0; j < v.size() && match; ++j) match = s.bit_at(j + 1) == (v[j] == '1');
    count += match;
  }
  return count;
}

double empirical_tail(std::span<const std::uint64_t> heights, double threshold) {
  require(!heights.empty(), "empirical_tail needs at least one height");
  const auto hits = std::count_if(heights.begin(), heights.end(), [threshold](std::uint64_t h) { return static_cast<double>(h) <= threshold; });
  return static_cast<double>(hits) / static_cast<double>(heights.size());
}

}  // namespace patricia_lab
