#include "patricia_lab/patricia_lab.h"

#include <cmath>
#include <cstring>
#include <fstream>
#include <functional>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "patricia_lab/acceptance.hpp"
#include "patricia_lab/alpha.hpp"
#include "patricia_lab/bounds.hpp"
#include "patricia_lab/csv.hpp"
#include "patricia_lab/error.hpp"
#include "patricia_lab/experiment.hpp"
#include "patricia_lab/json_io.hpp"
#include "patricia_lab/patricia_tree.hpp"
#include "patricia_lab/prefix_probability.hpp"
#include "patricia_lab/svg_plot.hpp"
#include "patricia_lab/trie.hpp"

namespace pl = patricia_lab;

struct pl_dist {
  pl::DistributionSpec spec;
};

struct pl_tree {
  std::vector<pl::LazyBitString> strings;
  pl::PatriciaTree tree;
};

struct pl_experiment {
  pl::ExperimentConfig config;
};

struct pl_results {
  pl::ExperimentConfig config;
  pl::GridResult result;
};

namespace {

thread_local std::string last_error;

pl_status to_status(pl::ErrorCode code) {
  switch (code) {
    case pl::ErrorCode::invalid_argument: return PL_ERR_INVALID_ARGUMENT;
    case pl::ErrorCode::parse: return PL_ERR_PARSE;
    case pl::ErrorCode::depth_guard: return PL_ERR_DEPTH_GUARD;
    case pl::ErrorCode::duplicate_string: return PL_ERR_DUPLICATE_STRING;
    case pl::ErrorCode::stream_fault: return PL_ERR_STREAM_FAULT;
    case pl::ErrorCode::io: return PL_ERR_IO;
    case pl::ErrorCode::internal: return PL_ERR_INTERNAL;
  }
  return PL_ERR_INTERNAL;
}

template <class F>
pl_status guarded(F&& f) {
  try {
    f();
    return PL_OK;
  } catch (const pl::Error& e) {
    last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return PL_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return PL_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown error";
    return PL_ERR_INTERNAL;
  }
}

void require_ptr(const void* p, const char* what) {
  if (!p) pl::fail(pl::ErrorCode::invalid_argument, std::string(what) + " is NULL");
}

void copy_out(const std::string& s, char* buf, size_t cap, size_t* needed) {
  if (needed) *needed = s.size() + 1;
  if (!buf && cap == 0) return;
  require_ptr(buf, "buf");
  if (cap < s.size() + 1) pl::fail(pl::ErrorCode::invalid_argument, "buffer too small");
  std::memcpy(buf, s.c_str(), s.size() + 1);
}

pl::AlphaSpec parse_alpha(const char* text) {
  require_ptr(text, "alpha_json");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    pl::fail(pl::ErrorCode::parse, std::string("alpha: invalid JSON: ") + e.what());
  }
  return pl::alpha_from_json(j);
}

}  // namespace

extern "C" {

const char* pl_last_error(void) { return last_error.c_str(); }
const char* pl_version(void) { return PATRICIA_LAB_VERSION; }

pl_status pl_dist_from_json(const char* json, pl_dist** out) {
  return guarded([&] {
    require_ptr(json, "json");
    require_ptr(out, "out");
    *out = new pl_dist{pl::distribution_from_json_text(json)};
  });
}

void pl_dist_free(pl_dist* dist) { delete dist; }

pl_status pl_dist_to_json(const pl_dist* dist, char* buf, size_t cap, size_t* needed) {
  return guarded([&] {
    require_ptr(dist, "dist");
    copy_out(pl::to_json(dist->spec).dump(), buf, cap, needed);
  });
}

pl_status pl_prefix_probability(const pl_dist* dist, const char* bits, double* out) {
  return guarded([&] {
    require_ptr(dist, "dist");
    require_ptr(bits, "bits");
    require_ptr(out, "out");
    *out = pl::prefix_probability(dist->spec, bits);
  });
}

pl_status pl_prefix_frequency(const pl_dist* dist, const char* bits, uint64_t samples, uint64_t seed, double* out) {
  return guarded([&] {
    require_ptr(dist, "dist");
    require_ptr(bits, "bits");
    require_ptr(out, "out");
    *out = pl::prefix_frequency(dist->spec, bits, samples, seed);
  });
}

pl_status pl_max_prefix_probability(const pl_dist* dist, unsigned k, double* out) {
  return guarded([&] {
    require_ptr(dist, "dist");
    require_ptr(out, "out");
    *out = pl::max_prefix_probability(dist->spec, k);
  });
}

pl_status pl_alpha_beta(const char* alpha_json, uint64_t n, uint64_t* out) {
  return guarded([&] {
    require_ptr(out, "out");
    *out = pl::beta_of(parse_alpha(alpha_json), n);
  });
}

pl_status pl_alpha_a_of(const char* alpha_json, uint64_t k, uint64_t* out) {
  return guarded([&] {
    require_ptr(out, "out");
    *out = pl::a_of(parse_alpha(alpha_json), k);
  });
}

pl_status pl_bound_chernoff(uint64_t n, uint64_t k, double eps, double* out) {
  return guarded([&] {
    require_ptr(out, "out");
    *out = pl::bounds::chernoff_enk(n, k, eps);
  });
}

pl_status pl_bound_okamoto(uint64_t n, double alpha_n, double* out, int* in_regime) {
  return guarded([&] {
    require_ptr(out, "out");
    const auto b = pl::bounds::okamoto(n, alpha_n);
    *out = b.value;
    if (in_regime) *in_regime = b.in_regime;
  });
}

pl_status pl_bound_devroye(uint64_t n, double t, double* out) {
  return guarded([&] {
    require_ptr(out, "out");
    *out = pl::bounds::devroye_tail(n, t);
  });
}

pl_status pl_bound_distinct(uint64_t n, uint64_t support_root, double* out, int* in_regime) {
  return guarded([&] {
    require_ptr(out, "out");
    const auto b = pl::bounds::distinct_lower(n, support_root);
    *out = b.value;
    if (in_regime) *in_regime = b.in_regime;
  });
}

pl_status pl_bound_mixture_floor(uint64_t n, double alpha_n, double* out) {
  return guarded([&] {
    require_ptr(out, "out");
    *out = pl::bounds::mixture_height_floor(n, alpha_n);
  });
}

pl_status pl_tree_sample(const pl_dist* dist, uint32_t n, uint64_t seed, pl_tree** out) {
  return guarded([&] {
    require_ptr(dist, "dist");
    require_ptr(out, "out");
    pl::require(n >= 1 && n < pl::kNoNode, "n must be in [1, 2^32 - 1)");
    pl::ExperimentConfig config;
    config.spec = dist->spec;
    config.seed = seed;
    auto tree = std::make_unique<pl_tree>();
    tree->strings = pl::sample_trial_strings(config, n, 0);
    tree->tree = pl::build_patricia(tree->strings);
    *out = tree.release();
  });
}

pl_status pl_tree_from_prefixes(const char* const* heads, size_t count, uint64_t seed, pl_tree** out) {
  return guarded([&] {
    require_ptr(heads, "heads");
    require_ptr(out, "out");
    pl::require(count >= 1 && count < pl::kNoNode, "need at least one prefix");
    auto tree = std::make_unique<pl_tree>();
    for (size_t i = 0; i < count; ++i) {
      require_ptr(heads[i], "heads[i]");
      tree->strings.push_back(pl::LazyBitString::from_prefix(heads[i], pl::mix_key({seed, i}), static_cast<uint32_t>(i)));
    }
    tree->tree = pl::build_patricia(tree->strings);
    *out = tree.release();
  });
}

void pl_tree_free(pl_tree* tree) { delete tree; }

uint64_t pl_tree_height(const pl_tree* tree) { return tree ? tree->tree.height() : 0; }
uint64_t pl_tree_leaf_count(const pl_tree* tree) { return tree ? tree->tree.leaf_count() : 0; }
uint64_t pl_tree_internal_count(const pl_tree* tree) { return tree ? tree->tree.internal_count() : 0; }

uint64_t pl_tree_distinct_first_one(const pl_tree* tree) {
  if (!tree) return 0;
  try {
    return pl::distinct_first_one_count(tree->strings);
  } catch (const std::exception& e) {
    last_error = e.what();
    return 0;
  }
}

pl_status pl_tree_trie_height(const pl_tree* tree, uint64_t* out) {
  return guarded([&] {
    require_ptr(tree, "tree");
    require_ptr(out, "out");
    *out = pl::build_trie(tree->strings).height();
  });
}

pl_status pl_tree_validate(const pl_tree* tree, size_t* violations) {
  return guarded([&] {
    require_ptr(tree, "tree");
    require_ptr(violations, "violations");
    const auto v = pl::validate(tree->tree, tree->strings);
    *violations = v.size();
    if (!v.empty()) last_error = v.front();
  });
}

pl_status pl_tree_to_json(const pl_tree* tree, char* buf, size_t cap, size_t* needed) {
  return guarded([&] {
    require_ptr(tree, "tree");
    copy_out(pl::to_json(tree->tree).dump(), buf, cap, needed);
  });
}

pl_status pl_experiment_create(const pl_dist* dist, const uint64_t* n_grid, size_t n_grid_len, uint32_t trials,
                               uint64_t seed, pl_experiment** out) {
  return guarded([&] {
    require_ptr(dist, "dist");
    require_ptr(out, "out");
    pl::require(n_grid_len == 0 || n_grid != nullptr, "n_grid is NULL");
    auto exp = std::make_unique<pl_experiment>();
    exp->config.spec = dist->spec;
    exp->config.n_grid.assign(n_grid, n_grid + n_grid_len);
    exp->config.trials = trials;
    exp->config.seed = seed;
    pl::validate_config(exp->config);
    *out = exp.release();
  });
}

void pl_experiment_free(pl_experiment* exp) { delete exp; }

pl_status pl_experiment_set_threads(pl_experiment* exp, unsigned threads) {
  return guarded([&] {
    require_ptr(exp, "experiment");
    exp->config.threads = threads;
  });
}

pl_status pl_experiment_set_max_depth(pl_experiment* exp, uint64_t max_depth) {
  return guarded([&] {
    require_ptr(exp, "experiment");
    pl::require(max_depth >= 1, "max_depth must be >= 1");
    exp->config.max_depth = max_depth;
  });
}

pl_status pl_experiment_set_timing(pl_experiment* exp, int record_timing) {
  return guarded([&] {
    require_ptr(exp, "experiment");
    exp->config.record_timing = record_timing != 0;
  });
}

pl_status pl_experiment_run(const pl_experiment* exp, pl_results** out) {
  return guarded([&] {
    require_ptr(exp, "experiment");
    require_ptr(out, "out");
    auto results = std::make_unique<pl_results>();
    results->config = exp->config;
    results->result = pl::run_grid(exp->config);
    *out = results.release();
  });
}

void pl_results_free(pl_results* results) { delete results; }

size_t pl_results_trial_count(const pl_results* results) { return results ? results->result.records.size() : 0; }

pl_status pl_results_trial(const pl_results* results, size_t index, pl_trial_record* out) {
  return guarded([&] {
    require_ptr(results, "results");
    require_ptr(out, "out");
    pl::require(index < results->result.records.size(), "trial index out of range");
    const auto& r = results->result.records[index];
    *out = {r.n, r.trial_index, r.height, r.distinct_first_one, r.prefix_match_count, r.max_split_index,
            std::chrono::duration<double, std::milli>(r.elapsed).count()};
  });
}

size_t pl_results_summary_count(const pl_results* results) {
  return results ? results->result.summary.rows.size() : 0;
}

pl_status pl_results_summary(const pl_results* results, size_t index, pl_summary_row* out) {
  return guarded([&] {
    require_ptr(results, "results");
    require_ptr(out, "out");
    pl::require(index < results->result.summary.rows.size(), "summary index out of range");
    const auto& r = results->result.summary.rows[index];
    *out = {r.n,
            r.trials,
            r.mean_height,
            r.std_height,
            r.min_height,
            r.max_height,
            r.mean_ratio_h_over_n,
            r.mean_ratio_h_over_log2n,
            r.mean_ratio_h_over_floor.value_or(std::numeric_limits<double>::quiet_NaN()),
            r.mean_distinct,
            r.mean_prefix_matches};
  });
}

namespace {

void write_file(const char* path, const std::function<void(std::ostream&)>& writer) {
  require_ptr(path, "path");
  std::ofstream out(path, std::ios::binary);
  if (!out) pl::fail(pl::ErrorCode::io, std::string("cannot write ") + path);
  writer(out);
  out.flush();
  if (!out) pl::fail(pl::ErrorCode::io, std::string("write failed for ") + path);
}

}  // namespace

pl_status pl_results_write_trials_csv(const pl_results* results, const char* path) {
  return guarded([&] {
    require_ptr(results, "results");
    write_file(path, [&](std::ostream& os) { pl::write_trials_csv(os, results->config, results->result); });
  });
}

pl_status pl_results_write_summary_csv(const pl_results* results, const char* path) {
  return guarded([&] {
    require_ptr(results, "results");
    write_file(path, [&](std::ostream& os) { pl::write_summary_csv(os, results->result); });
  });
}

pl_status pl_plot_svg(const char* csv_path, const char* x_column, const char* y_column, const char* out_path) {
  return guarded([&] {
    require_ptr(csv_path, "csv_path");
    require_ptr(x_column, "x_column");
    require_ptr(y_column, "y_column");
    require_ptr(out_path, "out_path");
    pl::emit_svg(csv_path, x_column, y_column, out_path);
  });
}

pl_status pl_verify_run(const int* criteria, size_t count, unsigned threads, pl_criterion_callback callback,
                        void* user, int* all_passed) {
  return guarded([&] {
    pl::AcceptanceOptions options;
    options.threads = threads;
    if (criteria && count) options.only.assign(criteria, criteria + count);
    if (callback) {
      options.on_result = [&](const pl::CriterionResult& r) {
        callback(r.id, r.name.c_str(), r.passed ? 1 : 0, r.detail.c_str(), r.seconds, user);
      };
    }
    const auto results = pl::run_acceptance(options);
    bool ok = !results.empty();
    for (const auto& r : results) ok = ok && r.passed;
    if (all_passed) *all_passed = ok ? 1 : 0;
  });
}

}  // extern "C"
