#include <doctest.h>

#include <cmath>
#include <cstdlib>

#include "patricia_lab/experiment.hpp"
#include "patricia_lab/patricia_tree.hpp"
#include "test_support.hpp"

using namespace patricia_lab;
using test_support::error_code_of;
using test_support::from_heads;

namespace {

ExperimentConfig config_for(const DistributionSpec& spec, std::vector<std::uint64_t> grid, std::uint32_t trials,
                            std::uint64_t seed = 42) {
  ExperimentConfig c;
  c.spec = spec;
  c.n_grid = std::move(grid);
  c.trials = trials;
  c.seed = seed;
  return c;
}

}  // namespace

TEST_CASE("config validation") {
  auto c = config_for(DistributionSpec::mu_n(10), {}, 1);
  CHECK(error_code_of([&] { validate_config(c); }) == ErrorCode::invalid_argument);
  c.n_grid = {10, 5};
  CHECK(error_code_of([&] { validate_config(c); }) == ErrorCode::invalid_argument);
  c.n_grid = {0};
  CHECK(error_code_of([&] { validate_config(c); }) == ErrorCode::invalid_argument);
  c.n_grid = {5};
  c.trials = 0;
  CHECK(error_code_of([&] { validate_config(c); }) == ErrorCode::invalid_argument);
  c.trials = 1;
  CHECK_NOTHROW(validate_config(c));
}

TEST_CASE("trial examples") {
  const auto one = run_trial(config_for(DistributionSpec::bernoulli(0.5), {1}, 1), 1, 0);
  CHECK(one.height == 0);
  CHECK(one.distinct_first_one == 1);
  CHECK(one.max_split_index == 0);

  // Search for a seed whose two mu_4 strings have distinct first-one indices.
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto cfg = config_for(DistributionSpec::mu_n(4), {2}, 1, seed);
    const auto strings = sample_trial_strings(cfg, 2, 0);
    if (strings[0].first_one_index() == strings[1].first_one_index()) continue;
    const auto r = run_trial(cfg, 2, 0);
    CHECK(r.height >= 1);
    CHECK(r.distinct_first_one == 2);
    break;
  }
}

TEST_CASE("trials are deterministic") {
  const auto cfg = config_for(DistributionSpec::mixture(AlphaSpec::power(0.5)), {300}, 1, 9);
  const auto a = run_trial(cfg, 300, 0);
  const auto b = run_trial(cfg, 300, 0);
  CHECK(same_outcome(a, b));
  const auto other = run_trial(cfg, 300, 1);
  CHECK_FALSE(same_outcome(a, other));
}

TEST_CASE("trial record matches a direct tree build") {
  const auto cfg = config_for(DistributionSpec::mu_n(30), {150}, 1, 3);
  const auto strings = sample_trial_strings(cfg, 150, 0);
  const auto tree = build_patricia(strings);
  const auto r = run_trial(cfg, 150, 0);
  CHECK(r.height == tree.height());
  CHECK(r.max_split_index == tree.max_split_index());
  CHECK(r.distinct_first_one == distinct_first_one_count(strings));
  CHECK(r.prefix_match_count == 0);
}

TEST_CASE("grid output does not depend on thread count") {
  auto cfg = config_for(DistributionSpec::nu(AlphaSpec::power(0.5)), {16, 64, 256}, 6, 1234);
  cfg.threads = 1;
  const auto single = run_grid(cfg);
  cfg.threads = 3;
  const auto multi = run_grid(cfg);
  REQUIRE(single.records.size() == 18);
  REQUIRE(multi.records.size() == 18);
  for (std::size_t i = 0; i < single.records.size(); ++i) CHECK(same_outcome(single.records[i], multi.records[i]));
  CHECK(single.records[0].n == 16);
  CHECK(single.records[17].n == 256);
  CHECK(single.records[17].trial_index == 5);
}

TEST_CASE("summary of n = 1") {
  const auto r = run_grid(config_for(DistributionSpec::mu_n(5), {1}, 3));
  REQUIRE(r.summary.rows.size() == 1);
  CHECK(r.summary.rows[0].mean_height == 0);
  CHECK(r.summary.rows[0].mean_ratio_h_over_log2n == 0);
  CHECK(r.summary.dist == "mu_n");
  CHECK(r.summary.params == "N=5");
}

TEST_CASE("summary statistics") {
  std::vector<TrialRecord> recs(4);
  const std::uint64_t heights[] = {3, 5, 7, 9};
  for (std::size_t i = 0; i < 4; ++i) {
    recs[i].n = 16;
    recs[i].trial_index = static_cast<std::uint32_t>(i);
    recs[i].height = heights[i];
    recs[i].distinct_first_one = 2;
  }
  const auto s = summarize(DistributionSpec::bernoulli(0.5), recs);
  REQUIRE(s.rows.size() == 1);
  const auto& row = s.rows[0];
  CHECK(row.mean_height == 6);
  CHECK(row.std_height == doctest::Approx(std::sqrt(20.0 / 3.0)));
  CHECK(row.min_height == 3);
  CHECK(row.max_height == 9);
  CHECK(row.mean_ratio_h_over_n == doctest::Approx(6.0 / 16));
  CHECK(row.mean_ratio_h_over_log2n == doctest::Approx(1.5));
  CHECK_FALSE(row.mean_ratio_h_over_floor.has_value());
  REQUIRE(row.tails.size() == 3);
  CHECK(row.tails[0].t == 4);
  CHECK(row.tails[0].threshold == 2);
  CHECK(row.tails[0].empirical == 0);
  CHECK(row.tails[0].devroye == doctest::Approx(std::exp(-0.5)));
}

TEST_CASE("mu_N(1000) at n = 500 sits near n - 2") {
  const auto r = run_grid(config_for(DistributionSpec::mu_n(1000), {500}, 40, 77));
  CHECK(r.summary.rows[0].mean_height >= 497);
  CHECK(r.summary.rows[0].max_height <= 499);
}

TEST_CASE("mixture X_n matches its binomial mean") {
  // alpha_4096 = 64, beta = 4, so X_n ~ Bin(n, P(G = 4)) = Bin(n, 1/16).
  auto cfg = config_for(DistributionSpec::mixture(AlphaSpec::power(0.5)), {4096}, 30, 5);
  const auto r = run_grid(cfg);
  const double mean = r.summary.rows[0].mean_prefix_matches;
  const double se = std::sqrt(4096.0 / 16 * 15 / 16 / 30);
  CHECK(std::abs(mean - 256) <= 4 * se);
}

TEST_CASE("height floor") {
  CHECK_FALSE(height_floor(DistributionSpec::mu_n(10), 100).has_value());
  CHECK(height_floor(DistributionSpec::mixture(AlphaSpec::power(0.5)), 4096) == doctest::Approx(64));
  CHECK(height_floor(DistributionSpec::nu(AlphaSpec::exp2_power(0.5)), 400) == doctest::Approx(20));
}

TEST_CASE("count_prefix_matches") {
  CHECK(count_prefix_matches(from_heads({"1", "1", "001"}), "1") == 2);
  CHECK(count_prefix_matches(from_heads({"0001", "0001", "01"}), "0001") == 2);
  CHECK(error_code_of([] { count_prefix_matches(from_heads({"1"}), "x"); }) == ErrorCode::invalid_argument);
}

TEST_CASE("empirical_tail") {
  const std::vector<std::uint64_t> fives(10, 5);
  CHECK(empirical_tail(fives, 4) == 0);
  CHECK(empirical_tail(fives, 5) == 1);
  const std::vector<std::uint64_t> mixed = {1, 2, 3, 4};
  CHECK(empirical_tail(mixed, 2.5) == 0.5);
}

TEST_CASE("thread override") {
  CHECK(resolve_threads(3) >= 1);
  setenv("PATRICIA_LAB_THREADS", "2", 1);
  CHECK(resolve_threads(8) == 2);
  CHECK(resolve_threads(1) == 1);
  unsetenv("PATRICIA_LAB_THREADS");
}

TEST_CASE("trial faults carry (n, trial)") {
  // max_depth 1 cannot separate Bernoulli strings for long.
  auto cfg = config_for(DistributionSpec::bernoulli(0.5), {64}, 2);
  cfg.max_depth = 1;
  try {
    run_grid(cfg);
    FAIL("expected a fault");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::duplicate_string);
    CHECK(std::string(e.what()).find("n=64") != std::string::npos);
  }
}
