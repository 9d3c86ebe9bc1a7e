#include "patricia_lab/acceptance.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <random>
#include <sstream>

#include "patricia_lab/bounds.hpp"
#include "patricia_lab/csv.hpp"
#include "patricia_lab/error.hpp"
#include "patricia_lab/experiment.hpp"
#include "patricia_lab/patricia_tree.hpp"
#include "patricia_lab/prefix_probability.hpp"
#include "patricia_lab/trie.hpp"

namespace patricia_lab {

namespace {

// Monte Carlo slack for every bound-domination check.
constexpr double kStandardErrors = 4.0;

// Collects failed expectations; the first few make up the detail line.
class Checks {
 public:
  void expect(bool ok, const std::string& what) {
    ++total_;
    if (ok) return;
    ++failed_;
    if (failed_ <= 5) failures_ << (failed_ > 1 ? "; " : "") << what;
  }
  void note(const std::string& s) { notes_ << (notes_.tellp() > 0 ? "; " : "") << s; }
  bool passed() const { return failed_ == 0; }
  std::string detail() const {
    std::ostringstream os;
    if (failed_) os << failed_ << "/" << total_ << " checks failed: " << failures_.str();
    else os << total_ << " checks passed";
    if (!notes_.str().empty()) os << " | " << notes_.str();
    return os.str();
  }

 private:
  std::size_t total_ = 0, failed_ = 0;
  std::ostringstream failures_, notes_;
};

std::string fmt(double v, int precision = 6) {
  std::ostringstream os;
  os.precision(precision);
  os << v;
  return os.str();
}

// Standard error of a proportion under the bound value taken as the true rate.
double proportion_se(double p, std::uint64_t samples) {
  const double q = std::clamp(p, 0.0, 1.0);
  return std::sqrt(q * (1.0 - q) / static_cast<double>(samples));
}

ExperimentConfig grid_config(const DistributionSpec& spec, std::vector<std::uint64_t> grid, std::uint32_t trials,
                             std::uint64_t seed, unsigned threads) {
  ExperimentConfig c;
  c.spec = spec;
  c.n_grid = std::move(grid);
  c.trials = trials;
  c.seed = seed;
  c.threads = threads;
  return c;
}

std::vector<LazyBitString> sample_set(const DistributionSpec& spec, std::uint64_t n, std::uint64_t key) {
  std::vector<LazyBitString> out;
  out.reserve(n);
  for (std::uint64_t j = 0; j < n; ++j) {
    out.push_back(LazyBitString::sample(spec, mix_key({key, j}), static_cast<std::uint32_t>(j)));
  }
  return out;
}

void structural_invariants(const AcceptanceOptions& opt, Checks& c) {
  const AlphaSpec sqrt_alpha = AlphaSpec::power(0.5);
  const std::vector<DistributionSpec> specs = {
      DistributionSpec::bernoulli(0.5),         DistributionSpec::bernoulli(0.3),
      DistributionSpec::mu_n(16),               DistributionSpec::mu_n(1000),
      DistributionSpec::mixture(sqrt_alpha),    DistributionSpec::mixture(AlphaSpec::log_power(4)),
      DistributionSpec::nu(sqrt_alpha),         DistributionSpec::nu(AlphaSpec::exp2_power(0.5)),
  };
  SplitMix64 rng(mix_key({opt.seed, 1}));
  constexpr int kTrees = 10000;
  std::uint64_t max_height = 0;
  for (int i = 0; i < kTrees; ++i) {
    const DistributionSpec& spec = specs[static_cast<std::size_t>(i) % specs.size()];
    const std::uint64_t n = 1 + rng.below(512);
    const auto strings = sample_set(spec, n, mix_key({opt.seed, 1, static_cast<std::uint64_t>(i)}));
    const PatriciaTree tree = build_patricia(strings);
    const std::string tag = "tree " + std::to_string(i) + " (" + spec.name() + ", n=" + std::to_string(n) + ")";
    const auto violations = validate(tree, strings);
    c.expect(violations.empty(), tag + ": " + (violations.empty() ? "" : violations.front()));
    const std::uint64_t h = tree.height();
    c.expect(h <= n - 1, tag + ": height " + std::to_string(h) + " > n-1");
    c.expect(tree.internal_count() == n - 1, tag + ": internal nodes " + std::to_string(tree.internal_count()));
    const std::size_t distinct = distinct_first_one_count(strings);
    c.expect(distinct - 1 <= h, tag + ": distinct_first_one-1 = " + std::to_string(distinct - 1) + " > height");
    max_height = std::max<std::uint64_t>(max_height, h);
  }
  c.note(std::to_string(kTrees) + " trees, max height " + std::to_string(max_height));
}

void oracle_equivalence(const AcceptanceOptions& opt, Checks& c) {
  const AlphaSpec sqrt_alpha = AlphaSpec::power(0.5);
  // Small parameters keep the node-per-prefix trie small.
  const std::vector<DistributionSpec> specs = {
      DistributionSpec::bernoulli(0.5), DistributionSpec::bernoulli(0.3), DistributionSpec::mu_n(8),
      DistributionSpec::mixture(sqrt_alpha, 16), DistributionSpec::nu(sqrt_alpha, 16),
  };
  SplitMix64 rng(mix_key({opt.seed, 2}));
  constexpr int kSets = 500;
  for (int i = 0; i < kSets; ++i) {
    const DistributionSpec& spec = specs[static_cast<std::size_t>(i) % specs.size()];
    const std::uint64_t n = 1 + rng.below(64);
    const auto strings = sample_set(spec, n, mix_key({opt.seed, 2, static_cast<std::uint64_t>(i)}));
    const PatriciaTree batch = compress(build_trie(strings));
    std::vector<std::uint32_t> order(n);
    for (std::uint32_t j = 0; j < n; ++j) order[j] = j;
    for (int round = 0; round < 3; ++round) {
      std::shuffle(order.begin(), order.end(), rng);
      PatriciaTree incremental;
      for (std::uint32_t id : order) incremental.insert(strings, id);
      c.expect(structurally_equal(incremental, batch),
               "set " + std::to_string(i) + " (" + spec.name() + ", n=" + std::to_string(n) + ") order " +
                   std::to_string(round) + " differs from compress(build_trie)");
    }
  }
  c.note(std::to_string(kSets) + " sets x 3 orders");
}

void six_string_fixture(const AcceptanceOptions& opt, Checks& c) {
  const std::array<const char*, 6> heads = {"00000", "00001", "0100", "0101", "1100", "1101"};
  std::vector<LazyBitString> strings;
  for (std::uint32_t i = 0; i < heads.size(); ++i) {
    strings.push_back(LazyBitString::from_prefix(heads[i], mix_key({opt.seed, 3, i}), i));
  }
  const Trie trie = build_trie(strings);
  const PatriciaTree tree = compress(trie);
  c.expect(trie.height() == 5, "trie height " + std::to_string(trie.height()) + " != 5");
  c.expect(trie.leaf_count() == 6, "trie leaves " + std::to_string(trie.leaf_count()) + " != 6");
  c.expect(tree.height() == 3, "PATRICIA height " + std::to_string(tree.height()) + " != 3");
  c.expect(tree.leaf_count() == 6, "PATRICIA leaves " + std::to_string(tree.leaf_count()) + " != 6");
  c.expect(tree.internal_count() == 5, "PATRICIA internal nodes " + std::to_string(tree.internal_count()) + " != 5");
  c.expect(validate(tree, strings).empty(), "PATRICIA tree fails validation");
  c.note("trie height " + std::to_string(trie.height()) + ", PATRICIA height " + std::to_string(tree.height()));
}

// P(v) for mu_N by walking every T in {1..N^2} and every coin completion.
double mu_n_enumeration(std::uint64_t n, const std::string& v) {
  const std::uint64_t support = n * n;
  const std::size_t k = v.size();
  double total = 0;
  for (std::uint64_t t = 1; t <= support; ++t) {
    const std::size_t coins = t < k ? k - t : 0;
    std::uint64_t matches = 0;
    for (std::uint64_t pattern = 0; pattern < (std::uint64_t{1} << coins); ++pattern) {
      bool ok = true;
      for (std::size_t i = 1; i <= k && ok; ++i) {
        char bit;
        if (i < t) bit = '0';
        else if (i == t) bit = '1';
        else bit = (pattern >> (i - t - 1)) & 1U ? '1' : '0';
        ok = bit == v[i - 1];
      }
      matches += ok;
    }
    total += std::ldexp(static_cast<double>(matches), -static_cast<int>(coins));
  }
  return total / static_cast<double>(support);
}

std::string bits_of(std::uint64_t value, unsigned len) {
  std::string s(len, '0');
  for (unsigned i = 0; i < len; ++i) {
    if ((value >> i) & 1U) s[i] = '1';
  }
  return s;
}

void prefix_probabilities(const AcceptanceOptions& opt, Checks& c) {
  const AlphaSpec sqrt_alpha = AlphaSpec::power(0.5);
  const std::vector<DistributionSpec> specs = {
      DistributionSpec::bernoulli(0.5), DistributionSpec::bernoulli(0.3), DistributionSpec::mu_n(2),
      DistributionSpec::mu_n(3),        DistributionSpec::mu_n(4),        DistributionSpec::mu_n(1000),
      DistributionSpec::mixture(sqrt_alpha), DistributionSpec::nu(sqrt_alpha),
  };
  double worst_sum = 0, worst_z = 0;
  for (std::size_t s = 0; s < specs.size(); ++s) {
    const DistributionSpec& spec = specs[s];
    const std::string tag = spec.name() + "(" + spec.params_string() + ")";
    for (unsigned k = 1; k <= 12; ++k) {
      double sum = 0;
      for (std::uint64_t v = 0; v < (std::uint64_t{1} << k); ++v) sum += prefix_probability(spec, bits_of(v, k));
      worst_sum = std::max(worst_sum, std::abs(sum - 1.0));
      c.expect(std::abs(sum - 1.0) <= 1e-12, tag + ": sum over |v|=" + std::to_string(k) + " is " + fmt(sum, 17));
    }

    constexpr std::uint64_t kSamples = 100000;
    std::array<std::uint64_t, 64> counts{};
    for (std::uint64_t i = 0; i < kSamples; ++i) {
      const auto str = LazyBitString::sample(spec, mix_key({opt.seed, 4, s, i}), 0);
      ++counts[str.word_at(1) & 63U];
    }
    for (unsigned len = 1; len <= 6; ++len) {
      for (std::uint64_t v = 0; v < (std::uint64_t{1} << len); ++v) {
        std::uint64_t hits = 0;
        for (std::uint64_t w = 0; w < 64; ++w) {
          if ((w & ((std::uint64_t{1} << len) - 1)) == v) hits += counts[w];
        }
        const std::string bits = bits_of(v, len);
        const double p = prefix_probability(spec, bits);
        const double freq = static_cast<double>(hits) / kSamples;
        // Near p = 0 or 1 a single count is many exact-rate SEs away, so the
        // larger of the exact-rate and observed-rate SEs is used.
        const double se = std::max(proportion_se(p, kSamples), proportion_se(freq, kSamples));
        const double dev = std::abs(freq - p);
        if (se > 0) worst_z = std::max(worst_z, dev / se);
        c.expect(p > 0 ? dev <= kStandardErrors * se : hits == 0,
                 tag + ": prefix " + bits + " freq " + fmt(freq) + " vs exact " + fmt(p));
      }
    }
  }
  for (std::uint64_t n = 1; n <= 4; ++n) {
    const auto spec = DistributionSpec::mu_n(n);
    for (unsigned k = 1; k <= 8; ++k) {
      for (std::uint64_t v = 0; v < (std::uint64_t{1} << k); ++v) {
        const std::string bits = bits_of(v, k);
        const double exact = prefix_probability(spec, bits);
        const double brute = mu_n_enumeration(n, bits);
        c.expect(exact == brute, "mu_n(N=" + std::to_string(n) + ") prefix " + bits + ": closed form " + fmt(exact, 17) +
                                     " vs enumeration " + fmt(brute, 17));
      }
    }
  }
  c.note("max |sum-1| " + fmt(worst_sum, 3) + ", max MC z-score " + fmt(worst_z, 3));
}

void mu_n_height_floor(const AcceptanceOptions& opt, Checks& c) {
  constexpr std::uint64_t kSupportRoot = 1000;
  const auto result = run_grid(grid_config(DistributionSpec::mu_n(kSupportRoot), {100, 500, 1000}, 200,
                                           mix_key({opt.seed, 5}), opt.threads));
  for (const auto& row : result.summary.rows) {
    const double n = static_cast<double>(row.n);
    const double distinct_floor = bounds::distinct_lower(row.n, kSupportRoot).value - 0.5;
    c.expect(row.mean_height >= n - 3, "n=" + std::to_string(row.n) + ": mean height " + fmt(row.mean_height) + " < n-3");
    c.expect(row.mean_distinct >= distinct_floor,
             "n=" + std::to_string(row.n) + ": mean |A| " + fmt(row.mean_distinct) + " < " + fmt(distinct_floor));
    c.note("n=" + std::to_string(row.n) + " mean H " + fmt(row.mean_height) + " mean |A| " + fmt(row.mean_distinct));
  }
}

void linear_trend(const AcceptanceOptions& opt, Checks& c) {
  const std::vector<std::uint64_t> grid = {1U << 10, 1U << 12, 1U << 14};
  for (const auto& spec : {DistributionSpec::bernoulli(0.5), DistributionSpec::mu_n(64)}) {
    const auto result = run_grid(grid_config(spec, grid, 50, mix_key({opt.seed, 6}), opt.threads));
    const auto& rows = result.summary.rows;
    std::string trend;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      trend += (i ? " > " : "") + fmt(rows[i].mean_ratio_h_over_n, 4);
      if (i > 0) {
        c.expect(rows[i].mean_ratio_h_over_n < rows[i - 1].mean_ratio_h_over_n,
                 spec.name() + ": H/n not decreasing at n=" + std::to_string(rows[i].n));
      }
    }
    if (spec.law() == Law::bernoulli) {
      c.expect(rows.back().mean_ratio_h_over_n < 0.01,
               "bernoulli: H/n at 2^14 is " + fmt(rows.back().mean_ratio_h_over_n) + " >= 0.01");
    }
    c.note(spec.name() + " H/n " + trend);
  }
}

void symmetric_baseline(const AcceptanceOptions& opt, Checks& c) {
  const auto result =
      run_grid(grid_config(DistributionSpec::bernoulli(0.5), {1U << 16}, 30, mix_key({opt.seed, 7}), opt.threads));
  const auto& row = result.summary.rows.front();
  const double ratio = row.mean_ratio_h_over_log2n;
  c.expect(ratio >= 0.85 && ratio <= 1.20, "mean H/log2 n = " + fmt(ratio) + " outside [0.85, 1.20]");
  c.note("mean H " + fmt(row.mean_height) + ", H/log2 n " + fmt(ratio));
}

void mixture_floor(const AcceptanceOptions& opt, Checks& c) {
  constexpr std::uint64_t n = 4096;
  constexpr std::uint32_t trials = 100;
  const auto spec = DistributionSpec::mixture(AlphaSpec::power(0.5), std::uint64_t{1} << 20);
  const double alpha_n = spec.mixing()->alpha.value(n);
  const auto result = run_grid(grid_config(spec, {n}, trials, mix_key({opt.seed, 8}), opt.threads));
  const auto& row = result.summary.rows.front();
  const double floor = bounds::mixture_height_floor(n, alpha_n);
  c.expect(row.mean_height >= floor, "mean height " + fmt(row.mean_height) + " < n/alpha_n = " + fmt(floor));
  c.expect(row.mean_height >= 200, "mean height " + fmt(row.mean_height) + " < 200");

  const double cutoff = 2.0 * static_cast<double>(n) / alpha_n;
  std::uint64_t below = 0;
  for (const auto& r : result.records) below += static_cast<double>(r.prefix_match_count) < cutoff;
  const double freq = static_cast<double>(below) / trials;
  const double okamoto = bounds::okamoto(n, alpha_n).value;
  c.expect(freq <= okamoto + kStandardErrors * proportion_se(okamoto, trials),
           "P(X_n < 2n/alpha_n) empirical " + fmt(freq) + " > Okamoto " + fmt(okamoto));
  c.note("alpha_n " + fmt(alpha_n) + ", mean H " + fmt(row.mean_height) + ", mean X_n " + fmt(row.mean_prefix_matches) +
         ", freq{X_n<" + fmt(cutoff) + "} " + fmt(freq));
}

void devroye_domination(const AcceptanceOptions& opt, Checks& c) {
  constexpr std::uint32_t trials = 2000;
  const std::vector<std::pair<DistributionSpec, std::uint64_t>> cases = {
      {DistributionSpec::mu_n(64), 64},
      {DistributionSpec::bernoulli(0.5), 1024},
  };
  for (const auto& [spec, n] : cases) {
    const auto result = run_grid(grid_config(spec, {n}, trials, mix_key({opt.seed, 9}), opt.threads));
    const auto& row = result.summary.rows.front();
    for (const auto& tail : row.tails) {
      const double slack = kStandardErrors * proportion_se(tail.devroye, trials);
      c.expect(tail.empirical <= tail.devroye + slack, spec.name() + " n=" + std::to_string(n) + " t=" + fmt(tail.t) +
                                                           ": tail " + fmt(tail.empirical) + " > bound " + fmt(tail.devroye));
      c.note(spec.name() + " t=" + fmt(tail.t) + " tail " + fmt(tail.empirical) + " <= " + fmt(tail.devroye, 4));
    }
  }
}

void chernoff_domination(const AcceptanceOptions& opt, Checks& c) {
  constexpr double eps = 0.2;
  constexpr unsigned k = 3;
  constexpr std::uint32_t trials = 2000;
  const auto spec = DistributionSpec::bernoulli(0.5);
  c.expect(max_prefix_probability(spec, k) < eps, "k-prefix probabilities are not all below eps");
  for (std::uint64_t n : {200, 1000}) {
    std::uint64_t events = 0;
    for (std::uint32_t trial = 0; trial < trials; ++trial) {
      std::array<std::uint64_t, 1U << k> classes{};
      for (std::uint64_t j = 0; j < n; ++j) {
        const auto s = LazyBitString::sample(spec, string_key(mix_key({opt.seed, 10}), n, trial, j), 0);
        ++classes[s.word_at(1) & ((1U << k) - 1)];
      }
      const auto largest = *std::max_element(classes.begin(), classes.end());
      events += static_cast<double>(largest) >= 2.0 * eps * static_cast<double>(n);
    }
    const double freq = static_cast<double>(events) / trials;
    const double bound = bounds::chernoff_enk(n, k, eps);
    c.expect(freq <= bound + kStandardErrors * proportion_se(bound, trials),
             "n=" + std::to_string(n) + ": P(E_nk) empirical " + fmt(freq) + " > bound " + fmt(bound));
    c.note("n=" + std::to_string(n) + " freq " + fmt(freq) + " <= " + fmt(bound, 4));
  }
}

void reproducibility(const AcceptanceOptions& opt, Checks& c) {
  auto config = grid_config(DistributionSpec::mu_n(1000), {100, 500}, 20, mix_key({opt.seed, 11}), 1);
  auto render = [&](unsigned threads) {
    config.threads = threads;
    const auto result = run_grid(config);
    return trials_csv(config, result) + summary_csv(result);
  };
  const std::string first = render(1);
  c.expect(render(1) == first, "two single-threaded runs differ");
  c.expect(render(4) == first, "4-thread run differs from single-threaded run");
  c.expect(render(3) == first, "3-thread run differs from single-threaded run");
  c.note(std::to_string(first.size()) + " CSV bytes compared");
}

struct Criterion {
  int id;
  const char* name;
  void (*run)(const AcceptanceOptions&, Checks&);
};

constexpr std::array<Criterion, kCriterionCount> kCriteria = {{
    {1, "structural invariants", structural_invariants},
    {2, "insert vs compress(build_trie) equivalence", oracle_equivalence},
    {3, "six-string fixture", six_string_fixture},
    {4, "prefix-probability correctness", prefix_probabilities},
    {5, "mu_N height floor n-2 at desk scale", mu_n_height_floor},
    {6, "H/n decreasing trend", linear_trend},
    {7, "symmetric Bernoulli H/log2 n baseline", symmetric_baseline},
    {8, "mixture law height floor n/alpha_n", mixture_floor},
    {9, "Devroye concentration domination", devroye_domination},
    {10, "Chernoff E_nk domination", chernoff_domination},
    {11, "reproducibility across runs and thread counts", reproducibility},
}};

}  // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options) {
  for (int id : options.only) {
    require(id >= 1 && id <= kCriterionCount, "no acceptance criterion " + std::to_string(id));
  }
  std::vector<CriterionResult> results;
  for (const auto& criterion : kCriteria) {
    if (!options.only.empty() &&
        std::find(options.only.begin(), options.only.end(), criterion.id) == options.only.end()) {
      continue;
    }
    CriterionResult r;
    r.id = criterion.id;
    r.name = criterion.name;
    const auto start = std::chrono::steady_clock::now();
    try {
      Checks checks;
      criterion.run(options, checks);
      r.passed = checks.passed();
      r.detail = checks.detail();
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail = std::string("error: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (options.on_result) options.on_result(r);
    results.push_back(std::move(r));
  }
  return results;
}

std::string format_result_line(const CriterionResult& r) {
  std::ostringstream os;
  os << (r.passed ? "[PASS] " : "[FAIL] ") << (r.id < 10 ? " " : "") << r.id << " " << r.name << " ("
     << fmt(r.seconds, 3) << "s): " << r.detail;
  return os.str();
}

}  // namespace patricia_lab
