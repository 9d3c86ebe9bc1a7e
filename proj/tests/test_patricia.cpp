#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>

#include <nlohmann/json.hpp>

#include "patricia_lab/patricia_tree.hpp"
#include "patricia_lab/rng.hpp"
#include "patricia_lab/trie.hpp"
#include "test_support.hpp"

using namespace patricia_lab;
using test_support::from_heads;

namespace {

const std::vector<std::string> kSixStrings = {"00000", "00001", "0100", "0101", "1100", "1101"};

// Height of the PATRICIA tree from pairwise longest common prefixes: the tree
// has a branching node for every distinct LCP class, so the depth of a leaf
// is the number of distinct LCP lengths on its root path. Computed here by
// recursive splitting on the first disagreeing position of each group.
std::uint64_t lcp_height(const std::vector<LazyBitString>& strings, std::vector<std::uint32_t> group) {
  if (group.size() <= 1) return 0;
  std::uint64_t d = ~std::uint64_t{0};
  for (std::size_t i = 1; i < group.size(); ++i) d = std::min(d, first_difference(strings[group[0]], strings[group[i]]));
  std::vector<std::uint32_t> zeros, ones;
  for (auto id : group) (strings[id].bit_at(d) ? ones : zeros).push_back(id);
  return 1 + std::max(lcp_height(strings, zeros), lcp_height(strings, ones));
}

std::vector<LazyBitString> sample_strings(const DistributionSpec& spec, std::uint64_t n, std::uint64_t key) {
  std::vector<LazyBitString> out;
  for (std::uint32_t i = 0; i < n; ++i) out.push_back(LazyBitString::sample(spec, mix_key({key, i}), i));
  return out;
}

}  // namespace

TEST_CASE("trie examples") {
  const auto one = from_heads({"1"});
  CHECK(build_trie(one).height() == 0);
  CHECK(build_trie(one).leaf_count() == 1);
  const auto two = from_heads({"0", "1"});
  CHECK(build_trie(two).height() == 1);
  const auto six = from_heads(kSixStrings);
  const Trie trie = build_trie(six);
  CHECK(trie.height() == 5);
  CHECK(trie.leaf_count() == 6);
}

TEST_CASE("compress examples") {
  const auto one = from_heads({"1"});
  const auto single = compress(build_trie(one));
  CHECK(single.height() == 0);
  CHECK(single.leaf_count() == 1);

  const auto two = from_heads({"0", "1"});
  const auto pair = compress(build_trie(two));
  CHECK(pair.leaf_count() == 2);
  CHECK(pair.internal_count() == 1);
  CHECK(pair.nodes()[pair.root()].split_index == 1);

  const auto six = from_heads(kSixStrings);
  const auto tree = compress(build_trie(six));
  CHECK(tree.leaf_count() == 6);
  CHECK(tree.internal_count() == 5);
  CHECK(tree.height() == 3);
  CHECK(validate(tree, six).empty());
  CHECK(tree.height() == lcp_height(six, {0, 1, 2, 3, 4, 5}));
}

TEST_CASE("insert examples") {
  const auto strings = from_heads({"0", "1"});
  PatriciaTree t;
  t.insert(strings, 0);
  CHECK(t.leaf_count() == 1);
  CHECK(t.height() == 0);
  CHECK(t.max_split_index() == 0);
  t.insert(strings, 1);
  CHECK(t.nodes()[t.root()].split_index == 1);
  CHECK(t.height() == 1);
}

TEST_CASE("insert order does not matter for the six strings") {
  const auto six = from_heads(kSixStrings);
  const auto batch = compress(build_trie(six));
  std::vector<std::uint32_t> order(6);
  std::iota(order.begin(), order.end(), 0U);
  SplitMix64 rng(3);
  for (int round = 0; round < 20; ++round) {
    std::shuffle(order.begin(), order.end(), rng);
    PatriciaTree t;
    for (auto id : order) t.insert(six, id);
    CHECK(structurally_equal(t, batch));
  }
}

TEST_CASE("incremental and batch trees agree on sampled strings") {
  const std::vector<DistributionSpec> specs = {
      DistributionSpec::bernoulli(0.5), DistributionSpec::bernoulli(0.15), DistributionSpec::mu_n(4),
      DistributionSpec::mixture(AlphaSpec::power(0.5), 12), DistributionSpec::nu(AlphaSpec::exp2_power(0.5), 12)};
  SplitMix64 rng(8);
  for (int i = 0; i < 150; ++i) {
    const auto& spec = specs[static_cast<std::size_t>(i) % specs.size()];
    const auto n = 1 + rng.below(80);
    const auto strings = sample_strings(spec, n, 100 + static_cast<std::uint64_t>(i));
    const auto batch = compress(build_trie(strings));
    std::vector<std::uint32_t> order(n);
    std::iota(order.begin(), order.end(), 0U);
    std::shuffle(order.begin(), order.end(), rng);
    PatriciaTree t;
    for (auto id : order) t.insert(strings, id);
    CAPTURE(i);
    REQUIRE(structurally_equal(t, batch));
    REQUIRE(validate(t, strings).empty());
    std::vector<std::uint32_t> all(n);
    std::iota(all.begin(), all.end(), 0U);
    REQUIRE(t.height() == lcp_height(strings, all));
  }
}

TEST_CASE("distinct first-one chain has height n - 1") {
  for (std::size_t n = 1; n <= 8; ++n) {
    std::vector<std::string> heads;
    for (std::size_t i = 0; i < n; ++i) heads.push_back(std::string(i, '0') + "1");
    const auto strings = from_heads(heads);
    const auto t = build_patricia(strings);
    CHECK(t.height() == n - 1);
    CHECK(distinct_first_one_count(strings) == n);
  }
}

TEST_CASE("distinct first-one counts") {
  CHECK(distinct_first_one_count(from_heads({"001", "0010", "0011"})) == 1);
  const auto spread = from_heads({"1", "01", "00001"});
  CHECK(distinct_first_one_count(spread) == 3);
  // Every fair-coin completion of these heads gives height >= 2.
  for (std::uint64_t seed = 0; seed < 200; ++seed) REQUIRE(build_patricia(from_heads({"1", "01", "00001"}, seed)).height() >= 2);
  CHECK(distinct_first_one_count(from_heads({"1"})) == 1);
}

TEST_CASE("height never exceeds n - 1 and is at least distinct - 1") {
  for (const auto& spec : {DistributionSpec::mu_n(1000), DistributionSpec::bernoulli(0.5),
                           DistributionSpec::mixture(AlphaSpec::power(0.5))}) {
    for (std::uint64_t key = 0; key < 30; ++key) {
      const auto strings = sample_strings(spec, 200, key);
      const auto t = build_patricia(strings);
      REQUIRE(t.height() <= 199);
      REQUIRE(t.height() + 1 >= distinct_first_one_count(strings));
      REQUIRE(t.internal_count() == 199);
    }
  }
}

TEST_CASE("validate flags a unary node") {
  const auto strings = from_heads({"0", "1"});
  auto t = build_patricia(strings);
  PatriciaNode unary;
  unary.split_index = 0;
  unary.child[0] = t.root();
  auto& nodes = t.mutable_nodes();
  nodes.push_back(unary);
  t.set_root(static_cast<std::uint32_t>(nodes.size() - 1));
  const auto v = validate(t, strings);
  REQUIRE_FALSE(v.empty());
  CHECK(std::any_of(v.begin(), v.end(), [](const std::string& s) { return s.find("out-degree 1") != std::string::npos; }));
}

TEST_CASE("validate flags swapped split indices") {
  const auto strings = from_heads({"00", "01", "1"});
  auto t = build_patricia(strings);
  auto& nodes = t.mutable_nodes();
  const auto root = t.root();
  const auto inner = nodes[root].child[0];
  REQUIRE_FALSE(nodes[inner].is_leaf());
  std::swap(nodes[root].split_index, nodes[inner].split_index);
  const auto v = validate(t, strings);
  REQUIRE_FALSE(v.empty());
  CHECK(std::any_of(v.begin(), v.end(),
                    [](const std::string& s) { return s.find("non-increasing split index") != std::string::npos; }));
}

TEST_CASE("insert rejects duplicates and bad ids") {
  const auto strings = from_heads({"0", "1"});
  // Same head and same coin key: indistinguishable up to the guard.
  std::vector<LazyBitString> dup = {LazyBitString::from_prefix("1", 5, 0, 512), LazyBitString::from_prefix("1", 5, 1, 512)};
  CHECK(test_support::error_code_of([&] { build_patricia(dup); }) == ErrorCode::duplicate_string);
  PatriciaTree t;
  CHECK(test_support::error_code_of([&] { t.insert(strings, 7); }) == ErrorCode::invalid_argument);
}

TEST_CASE("json dump") {
  const auto six = from_heads(kSixStrings);
  const auto j = to_json(build_patricia(six));
  CHECK(j.contains("split_index"));
  CHECK(j.dump().find("\"leaf\"") != std::string::npos);
}

TEST_CASE("strings far apart in a long zero run") {
  ResolvedParams p;
  p.coin_key = 1;
  std::vector<LazyBitString> strings;
  for (std::uint32_t i = 0; i < 5; ++i) {
    p.t = (std::uint64_t{1} << 40) + i * 1000;
    p.coin_key = i;
    strings.push_back(LazyBitString::from_params(Law::mu_n, p, i, 4096));
  }
  const auto t = build_patricia(strings);
  CHECK(t.height() == 4);
  CHECK(validate(t, strings).empty());
}
