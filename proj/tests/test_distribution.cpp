#include <doctest.h>

#include <set>

#include "patricia_lab/distribution.hpp"
#include "patricia_lab/bitstring.hpp"
#include "patricia_lab/rng.hpp"
#include "test_support.hpp"

using namespace patricia_lab;
using test_support::error_code_of;

namespace {

ResolvedParams mu_params(std::uint64_t t, std::uint64_t coin_key = 11) {
  ResolvedParams p;
  p.t = t;
  p.coin_key = coin_key;
  return p;
}

ResolvedParams mixture_params(std::uint64_t g, std::uint64_t t, std::uint64_t coin_key = 11) {
  ResolvedParams p = mu_params(t, coin_key);
  p.g = g;
  return p;
}

// Finds a stream key whose sampled string has the requested G.
std::uint64_t key_with_g(const DistributionSpec& spec, std::uint64_t g) {
  for (std::uint64_t key = 0;; ++key) {
    if (LazyBitString::sample(spec, key, 0).resolved_params().g == g) return key;
  }
}

}  // namespace

TEST_CASE("distribution validation") {
  CHECK(error_code_of([] { DistributionSpec::bernoulli(0.0); }) == ErrorCode::invalid_argument);
  CHECK(error_code_of([] { DistributionSpec::bernoulli(1.0); }) == ErrorCode::invalid_argument);
  CHECK(error_code_of([] { DistributionSpec::mu_n(0); }) == ErrorCode::invalid_argument);
  CHECK(error_code_of([] { DistributionSpec::mu_n(kMaxSupportRoot + 1); }) == ErrorCode::invalid_argument);
  CHECK(error_code_of([] { DistributionSpec::mixture(AlphaSpec::power(0.5), 1); }) == ErrorCode::invalid_argument);
  CHECK(DistributionSpec::mu_n(1000).params_string() == "N=1000");
  CHECK(DistributionSpec::bernoulli(0.5).name() == "bernoulli");
}

TEST_CASE("nu transform") {
  const auto nu = DistributionSpec::nu(AlphaSpec::power(0.5));
  REQUIRE(nu.mixing() != nullptr);
  CHECK(nu.mixing()->alpha.value(1 << 20) == doctest::Approx(10));
  CHECK(nu.mixing()->alpha.value(2) == 1);
  const auto nu_fast = DistributionSpec::nu(AlphaSpec::exp2_power(0.5));
  CHECK(nu_fast.mixing()->alpha.value(400) == doctest::Approx(20));
  // A constant table cannot diverge.
  CHECK(error_code_of([] { DistributionSpec::nu(AlphaSpec::table({5, 5, 5}, std::nullopt)); }) ==
        ErrorCode::invalid_argument);
}

TEST_CASE("mixture inner N follows A(G) under the cap") {
  const auto spec = DistributionSpec::mixture(AlphaSpec::power(0.5));
  CHECK(mixture_inner_n(*spec.mixing(), 4) == 16383);
  CHECK(mixture_inner_n(*spec.mixing(), 40) == kDefaultACap);
  const auto small = DistributionSpec::mixture(AlphaSpec::power(0.5), 100);
  CHECK(mixture_inner_n(*small.mixing(), 4) == 100);
}

TEST_CASE("bernoulli(0.5) bits are the coin substream") {
  const std::uint64_t key = 314;
  const auto s = LazyBitString::sample(DistributionSpec::bernoulli(0.5), key, 0);
  SplitMix64 coins(mix_key({key, kPurposeCoins}));
  for (std::uint64_t w = 0; w < 4; ++w) {
    const std::uint64_t word = coins();
    for (unsigned b = 0; b < 64; ++b) CHECK(s.bit_at(w * 64 + b + 1) == static_cast<bool>((word >> b) & 1U));
  }
}

TEST_CASE("mu_N string with T = 3 starts 0,0,1 then coins") {
  const auto s = LazyBitString::from_params(Law::mu_n, mu_params(3), 0);
  const auto coins_only = LazyBitString::from_prefix("", 11, 1);
  CHECK_FALSE(s.bit_at(1));
  CHECK_FALSE(s.bit_at(2));
  CHECK(s.bit_at(3));
  for (std::uint64_t i = 1; i <= 200; ++i) CHECK(s.bit_at(3 + i) == coins_only.bit_at(i));
  CHECK(s.first_one_index() == 3);
}

TEST_CASE("bit_at examples") {
  const auto mu = LazyBitString::from_params(Law::mu_n, mu_params(5), 0);
  CHECK_FALSE(mu.bit_at(4));
  CHECK(mu.bit_at(5));
  const auto mix = LazyBitString::from_params(Law::mixture, mixture_params(2, 3), 0);
  CHECK(mix.prefix(5) == "01001");
  CHECK(mix.bit_at(5));
  CHECK(LazyBitString::from_params(Law::mu_n, mu_params(7), 0).first_one_index() == 7);
  CHECK(LazyBitString::from_params(Law::mixture, mixture_params(3, 9), 0).first_one_index() == 3);
  CHECK(LazyBitString::from_prefix("001", 5, 0).first_one_index() == 3);
}

TEST_CASE("sampled mixture string with G = 4") {
  const auto spec = DistributionSpec::mixture(AlphaSpec::power(0.5));
  const auto s = LazyBitString::sample(spec, key_with_g(spec, 4), 0);
  CHECK(s.resolved_params().inner_n == 16383);
  CHECK(s.prefix(4) == "0001");
  CHECK(*s.resolved_params().t >= 1);
  CHECK(*s.resolved_params().t <= 16383ULL * 16383ULL);
}

TEST_CASE("bit_at is deterministic and independent of access order") {
  const auto spec = DistributionSpec::mu_n(3);
  const auto a = LazyBitString::sample(spec, 77, 0);
  const auto b = LazyBitString::sample(spec, 77, 0);
  std::vector<bool> forward;
  for (std::uint64_t i = 1; i <= 10000; ++i) forward.push_back(a.bit_at(i));
  for (std::uint64_t i = 10000; i >= 1; --i) REQUIRE(b.bit_at(i) == forward[i - 1]);
  for (std::uint64_t i = 1; i <= 10000; ++i) REQUIRE(a.bit_at(i) == forward[i - 1]);
}

TEST_CASE("word_at agrees with bit_at") {
  const auto s = LazyBitString::from_params(Law::mixture, mixture_params(3, 70), 0);
  for (std::uint64_t i : {1ULL, 2ULL, 3ULL, 60ULL, 72ULL, 73ULL, 74ULL, 130ULL}) {
    const auto w = s.word_at(i);
    for (unsigned k = 0; k < 64; ++k) REQUIRE(static_cast<bool>((w >> k) & 1U) == s.bit_at(i + k));
  }
}

TEST_CASE("first_one_index matches a scan for every sampled string") {
  for (const auto& spec : {DistributionSpec::bernoulli(0.5), DistributionSpec::bernoulli(0.2), DistributionSpec::mu_n(5),
                           DistributionSpec::mixture(AlphaSpec::power(0.5), 8),
                           DistributionSpec::nu(AlphaSpec::power(0.5), 8)}) {
    for (std::uint64_t key = 0; key < 300; ++key) {
      const auto s = LazyBitString::sample(spec, key, 0);
      std::uint64_t scan = 1;
      while (!s.bit_at(scan)) ++scan;
      REQUIRE(s.first_one_index() == scan);
      if (spec.law() == Law::mu_n) REQUIRE(scan == *s.resolved_params().t);
      if (spec.mixing()) REQUIRE(scan == *s.resolved_params().g);
    }
  }
}

TEST_CASE("huge T costs no materialization") {
  ResolvedParams p = mu_params(std::uint64_t{1} << 40);
  const auto s = LazyBitString::from_params(Law::mu_n, p, 0);
  CHECK(s.first_one_index() == std::uint64_t{1} << 40);
  CHECK_FALSE(s.bit_at(123456789));
  CHECK(s.materialized_bits() == 0);
}

TEST_CASE("depth guard") {
  const auto s = LazyBitString::from_prefix("01", 3, 0, 128);
  CHECK(s.depth_limit() == 130);
  CHECK_NOTHROW(s.bit_at(130));
  CHECK(error_code_of([&] { s.bit_at(131); }) == ErrorCode::depth_guard);
}

TEST_CASE("first_difference") {
  const auto a = LazyBitString::from_prefix("0010", 1, 0);
  const auto b = LazyBitString::from_prefix("0011", 2, 1);
  CHECK(first_difference(a, b) == 4);
  const auto far1 = LazyBitString::from_params(Law::mu_n, mu_params(1000000), 0);
  const auto far2 = LazyBitString::from_params(Law::mu_n, mu_params(1000003), 1);
  CHECK(first_difference(far1, far2) == 1000000);
  // Same T, independent coins: differ shortly after T.
  const auto same1 = LazyBitString::from_params(Law::mu_n, mu_params(500, 1), 0);
  const auto same2 = LazyBitString::from_params(Law::mu_n, mu_params(500, 2), 1);
  const auto d = first_difference(same1, same2);
  CHECK(d > 500);
  CHECK(same1.bit_at(d) != same2.bit_at(d));
  for (std::uint64_t i = 1; i < d; ++i) REQUIRE(same1.bit_at(i) == same2.bit_at(i));
  // Identical strings trip the guard.
  const auto c1 = LazyBitString::from_prefix("1", 9, 0, 256);
  const auto c2 = LazyBitString::from_prefix("1", 9, 1, 256);
  CHECK(error_code_of([&] { first_difference(c1, c2); }) == ErrorCode::duplicate_string);
}
