#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "patricia_lab/distribution.hpp"
#include "patricia_lab/rng.hpp"

namespace patricia_lab {

inline constexpr std::uint64_t kDefaultMaxDepth = std::uint64_t{1} << 20;

/// Random parameters drawn once when a string is sampled.
struct ResolvedParams {
  std::optional<std::uint64_t> g;        // geometric prefix length (mixture, nu)
  std::optional<std::uint64_t> t;        // first-one position of the mu_N part
  std::optional<std::uint64_t> inner_n;  // N of the inner mu_N (mixture, nu)
  std::uint64_t coin_key = 0;
};

/// An infinite binary string, materialized on demand.
///
/// Every supported law has the same shape: a deterministic head of length
/// head_length() that is all zeros except at head_ones(), followed by an
/// infinite coin tail. Only the tail is ever materialized, into a word
/// buffer that is a pure prefix cache, so strings whose first one sits at
/// position 10^9 cost nothing until bits past it are read.
///
/// Positions are 1-based. max_depth bounds the number of tail bits that may
/// be materialized; reading past it throws ErrorCode::depth_guard.
///
/// bit_at() is logically const but grows the cache: one writer at a time.
class LazyBitString {
 public:
  static LazyBitString sample(const DistributionSpec& spec, std::uint64_t stream_key,
                              std::uint32_t id, std::uint64_t max_depth = kDefaultMaxDepth);

  /// Rebuilds a string of `law` from already-resolved parameters.
  static LazyBitString from_params(Law law, const ResolvedParams& params, std::uint32_t id,
                                   std::uint64_t max_depth = kDefaultMaxDepth, double coin_p = 0.5);

  /// Explicit head given as '0'/'1' characters, fair coins afterwards.
  static LazyBitString from_prefix(std::string_view head, std::uint64_t coin_key, std::uint32_t id,
                                   std::uint64_t max_depth = kDefaultMaxDepth);

  std::uint32_t id() const noexcept { return id_; }
  /// nullopt for strings built from an explicit prefix.
  std::optional<Law> law() const noexcept { return law_; }
  const ResolvedParams& resolved_params() const noexcept { return params_; }
  std::uint64_t max_depth() const noexcept { return max_depth_; }

  std::uint64_t head_length() const noexcept { return head_len_; }
  const std::vector<std::uint64_t>& head_ones() const noexcept { return head_ones_; }
  /// Number of tail bits currently cached.
  std::uint64_t materialized_bits() const noexcept { return coins_.size() * 64; }

  bool bit_at(std::uint64_t i) const;

  /// Bits i..i+63 packed LSB-first: bit k of the result is position i+k.
  /// Does not apply the depth guard; callers bound how far they read.
  std::uint64_t word_at(std::uint64_t i) const;

  /// Position of the first one. Answered from the head without touching the
  /// tail whenever the head contains a one.
  std::uint64_t first_one_index() const;

  /// '0'/'1' rendering of positions 1..len.
  std::string prefix(std::uint64_t len) const;

  /// Last position covered by the depth guard.
  std::uint64_t depth_limit() const noexcept { return head_len_ + max_depth_; }

 private:
  LazyBitString(std::uint32_t id, std::optional<Law> law, ResolvedParams params,
                std::uint64_t max_depth, double coin_p);

  // Tail bits j..j+63 (1-based tail index).
  std::uint64_t tail_word(std::uint64_t j) const;
  void materialize_words(std::size_t words) const;

  std::uint32_t id_;
  std::optional<Law> law_;
  ResolvedParams params_;
  std::uint64_t max_depth_;
  std::uint64_t head_len_ = 0;
  std::vector<std::uint64_t> head_ones_;
  double coin_p_;
  mutable SplitMix64 coin_gen_;
  mutable std::vector<std::uint64_t> coins_;
};

/// First position where a and b differ. Throws ErrorCode::duplicate_string
/// when they agree up to the depth guard of either string.
std::uint64_t first_difference(const LazyBitString& a, const LazyBitString& b);

}  // namespace patricia_lab
