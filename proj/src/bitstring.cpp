#include "patricia_lab/bitstring.hpp"

#include <algorithm>
#include <bit>

#include "patricia_lab/error.hpp"

namespace patricia_lab {

LazyBitString::LazyBitString(std::uint32_t id, std::optional<Law> law, ResolvedParams params,
                             std::uint64_t max_depth, double coin_p)
    : id_(id),
      law_(law),
      params_(params),
      max_depth_(max_depth),
      coin_p_(coin_p),
      coin_gen_(params.coin_key) {
  require(max_depth >= 1, "max_depth must be positive");
}

LazyBitString LazyBitString::sample(const DistributionSpec& spec, std::uint64_t stream_key,
                                    std::uint32_t id, std::uint64_t max_depth) {
  SplitMix64 gen(mix_key({stream_key, kPurposeParams}));
  ResolvedParams params;
  params.coin_key = mix_key({stream_key, kPurposeCoins});
  double coin_p = 0.5;

  if (auto* b = std::get_if<BernoulliLaw>(&spec.params())) {
    coin_p = b->p;
  } else if (auto* mu = std::get_if<MuNLaw>(&spec.params())) {
    params.t = 1 + gen.below(mu->n * mu->n);
  } else {
    const MixtureLaw& m = *spec.mixing();
    const std::uint64_t coins = gen();
    if (coins == 0) fail(ErrorCode::stream_fault, "geometric draw saw 64 failures in a row");
    params.g = static_cast<std::uint64_t>(std::countr_zero(coins)) + 1;
    params.inner_n = m.inner_n[*params.g];
    params.t = 1 + gen.below(*params.inner_n * *params.inner_n);
  }
  return from_params(spec.law(), params, id, max_depth, coin_p);
}

LazyBitString LazyBitString::from_params(Law law, const ResolvedParams& params, std::uint32_t id,
                                         std::uint64_t max_depth, double coin_p) {
  require(coin_p > 0.0 && coin_p < 1.0, "coin probability must lie in (0, 1)");
  LazyBitString s(id, law, params, max_depth, coin_p);
  switch (law) {
    case Law::bernoulli:
      break;
    case Law::mu_n:
      require(params.t && *params.t >= 1, "mu_n string needs T >= 1");
      s.head_len_ = *params.t;
      s.head_ones_ = {*params.t};
      break;
    case Law::mixture:
    case Law::nu:
      require(params.g && *params.g >= 1 && params.t && *params.t >= 1,
              "mixture string needs G >= 1 and T >= 1");
      s.head_len_ = *params.g + *params.t;
      s.head_ones_ = {*params.g, s.head_len_};
      break;
  }
  return s;
}

LazyBitString LazyBitString::from_prefix(std::string_view head, std::uint64_t coin_key,
                                         std::uint32_t id, std::uint64_t max_depth) {
  ResolvedParams params;
  params.coin_key = coin_key;
  LazyBitString s(id, std::nullopt, params, max_depth, 0.5);
  s.head_len_ = head.size();
  for (std::size_t i = 0; i < head.size(); ++i) {
    require(head[i] == '0' || head[i] == '1', "prefix must consist of '0' and '1'");
    if (head[i] == '1') s.head_ones_.push_back(i + 1);
  }
  return s;
}

void LazyBitString::materialize_words(std::size_t words) const {
  while (coins_.size() < words) {
    if (coin_p_ == 0.5) {
      coins_.push_back(coin_gen_());
    } else {
      std::uint64_t w = 0;
      for (unsigned b = 0; b < 64; ++b) {
        if (coin_gen_.unit() < coin_p_) w |= std::uint64_t{1} << b;
      }
      coins_.push_back(w);
    }
  }
}

std::uint64_t LazyBitString::tail_word(std::uint64_t j) const {
  const std::uint64_t word = (j - 1) / 64;
  const unsigned off = static_cast<unsigned>((j - 1) % 64);
  materialize_words(word + (off ? 2 : 1));
  if (off == 0) return coins_[word];
  return (coins_[word] >> off) | (coins_[word + 1] << (64 - off));
}

bool LazyBitString::bit_at(std::uint64_t i) const {
  require(i >= 1, "bit positions start at 1");
  if (i <= head_len_) {
    // Heads from sampled laws hold at most two ones.
    if (head_ones_.size() <= 2) return std::find(head_ones_.begin(), head_ones_.end(), i) != head_ones_.end();
    return std::binary_search(head_ones_.begin(), head_ones_.end(), i);
  }
  const std::uint64_t j = i - head_len_;
  if (j > max_depth_) {
    fail(ErrorCode::depth_guard, "bit " + std::to_string(i) + " is past the depth guard of string " +
                                     std::to_string(id_) + " (indistinguishable strings?)");
  }
  const std::uint64_t word = (j - 1) / 64;
  materialize_words(word + 1);
  return (coins_[word] >> ((j - 1) % 64)) & 1U;
}

std::uint64_t LazyBitString::word_at(std::uint64_t i) const {
  require(i >= 1, "bit positions start at 1");
  std::uint64_t out = 0;
  const std::uint64_t last = i + 63;
  if (i <= head_len_) {
    for (auto it = std::lower_bound(head_ones_.begin(), head_ones_.end(), i);
         it != head_ones_.end() && *it <= last; ++it) {
      out |= std::uint64_t{1} << (*it - i);
    }
  }
  if (last > head_len_) {
    const std::uint64_t first_tail = std::max(i, head_len_ + 1);
    const auto shift = static_cast<unsigned>(first_tail - i);
    out |= tail_word(first_tail - head_len_) << shift;
  }
  return out;
}

std::uint64_t LazyBitString::first_one_index() const {
  if (!head_ones_.empty()) return head_ones_.front();
  for (std::uint64_t j = 1; j <= max_depth_; j += 64) {
    const std::uint64_t w = tail_word(j);
    if (w != 0) {
      const std::uint64_t pos = j + static_cast<std::uint64_t>(std::countr_zero(w));
      if (pos <= max_depth_) return head_len_ + pos;
      break;
    }
  }
  fail(ErrorCode::stream_fault, "no one bit within the depth guard of string " + std::to_string(id_));
}

std::string LazyBitString::prefix(std::uint64_t len) const {
  std::string s;
  s.reserve(len);
  for (std::uint64_t i = 1; i <= len; ++i) s.push_back(bit_at(i) ? '1' : '0');
  return s;
}

namespace {

// Smallest position >= pos at which s may hold a one: its next head one, or
// the start of its tail.
std::uint64_t next_event(const LazyBitString& s, std::uint64_t pos) {
  const auto& ones = s.head_ones();
  auto it = std::lower_bound(ones.begin(), ones.end(), pos);
  const std::uint64_t tail = std::max(pos, s.head_length() + 1);
  return it != ones.end() ? std::min(*it, tail) : tail;
}

}  // namespace

std::uint64_t first_difference(const LazyBitString& a, const LazyBitString& b) {
  const std::uint64_t limit = std::min(a.depth_limit(), b.depth_limit());
  std::uint64_t pos = 1;
  while (pos <= limit) {
    // Both strings are zero on [pos, next): skip the run.
    pos = std::min(next_event(a, pos), next_event(b, pos));
    if (pos > limit) break;
    const std::uint64_t diff = a.word_at(pos) ^ b.word_at(pos);
    if (diff != 0) {
      const std::uint64_t d = pos + static_cast<std::uint64_t>(std::countr_zero(diff));
      if (d <= limit) return d;
      break;
    }
    pos += 64;
  }
  fail(ErrorCode::duplicate_string, "strings " + std::to_string(a.id()) + " and " + std::to_string(b.id()) +
                                        " agree up to the depth guard");
}

}  // namespace patricia_lab
