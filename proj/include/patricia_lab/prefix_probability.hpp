#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "patricia_lab/distribution.hpp"

namespace patricia_lab {

/// Exact P(string starts with v) for v given as '0'/'1' characters, |v| >= 1.
double prefix_probability(const DistributionSpec& spec, std::string_view v);

inline constexpr unsigned kMaxEnumerationDepth = 24;

/// max over v in {0,1}^k of prefix_probability(spec, v), k <= 24.
/// Exact: branch and bound over the prefix tree, pruning any node whose
/// probability cannot beat the best leaf found so far.
double max_prefix_probability(const DistributionSpec& spec, unsigned k);

/// Smallest k <= max_k with max_prefix_probability(spec, k) < eps, if any.
std::optional<unsigned> diffuseness_level(const DistributionSpec& spec, double eps,
                                          unsigned max_k = kMaxEnumerationDepth);

/// Fraction of `samples` independently sampled strings starting with v.
/// String i uses stream key mix_key({seed, i}).
double prefix_frequency(const DistributionSpec& spec, std::string_view v, std::uint64_t samples,
                        std::uint64_t seed);

}  // namespace patricia_lab
