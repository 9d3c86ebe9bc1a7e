#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "patricia_lab/bitstring.hpp"

namespace patricia_lab {

inline constexpr std::uint32_t kNoNode = 0xffffffffU;

struct TrieNode {
  std::uint64_t prefix_depth = 0;
  std::uint32_t child[2] = {kNoNode, kNoNode};
  std::uint32_t leaf_string_id = kNoNode;

  bool is_leaf() const noexcept { return leaf_string_id != kNoNode; }
  int out_degree() const noexcept { return (child[0] != kNoNode) + (child[1] != kNoNode); }
};

/// Uncompressed binary trie with one node per distinguishing prefix.
/// Meant for small inputs; node count is the sum of leaf depths.
struct Trie {
  std::vector<TrieNode> nodes;
  std::uint32_t root = kNoNode;

  std::size_t leaf_count() const;
  std::uint64_t height() const;
};

inline constexpr std::size_t kMaxTrieNodes = std::size_t{1} << 24;

/// Builds the trie of `strings` (ids taken from LazyBitString::id()).
/// Throws duplicate_string if two strings agree up to the depth guard and
/// invalid_argument if the trie would exceed kMaxTrieNodes.
Trie build_trie(std::span<const LazyBitString> strings);

}  // namespace patricia_lab
