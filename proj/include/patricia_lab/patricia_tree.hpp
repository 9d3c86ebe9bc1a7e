#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "patricia_lab/bitstring.hpp"
#include "patricia_lab/trie.hpp"

namespace patricia_lab {

/// A node of the compressed tree. Internal nodes test bit `split_index` and
/// go to child[bit]; leaves carry the string id and the length of the
/// shortest prefix distinguishing that string (its parent's split index).
struct PatriciaNode {
  std::uint64_t split_index = 0;
  std::uint32_t child[2] = {kNoNode, kNoNode};
  std::uint32_t string_id = kNoNode;
  std::uint64_t witness_prefix_length = 0;

  bool is_leaf() const noexcept { return string_id != kNoNode; }
};

/// PATRICIA tree over a pool of strings addressed by id: the string with id
/// i must sit at pool[i]. The tree stores only ids and split positions, never
/// edge labels, so long zero runs in the strings are never touched.
class PatriciaTree {
 public:
  bool empty() const noexcept { return root_ == kNoNode; }
  std::uint32_t root() const noexcept { return root_; }
  const std::vector<PatriciaNode>& nodes() const noexcept { return nodes_; }

  // Raw access for building fixtures and corrupted trees in tests.
  std::vector<PatriciaNode>& mutable_nodes() noexcept { return nodes_; }
  void set_root(std::uint32_t root) noexcept { root_ = root; }

  /// Adds pool[id]. The result is structurally identical to compressing the
  /// trie of all inserted strings, whatever the insertion order.
  void insert(std::span<const LazyBitString> pool, std::uint32_t id);

  std::size_t leaf_count() const;
  std::size_t internal_count() const;
  /// Edges from the root to the deepest leaf; 0 for a single leaf.
  std::uint64_t height() const;
  /// Largest split index in the tree; 0 when there are no internal nodes.
  std::uint64_t max_split_index() const;

 private:
  std::vector<PatriciaNode> nodes_;
  std::uint32_t root_ = kNoNode;
};

/// Removes every out-degree-1 trie node. A branching node at depth d becomes
/// an internal node testing bit d + 1. Throws on malformed tries.
PatriciaTree compress(const Trie& trie);

/// Convenience: fold insert over pool[0..n) in order.
PatriciaTree build_patricia(std::span<const LazyBitString> pool);

/// Same shape, split indices, leaf ids and witness lengths. Arena layout is
/// ignored.
bool structurally_equal(const PatriciaTree& a, const PatriciaTree& b);

/// Human-readable invariant violations; empty iff the tree is well formed.
std::vector<std::string> validate(const PatriciaTree& tree, std::span<const LazyBitString> pool);

/// Number of distinct first-one positions among the strings. Every PATRICIA
/// tree over them has height >= this - 1.
std::size_t distinct_first_one_count(std::span<const LazyBitString> strings);

/// Debug dump: nested objects with split_index/children or leaf ids.
/// Not a stable format.
nlohmann::json to_json(const PatriciaTree& tree);

}  // namespace patricia_lab
