#include "patricia_lab/trie.hpp"

#include <algorithm>

#include "patricia_lab/error.hpp"

namespace patricia_lab {

std::size_t Trie::leaf_count() const {
  return static_cast<std::size_t>(std::count_if(nodes.begin(), nodes.end(), [](const TrieNode& n) { return n.is_leaf(); }));
}

std::uint64_t Trie::height() const {
  std::uint64_t h = 0;
  for (const auto& n : nodes) {
    if (n.is_leaf()) h = std::max(h, n.prefix_depth);
  }
  return h;
}

Trie build_trie(std::span<const LazyBitString> strings) {
  require(!strings.empty(), "build_trie needs at least one string");
  std::vector<std::uint32_t> order(strings.size());
  for (std::uint32_t i = 0; i < order.size(); ++i) order[i] = i;

  struct Task {
    std::uint32_t node;
    std::size_t begin, end;  // range of `order`
  };
  Trie trie;
  trie.nodes.push_back(TrieNode{});
  trie.root = 0;
  std::vector<Task> stack{{0, 0, order.size()}};

  try {
    while (!stack.empty()) {
      const Task task = stack.back();
      stack.pop_back();
      const std::uint64_t depth = trie.nodes[task.node].prefix_depth;
      if (task.end - task.begin == 1) {
        trie.nodes[task.node].leaf_string_id = strings[order[task.begin]].id();
        continue;
      }
      auto first = order.begin() + static_cast<std::ptrdiff_t>(task.begin);
      auto last = order.begin() + static_cast<std::ptrdiff_t>(task.end);
      auto mid = std::stable_partition(first, last, [&](std::uint32_t i) { return !strings[i].bit_at(depth + 1); });
      const std::size_t split = static_cast<std::size_t>(mid - order.begin());
      const std::size_t ranges[2][2] = {{task.begin, split}, {split, task.end}};
      for (int side = 0; side < 2; ++side) {
        if (ranges[side][0] == ranges[side][1]) continue;
        if (trie.nodes.size() >= kMaxTrieNodes) fail(ErrorCode::invalid_argument, "trie exceeds node budget");
        const auto child = static_cast<std::uint32_t>(trie.nodes.size());
        TrieNode node;
        node.prefix_depth = depth + 1;
        trie.nodes.push_back(node);
        trie.nodes[task.node].child[side] = child;
        stack.push_back({child, ranges[side][0], ranges[side][1]});
      }
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::depth_guard) {
      fail(ErrorCode::duplicate_string, std::string("build_trie: ") + e.what());
    }
    throw;
  }
  return trie;
}

}  // namespace patricia_lab
