#include "patricia_lab/patricia_tree.hpp"

#include <algorithm>
#include <unordered_set>
#include <utility>

#include <nlohmann/json.hpp>

#include "patricia_lab/error.hpp"

namespace patricia_lab {

namespace {

const LazyBitString& lookup(std::span<const LazyBitString> pool, std::uint32_t id) {
  require(id < pool.size() && pool[id].id() == id, "string id " + std::to_string(id) + " is not at pool[id]");
  return pool[id];
}

}  // namespace

void PatriciaTree::insert(std::span<const LazyBitString> pool, std::uint32_t id) {
  const LazyBitString& s = lookup(pool, id);
  PatriciaNode leaf;
  leaf.string_id = id;
  if (empty()) {
    nodes_.push_back(leaf);
    root_ = 0;
    return;
  }

  std::uint32_t cur = root_;
  // A split past the guard of s lies beyond any position where s can still
  // differ from the subtree, so either branch yields a valid witness.
  while (!nodes_[cur].is_leaf()) {
    const std::uint64_t split = nodes_[cur].split_index;
    cur = nodes_[cur].child[split <= s.depth_limit() && s.bit_at(split)];
  }
  const std::uint64_t d = first_difference(s, lookup(pool, nodes_[cur].string_id));

  // Descend again, stopping above the first node that tests a bit >= d.
  std::uint32_t parent = kNoNode;
  int parent_side = 0;
  cur = root_;
  while (!nodes_[cur].is_leaf() && nodes_[cur].split_index < d) {
    parent = cur;
    parent_side = s.bit_at(nodes_[cur].split_index);
    cur = nodes_[cur].child[parent_side];
  }

  const int side = s.bit_at(d);
  const auto leaf_index = static_cast<std::uint32_t>(nodes_.size());
  const auto branch_index = leaf_index + 1;
  leaf.witness_prefix_length = d;
  PatriciaNode branch;
  branch.split_index = d;
  branch.child[side] = leaf_index;
  branch.child[1 - side] = cur;
  if (nodes_[cur].is_leaf()) nodes_[cur].witness_prefix_length = d;
  nodes_.push_back(leaf);
  nodes_.push_back(branch);
  if (parent == kNoNode) {
    root_ = branch_index;
  } else {
    nodes_[parent].child[parent_side] = branch_index;
  }
}

std::size_t PatriciaTree::leaf_count() const {
  return static_cast<std::size_t>(std::count_if(nodes_.begin(), nodes_.end(), [](const PatriciaNode& n) { return n.is_leaf(); }));
}

std::size_t PatriciaTree::internal_count() const { return nodes_.size() - leaf_count(); }

std::uint64_t PatriciaTree::height() const {
  if (empty()) return 0;
  std::uint64_t best = 0;
  std::vector<std::pair<std::uint32_t, std::uint64_t>> stack{{root_, 0}};
  while (!stack.empty()) {
    auto [node, depth] = stack.back();
    stack.pop_back();
    const PatriciaNode& n = nodes_[node];
    if (n.is_leaf()) {
      best = std::max(best, depth);
      continue;
    }
    for (std::uint32_t c : n.child) {
      if (c != kNoNode) stack.emplace_back(c, depth + 1);
    }
  }
  return best;
}

std::uint64_t PatriciaTree::max_split_index() const {
  std::uint64_t best = 0;
  for (const auto& n : nodes_) {
    if (!n.is_leaf()) best = std::max(best, n.split_index);
  }
  return best;
}

PatriciaTree compress(const Trie& trie) {
  require(trie.root != kNoNode && trie.root < trie.nodes.size(), "malformed trie: no root");
  PatriciaTree tree;
  auto& out = tree.mutable_nodes();

  // Follows out-degree-1 chains down to the next leaf or branching node.
  auto skip_unary = [&](std::uint32_t node) {
    for (std::size_t steps = 0;; ++steps) {
      require(node < trie.nodes.size() && steps <= trie.nodes.size(), "malformed trie: bad child link");
      const TrieNode& t = trie.nodes[node];
      if (t.is_leaf()) {
        require(t.out_degree() == 0, "malformed trie: leaf with children");
        return node;
      }
      if (t.out_degree() == 2) return node;
      require(t.out_degree() == 1, "malformed trie: childless internal node");
      node = t.child[0] != kNoNode ? t.child[0] : t.child[1];
    }
  };

  // (trie node, slot in `out` to patch with the new index)
  struct Task {
    std::uint32_t trie_node;
    std::uint32_t parent;
    int side;
  };
  std::vector<Task> stack{{skip_unary(trie.root), kNoNode, 0}};
  while (!stack.empty()) {
    const Task task = stack.back();
    stack.pop_back();
    const TrieNode& t = trie.nodes[task.trie_node];
    const auto index = static_cast<std::uint32_t>(out.size());
    PatriciaNode node;
    if (t.is_leaf()) {
      node.string_id = t.leaf_string_id;
      node.witness_prefix_length = t.prefix_depth;
    } else {
      node.split_index = t.prefix_depth + 1;
    }
    out.push_back(node);
    if (task.parent == kNoNode) {
      tree.set_root(index);
    } else {
      out[task.parent].child[task.side] = index;
    }
    if (!t.is_leaf()) {
      for (int side = 0; side < 2; ++side) stack.push_back({skip_unary(t.child[side]), index, side});
    }
  }
  return tree;
}

PatriciaTree build_patricia(std::span<const LazyBitString> pool) {
  PatriciaTree tree;
  for (const auto& s : pool) tree.insert(pool, s.id());
  return tree;
}

bool structurally_equal(const PatriciaTree& a, const PatriciaTree& b) {
  if (a.empty() || b.empty()) return a.empty() && b.empty();
  std::vector<std::pair<std::uint32_t, std::uint32_t>> stack{{a.root(), b.root()}};
  while (!stack.empty()) {
    auto [ia, ib] = stack.back();
    stack.pop_back();
    if ((ia == kNoNode) != (ib == kNoNode)) return false;
    if (ia == kNoNode) continue;
    const PatriciaNode& na = a.nodes()[ia];
    const PatriciaNode& nb = b.nodes()[ib];
    if (na.is_leaf() != nb.is_leaf()) return false;
    if (na.is_leaf()) {
      if (na.string_id != nb.string_id || na.witness_prefix_length != nb.witness_prefix_length) return false;
      continue;
    }
    if (na.split_index != nb.split_index) return false;
    stack.emplace_back(na.child[0], nb.child[0]);
    stack.emplace_back(na.child[1], nb.child[1]);
  }
  return true;
}

std::vector<std::string> validate(const PatriciaTree& tree, std::span<const LazyBitString> pool) {
  std::vector<std::string> out;
  if (tree.empty()) return out;
  const auto& nodes = tree.nodes();
  if (tree.root() >= nodes.size()) {
    out.push_back("root index out of range");
    return out;
  }

  struct Frame {
    std::uint32_t node;
    std::size_t depth;
    std::uint64_t parent_split;
    int dir;
  };
  // path[i] = (split index, direction taken) of the i-th ancestor.
  std::vector<std::pair<std::uint64_t, int>> path;
  std::vector<Frame> stack{{tree.root(), 0, 0, 0}};
  std::vector<bool> seen(nodes.size(), false);
  std::size_t leaves = 0;
  std::size_t internals = 0;

  while (!stack.empty()) {
    const Frame f = stack.back();
    stack.pop_back();
    path.resize(f.depth == 0 ? 0 : f.depth - 1);
    if (f.depth > 0) path.emplace_back(f.parent_split, f.dir);
    const std::string where = "node " + std::to_string(f.node);
    if (seen[f.node]) {
      out.push_back(where + ": reached twice (cycle or shared child)");
      continue;
    }
    seen[f.node] = true;
    const PatriciaNode& n = nodes[f.node];

    if (n.is_leaf()) {
      ++leaves;
      if (n.child[0] != kNoNode || n.child[1] != kNoNode) out.push_back(where + ": leaf with children");
      if (n.string_id >= pool.size() || pool[n.string_id].id() != n.string_id) {
        out.push_back(where + ": leaf string id " + std::to_string(n.string_id) + " not in pool");
        continue;
      }
      const std::uint64_t expected_witness = path.empty() ? 0 : path.back().first;
      if (n.witness_prefix_length != expected_witness) {
        out.push_back(where + ": witness prefix length " + std::to_string(n.witness_prefix_length) +
                      " != parent split index " + std::to_string(expected_witness));
      }
      const LazyBitString& s = pool[n.string_id];
      try {
        for (const auto& [split, dir] : path) {
          if (static_cast<int>(s.bit_at(split)) != dir) {
            out.push_back(where + ": string " + std::to_string(n.string_id) + " has bit " +
                          std::to_string(1 - dir) + " at split index " + std::to_string(split) +
                          " but sits on branch " + std::to_string(dir));
            break;
          }
        }
      } catch (const Error& e) {
        out.push_back(where + ": path check failed: " + e.what());
      }
      continue;
    }

    ++internals;
    const int degree = (n.child[0] != kNoNode) + (n.child[1] != kNoNode);
    if (degree != 2) out.push_back(where + ": out-degree " + std::to_string(degree));
    if (n.split_index == 0) out.push_back(where + ": split index 0 (positions start at 1)");
    if (f.depth > 0 && n.split_index <= f.parent_split) {
      out.push_back(where + ": non-increasing split index " + std::to_string(f.parent_split) + " -> " +
                    std::to_string(n.split_index));
    }
    for (int side = 0; side < 2; ++side) {
      const std::uint32_t c = n.child[side];
      if (c == kNoNode) continue;
      if (c >= nodes.size()) {
        out.push_back(where + ": child index out of range");
        continue;
      }
      stack.push_back({c, f.depth + 1, n.split_index, side});
    }
  }
  if (internals + 1 != leaves) {
    out.push_back("node count identity: " + std::to_string(internals) + " internal nodes for " +
                  std::to_string(leaves) + " leaves");
  }
  return out;
}

std::size_t distinct_first_one_count(std::span<const LazyBitString> strings) {
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(strings.size() * 2);
  for (const auto& s : strings) seen.insert(s.first_one_index());
  return seen.size();
}

nlohmann::json to_json(const PatriciaTree& tree) {
  using nlohmann::json;
  if (tree.empty()) return json(nullptr);
  // Built bottom-up from a post-order so deep chains do not recurse.
  const auto& nodes = tree.nodes();
  std::vector<json> built(nodes.size());
  std::vector<std::pair<std::uint32_t, bool>> stack{{tree.root(), false}};
  while (!stack.empty()) {
    auto [i, expanded] = stack.back();
    stack.pop_back();
    const PatriciaNode& n = nodes[i];
    if (n.is_leaf()) {
      built[i] = json{{"leaf", n.string_id}, {"witness_prefix_length", n.witness_prefix_length}};
      continue;
    }
    if (!expanded) {
      stack.emplace_back(i, true);
      for (std::uint32_t c : n.child) {
        if (c != kNoNode) stack.emplace_back(c, false);
      }
      continue;
    }
    json children = json::array();
    for (std::uint32_t c : n.child) children.push_back(c == kNoNode ? json(nullptr) : std::move(built[c]));
    built[i] = json{{"split_index", n.split_index}, {"children", std::move(children)}};
  }
  return std::move(built[tree.root()]);
}

}  // namespace patricia_lab
