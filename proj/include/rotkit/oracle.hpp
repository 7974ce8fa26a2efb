#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <unordered_map>
#include <utility>
#include <vector>

#include "rotkit/common_edges.hpp"
#include "rotkit/error.hpp"
#include "rotkit/rotation.hpp"
#include "rotkit/tree.hpp"

namespace rotkit {

// Exact solving over the rotation graph: vertices are all tree shapes with
// n internal nodes, edges are single rotations.

inline constexpr std::size_t kDefaultStateLimit = 2'000'000;
inline constexpr std::size_t kDefaultEnumerationMax = 12;

/// Catalan(n), the number of shapes with n internal nodes. Exact for n <= 35.
inline std::uint64_t catalan(std::size_t n) {
  std::uint64_t c = 1;
  for (std::size_t k = 0; k < n; ++k) {
    // C(k+1) = C(k) * 2(2k+1) / (k+2); the product stays divisible.
    c = c * 2 * (2 * k + 1) / (k + 2);
  }
  return c;
}

namespace detail {

// Calls f(direction, node, neighbor) for every valid rotation of t, node by
// node in preorder, right before left.
template <typename F>
void for_each_neighbor(const Tree& t, F&& f) {
  const auto nodes = t.nodes();
  if (nodes.empty()) return;
  std::vector<Tree::Index> parent(nodes.size(), Tree::kLeaf);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].left != Tree::kLeaf) parent[static_cast<std::size_t>(nodes[i].left)] = static_cast<Tree::Index>(i);
    if (nodes[i].right != Tree::kLeaf) parent[static_cast<std::size_t>(nodes[i].right)] = static_cast<Tree::Index>(i);
  }
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto v = static_cast<Tree::Index>(i);
    for (Direction d : {Direction::Right, Direction::Left}) {
      const auto child = d == Direction::Right ? nodes[i].left : nodes[i].right;
      if (child == Tree::kLeaf) continue;
      WorkTree w(t);
      Tree::Index* slot = &w.root;
      if (const auto up = parent[i]; up != Tree::kLeaf) {
        auto& pn = w.at(up);
        slot = pn.left == v ? &pn.left : &pn.right;
      }
      w.rotate(*slot, d);
      f(d, v, w.freeze());
    }
  }
}

}  // namespace detail

struct Neighbor {
  RotationOp op;
  Tree tree;
};

/// Every tree one rotation away from t, with the op that reaches it. There
/// is one valid rotation per internal edge, so a tree with n internal nodes
/// has n-1 neighbors.
inline std::vector<Neighbor> rotation_neighbors(const Tree& t) {
  std::vector<Path> paths(t.internal_count());
  for (std::size_t i = 0; i < paths.size(); ++i) {
    const auto& n = t.node(static_cast<Tree::Index>(i));
    for (Side s : {Side::Left, Side::Right}) {
      const auto child = s == Side::Left ? n.left : n.right;
      if (child == Tree::kLeaf) continue;
      paths[static_cast<std::size_t>(child)] = paths[i];
      paths[static_cast<std::size_t>(child)].push_back(s);
    }
  }
  std::vector<Neighbor> out;
  detail::for_each_neighbor(t, [&](Direction d, Tree::Index v, Tree&& next) {
    out.push_back({RotationOp{d, paths[static_cast<std::size_t>(v)]}, std::move(next)});
  });
  return out;
}

/// Rotation distance by bidirectional breadth-first search keyed on
/// canonical codes. Each round expands one full level of the smaller
/// frontier. Throws StateLimitError once more than `state_limit` codes are
/// stored.
inline std::size_t exact_distance(const Tree& s, const Tree& t,
                                  std::size_t state_limit = kDefaultStateLimit) {
  detail::require_same_leaves(s, t);
  if (s == t) return 0;

  using Seen = std::unordered_map<CanonicalCode, std::uint32_t, CanonicalCode::Hasher>;
  struct Side_ {
    Seen seen;
    std::vector<Tree> frontier;
    std::uint32_t depth = 0;
  };
  Side_ a, b;
  a.seen.emplace(canonical_code(s), 0);
  b.seen.emplace(canonical_code(t), 0);
  a.frontier.push_back(s);
  b.frontier.push_back(t);
  if (state_limit < 2) throw StateLimitError(state_limit);

  for (;;) {
    if (a.frontier.empty() || b.frontier.empty()) {
      throw Error("rotation graph search exhausted without meeting");
    }
    auto& grow = a.frontier.size() <= b.frontier.size() ? a : b;
    auto& other = &grow == &a ? b : a;

    std::size_t best = std::numeric_limits<std::size_t>::max();
    std::vector<Tree> next;
    for (const auto& x : grow.frontier) {
      detail::for_each_neighbor(x, [&](Direction, Tree::Index, Tree&& y) {
        auto code = canonical_code(y);
        if (auto hit = other.seen.find(code); hit != other.seen.end()) {
          best = std::min<std::size_t>(best, grow.depth + 1 + hit->second);
        }
        if (grow.seen.emplace(std::move(code), grow.depth + 1).second) {
          if (a.seen.size() + b.seen.size() > state_limit) throw StateLimitError(state_limit);
          next.push_back(std::move(y));
        }
      });
    }
    if (best != std::numeric_limits<std::size_t>::max()) return best;
    grow.frontier = std::move(next);
    ++grow.depth;
  }
}

/// All shapes with n internal nodes, ordered by canonical code.
inline std::vector<Tree> enumerate_trees(std::size_t n, std::size_t max_n = kDefaultEnumerationMax) {
  if (n > max_n) {
    throw ArgumentError("enumeration size " + std::to_string(n) + " exceeds maximum " +
                        std::to_string(max_n));
  }
  // by_size[k] holds every shape with k internal nodes.
  std::vector<std::vector<Tree>> by_size(n + 1);
  by_size[0].emplace_back();
  std::vector<Tree::Node> links;
  for (std::size_t k = 1; k <= n; ++k) {
    for (std::size_t left = 0; left < k; ++left) {
      for (const auto& l : by_size[left]) {
        for (const auto& r : by_size[k - 1 - left]) {
          links.assign(k, {});
          const auto shift_left = 1;
          const auto shift_right = static_cast<Tree::Index>(1 + left);
          for (std::size_t i = 0; i < l.internal_count(); ++i) {
            auto node = l.node(static_cast<Tree::Index>(i));
            if (node.left != Tree::kLeaf) node.left += shift_left;
            if (node.right != Tree::kLeaf) node.right += shift_left;
            links[i + 1] = node;
          }
          for (std::size_t i = 0; i < r.internal_count(); ++i) {
            auto node = r.node(static_cast<Tree::Index>(i));
            if (node.left != Tree::kLeaf) node.left += shift_right;
            if (node.right != Tree::kLeaf) node.right += shift_right;
            links[i + 1 + left] = node;
          }
          links[0].left = l.is_single_leaf() ? Tree::kLeaf : shift_left;
          links[0].right = r.is_single_leaf() ? Tree::kLeaf : shift_right;
          by_size[k].push_back(Tree::from_links(links, 0));
        }
      }
    }
  }
  auto& all = by_size[n];
  std::vector<std::pair<CanonicalCode, std::size_t>> keyed;
  keyed.reserve(all.size());
  for (std::size_t i = 0; i < all.size(); ++i) keyed.emplace_back(canonical_code(all[i]), i);
  std::sort(keyed.begin(), keyed.end());
  std::vector<Tree> out;
  out.reserve(all.size());
  for (const auto& [code, i] : keyed) out.push_back(std::move(all[i]));
  return out;
}

struct Diameter {
  std::size_t value = 0;
  Tree from;
  Tree to;
};

/// Largest rotation distance between two shapes with n internal nodes, with
/// the first maximizing pair in enumeration order. Runs a breadth-first
/// search from every shape, so Catalan(n) must not exceed `state_limit`.
inline Diameter diameter(std::size_t n, std::size_t state_limit = kDefaultStateLimit) {
  if (n > 35 || catalan(n) > state_limit) throw StateLimitError(state_limit);
  auto trees = enumerate_trees(n, std::numeric_limits<std::size_t>::max());
  std::unordered_map<CanonicalCode, std::uint32_t, CanonicalCode::Hasher> index;
  index.reserve(trees.size());
  for (std::size_t i = 0; i < trees.size(); ++i) {
    index.emplace(canonical_code(trees[i]), static_cast<std::uint32_t>(i));
  }
  std::vector<std::vector<std::uint32_t>> adj(trees.size());
  for (std::size_t i = 0; i < trees.size(); ++i) {
    detail::for_each_neighbor(trees[i], [&](Direction, Tree::Index, Tree&& y) {
      adj[i].push_back(index.at(canonical_code(y)));
    });
  }

  Diameter best;
  best.from = trees.front();
  best.to = trees.front();
  std::size_t from = 0, to = 0;
  std::vector<std::uint32_t> dist(trees.size());
  std::vector<std::uint32_t> queue(trees.size());
  constexpr auto kUnseen = std::numeric_limits<std::uint32_t>::max();
  for (std::size_t src = 0; src < trees.size(); ++src) {
    std::fill(dist.begin(), dist.end(), kUnseen);
    std::size_t head = 0, tail = 0;
    dist[src] = 0;
    queue[tail++] = static_cast<std::uint32_t>(src);
    while (head < tail) {
      const auto u = queue[head++];
      for (auto v : adj[u]) {
        if (dist[v] != kUnseen) continue;
        dist[v] = dist[u] + 1;
        queue[tail++] = v;
      }
    }
    for (std::size_t dst = 0; dst < trees.size(); ++dst) {
      if (dist[dst] > best.value) {
        best.value = dist[dst];
        from = src;
        to = dst;
      }
    }
  }
  best.from = trees[from];
  best.to = trees[to];
  return best;
}

}  // namespace rotkit
