#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rotkit/error.hpp"
#include "rotkit/tree.hpp"

namespace rotkit {

/// Contiguous leaf span [lo, hi], 1-based and inclusive. In an ordered tree
/// the leaves below an internal edge always form such a span, so the span
/// names the partition the edge induces.
struct LeafInterval {
  std::uint32_t lo = 0;
  std::uint32_t hi = 0;

  friend bool operator==(const LeafInterval&, const LeafInterval&) = default;
  friend auto operator<=>(const LeafInterval&, const LeafInterval&) = default;
};

inline std::string to_string(const LeafInterval& iv) {
  return "[" + std::to_string(iv.lo) + "," + std::to_string(iv.hi) + "]";
}

/// Preorder order on a laminar family: lo ascending, then hi descending, so
/// every interval precedes the intervals nested inside it.
inline bool outer_first(const LeafInterval& a, const LeafInterval& b) noexcept {
  return a.lo != b.lo ? a.lo < b.lo : a.hi > b.hi;
}

/// Leaf span of every internal node, indexed like Tree::nodes().
inline std::vector<LeafInterval> node_spans(const Tree& t) {
  const auto nodes = t.nodes();
  const auto size = subtree_sizes(t);
  std::vector<LeafInterval> span(nodes.size());
  if (nodes.empty()) return span;
  span[0].lo = 1;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    span[i].hi = span[i].lo + size[i];
    const auto& n = nodes[i];
    std::uint32_t left_leaves = 1;
    if (n.left != Tree::kLeaf) {
      span[static_cast<std::size_t>(n.left)].lo = span[i].lo;
      left_leaves = size[static_cast<std::size_t>(n.left)] + 1;
    }
    if (n.right != Tree::kLeaf) span[static_cast<std::size_t>(n.right)].lo = span[i].lo + left_leaves;
  }
  return span;
}

/// One interval per internal edge (every internal node but the root), in
/// outer_first order. Size is max(n-1, 0).
inline std::vector<LeafInterval> edge_intervals(const Tree& t) {
  auto spans = node_spans(t);
  if (!spans.empty()) spans.erase(spans.begin());
  return spans;
}

namespace detail {

inline void require_same_leaves(const Tree& s, const Tree& t) {
  if (s.leaf_count() != t.leaf_count()) throw SizeMismatchError(s.leaf_count(), t.leaf_count());
}

struct CommonNode {
  LeafInterval interval;
  Tree::Index s_node;
  Tree::Index t_node;
};

// Both span arrays are in preorder, which is outer_first order, so a single
// merge finds the shared intervals.
inline std::vector<CommonNode> match_common(std::span<const LeafInterval> s_spans,
                                            std::span<const LeafInterval> t_spans) {
  std::vector<CommonNode> common;
  std::size_t i = 1, j = 1;  // skip the roots
  while (i < s_spans.size() && j < t_spans.size()) {
    if (s_spans[i] == t_spans[j]) {
      common.push_back({s_spans[i], static_cast<Tree::Index>(i), static_cast<Tree::Index>(j)});
      ++i;
      ++j;
    } else if (outer_first(s_spans[i], t_spans[j])) {
      ++i;
    } else {
      ++j;
    }
  }
  return common;
}

}  // namespace detail

/// Intervals shared by both trees' edge sets, in outer_first order. Its size
/// is the number of common edges e.
inline std::vector<LeafInterval> common_edges(const Tree& s, const Tree& t) {
  detail::require_same_leaves(s, t);
  const auto matched = detail::match_common(node_spans(s), node_spans(t));
  std::vector<LeafInterval> out;
  out.reserve(matched.size());
  for (const auto& c : matched) out.push_back(c.interval);
  return out;
}

/// A leaf of a piece that stands for a contracted common subtree.
struct Placeholder {
  std::size_t leaf = 0;  // position within the piece, 1-based
  LeafInterval interval;

  friend bool operator==(const Placeholder&, const Placeholder&) = default;
};

/// Corresponding pieces of S and T left after cutting every common edge.
/// Both pieces have size+1 leaves and share no common edge. `outer` is the
/// common interval the pieces hang from, or empty for the pieces holding the
/// roots. Placeholders are sorted by leaf position and shared by both sides.
struct PiecePair {
  Tree s_piece;
  Tree t_piece;
  std::size_t size = 0;
  std::optional<LeafInterval> outer;
  std::vector<Placeholder> placeholders;
};

enum class PieceSide : std::uint8_t { Source, Target };

namespace detail {

struct ExtractedPiece {
  Tree tree;
  std::vector<Placeholder> placeholders;
};

// Subtree at `start` with every cut descendant replaced by a leaf.
inline ExtractedPiece extract_piece(const Tree& t, Tree::Index start, std::span<const char> cut,
                                    std::span<const LeafInterval> spans) {
  ExtractedPiece piece;
  std::vector<Tree::Node> nodes;
  struct Item {
    Tree::Index source;
    Tree::Index parent;
    Side side;
  };
  std::vector<Item> stack{{start, Tree::kLeaf, Side::Left}};
  std::size_t leaf = 0;
  while (!stack.empty()) {
    const Item it = stack.back();
    stack.pop_back();
    const bool internal = it.source != Tree::kLeaf &&
                          (it.parent == Tree::kLeaf || !cut[static_cast<std::size_t>(it.source)]);
    if (!internal) {
      ++leaf;
      if (it.source != Tree::kLeaf) {
        piece.placeholders.push_back({leaf, spans[static_cast<std::size_t>(it.source)]});
      }
      continue;
    }
    const auto here = static_cast<Tree::Index>(nodes.size());
    nodes.emplace_back();
    if (it.parent != Tree::kLeaf) {
      auto& p = nodes[static_cast<std::size_t>(it.parent)];
      (it.side == Side::Left ? p.left : p.right) = here;
    }
    const auto& n = t.node(it.source);
    stack.push_back({n.right, here, Side::Right});
    stack.push_back({n.left, here, Side::Left});
  }
  piece.tree = Tree::from_links(nodes, nodes.empty() ? Tree::kLeaf : 0);
  return piece;
}

struct Split {
  std::vector<PiecePair> pieces;
  std::vector<Tree::Index> t_roots;  // node in T each piece hangs from
};

inline Split split_pieces(const Tree& s, const Tree& t) {
  require_same_leaves(s, t);
  const auto s_spans = node_spans(s);
  const auto t_spans = node_spans(t);
  const auto common = match_common(s_spans, t_spans);

  std::vector<char> s_cut(s_spans.size(), 0), t_cut(t_spans.size(), 0);
  for (const auto& c : common) {
    s_cut[static_cast<std::size_t>(c.s_node)] = 1;
    t_cut[static_cast<std::size_t>(c.t_node)] = 1;
  }

  Split out;
  out.pieces.reserve(common.size() + 1);
  out.t_roots.reserve(common.size() + 1);
  auto emit = [&](Tree::Index s_root, Tree::Index t_root, std::optional<LeafInterval> outer) {
    auto sp = extract_piece(s, s_root, s_cut, s_spans);
    auto tp = extract_piece(t, t_root, t_cut, t_spans);
    PiecePair pair;
    pair.size = sp.tree.internal_count();
    pair.s_piece = std::move(sp.tree);
    pair.t_piece = std::move(tp.tree);
    pair.outer = outer;
    pair.placeholders = std::move(sp.placeholders);
    out.pieces.push_back(std::move(pair));
    out.t_roots.push_back(t_root);
  };
  if (s.is_single_leaf()) {
    emit(Tree::kLeaf, Tree::kLeaf, std::nullopt);
  } else {
    emit(0, 0, std::nullopt);
  }
  for (const auto& c : common) emit(c.s_node, c.t_node, c.interval);
  return out;
}

}  // namespace detail

/// Cuts both trees at every common edge. Yields e+1 piece pairs in
/// outer_first order of their outer interval, root pieces first; the sizes
/// sum to n.
inline std::vector<PiecePair> split_at_common_edges(const Tree& s, const Tree& t) {
  return detail::split_pieces(s, t).pieces;
}

/// Rebuilds one side of a split by substituting each placeholder with the
/// piece hanging from its interval. Inverse of split_at_common_edges.
inline Tree reassemble(std::span<const PiecePair> pieces, PieceSide side) {
  if (pieces.empty()) throw ArgumentError("no pieces to reassemble");
  std::vector<std::pair<LeafInterval, std::size_t>> by_outer;
  std::size_t root_piece = pieces.size();
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    if (pieces[i].outer) {
      by_outer.emplace_back(*pieces[i].outer, i);
    } else if (root_piece == pieces.size()) {
      root_piece = i;
    } else {
      throw ArgumentError("more than one root piece");
    }
  }
  if (root_piece == pieces.size()) throw ArgumentError("no root piece");
  std::sort(by_outer.begin(), by_outer.end());
  auto find_piece = [&](const LeafInterval& iv) {
    auto it = std::lower_bound(by_outer.begin(), by_outer.end(), std::make_pair(iv, std::size_t{0}));
    if (it == by_outer.end() || it->first != iv) {
      throw ArgumentError("placeholder " + to_string(iv) + " has no matching piece");
    }
    return it->second;
  };
  auto tree_of = [&](std::size_t p) -> const Tree& {
    return side == PieceSide::Source ? pieces[p].s_piece : pieces[p].t_piece;
  };

  std::vector<Tree::Node> nodes;
  std::vector<std::size_t> leaves_seen(pieces.size(), 0);
  std::vector<std::size_t> next_placeholder(pieces.size(), 0);
  std::vector<char> used(pieces.size(), 0);
  struct Item {
    std::size_t piece;
    Tree::Index node;
    Tree::Index parent;
    Side side;
  };
  auto link = [&](Tree::Index parent, Side s, Tree::Index child) {
    if (parent == Tree::kLeaf) return;
    auto& p = nodes[static_cast<std::size_t>(parent)];
    (s == Side::Left ? p.left : p.right) = child;
  };
  auto enter = [&](std::size_t p, Tree::Index parent, Side s, std::vector<Item>& stack) {
    if (used[p]) throw ArgumentError("piece used twice during reassembly");
    used[p] = 1;
    stack.push_back({p, tree_of(p).root(), parent, s});
  };

  std::vector<Item> stack;
  enter(root_piece, Tree::kLeaf, Side::Left, stack);
  while (!stack.empty()) {
    const Item it = stack.back();
    stack.pop_back();
    if (it.node == Tree::kLeaf) {
      const auto pos = ++leaves_seen[it.piece];
      const auto& ph = pieces[it.piece].placeholders;
      auto& k = next_placeholder[it.piece];
      if (k < ph.size() && ph[k].leaf == pos) {
        enter(find_piece(ph[k].interval), it.parent, it.side, stack);
        ++k;
      } else {
        link(it.parent, it.side, Tree::kLeaf);
      }
      continue;
    }
    const auto here = static_cast<Tree::Index>(nodes.size());
    nodes.emplace_back();
    link(it.parent, it.side, here);
    const auto& n = tree_of(it.piece).node(it.node);
    stack.push_back({it.piece, n.right, here, Side::Right});
    stack.push_back({it.piece, n.left, here, Side::Left});
  }
  for (std::size_t p = 0; p < pieces.size(); ++p) {
    if (!used[p]) throw ArgumentError("piece not reachable from the root piece");
  }
  return Tree::from_links(nodes, nodes.empty() ? Tree::kLeaf : 0);
}

}  // namespace rotkit
