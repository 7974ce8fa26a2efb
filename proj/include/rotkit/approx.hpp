#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

#include "rotkit/common_edges.hpp"
#include "rotkit/error.hpp"
#include "rotkit/oracle.hpp"
#include "rotkit/rotation.hpp"
#include "rotkit/tree.hpp"

namespace rotkit {

/// Bracket on the rotation distance: lower = n-e-1 and upper = 2*lower,
/// where e counts common edges. Equal trees (and n = 0) give (0, 0).
struct DistanceBounds {
  std::size_t n = 0;
  std::size_t e = 0;
  std::size_t lower = 0;
  std::size_t upper = 0;

  friend bool operator==(const DistanceBounds&, const DistanceBounds&) = default;
};

inline DistanceBounds distance_bounds(const Tree& s, const Tree& t) {
  const auto e = common_edges(s, t).size();
  DistanceBounds b;
  b.n = s.internal_count();
  b.e = e;
  // e = n-1 exactly when the trees are equal.
  b.lower = b.n == 0 ? 0 : b.n - 1 - e;
  b.upper = 2 * b.lower;
  return b;
}

namespace detail {

// Spine depth of each right rotation that turns `t` into a right comb over
// its atoms. Walks the right spine top-down, rotating at each position while
// the left child is internal and not opaque. `opaque` is indexed like
// t.nodes(); an empty span means no opaque nodes.
inline std::vector<std::uint32_t> comb_depths(const Tree& t, std::span<const char> opaque = {}) {
  auto is_atom_root = [&](Tree::Index i) {
    return !opaque.empty() && opaque[static_cast<std::size_t>(i)] != 0;
  };
  WorkTree w(t);
  std::vector<std::uint32_t> depths;
  Tree::Index* slot = &w.root;
  std::uint32_t depth = 0;
  while (*slot != Tree::kLeaf && !is_atom_root(*slot)) {
    for (;;) {
      const auto left = w.at(*slot).left;
      if (left == Tree::kLeaf || is_atom_root(left)) break;
      w.rotate(*slot, Direction::Right);
      depths.push_back(depth);
    }
    slot = &w.at(*slot).right;
    ++depth;
  }
  return depths;
}

}  // namespace detail

/// Right rotations turning `t` into the right comb over its atoms: the
/// original leaves plus each opaque subtree taken whole. Opaque intervals
/// must be edges of `t`. Nodes inside opaque subtrees are never rotated.
inline RotationSequence comb_sequence(const Tree& t, std::span<const LeafInterval> opaque = {}) {
  std::vector<char> flags;
  if (!opaque.empty()) {
    std::vector<LeafInterval> wanted(opaque.begin(), opaque.end());
    std::sort(wanted.begin(), wanted.end(), outer_first);
    wanted.erase(std::unique(wanted.begin(), wanted.end()), wanted.end());
    const auto spans = node_spans(t);
    flags.assign(spans.size(), 0);
    std::size_t k = 0;
    for (std::size_t i = 1; i < spans.size() && k < wanted.size(); ++i) {
      if (spans[i] == wanted[k]) {
        flags[i] = 1;
        ++k;
      } else if (!outer_first(spans[i], wanted[k])) {
        break;
      }
    }
    if (k != wanted.size()) {
      throw ArgumentError("opaque interval " + to_string(wanted[k]) + " is not an edge of the tree");
    }
  }
  RotationSequence seq;
  for (auto depth : detail::comb_depths(t, flags)) {
    seq.push_back(Direction::Right, RotationSequence::kRootAnchor, depth);
  }
  return seq;
}

/// Rotation sequence taking S to T with length at most 2(n-e-1).
///
/// Both trees are cut at their common edges. Each piece of S is combed to
/// the right comb over the piece's leaves and the comb is then unfolded
/// into the matching piece of T by replaying T's comb walk backwards with
/// left rotations. Pieces run outermost first, so when a piece is processed
/// everything above it already has T's shape and its root sits at the same
/// path as in T. Common edges are never rotated, so inner pieces ride along
/// as opaque subtrees.
inline RotationSequence approx_sequence(const Tree& s, const Tree& t) {
  const auto split = detail::split_pieces(s, t);
  RotationSequence seq;

  // Path anchors of T nodes, built on demand from parent links.
  const auto t_nodes = t.nodes();
  std::vector<Tree::Index> parent(t_nodes.size(), Tree::kLeaf);
  for (std::size_t i = 0; i < t_nodes.size(); ++i) {
    const auto here = static_cast<Tree::Index>(i);
    if (t_nodes[i].left != Tree::kLeaf) parent[static_cast<std::size_t>(t_nodes[i].left)] = here;
    if (t_nodes[i].right != Tree::kLeaf) parent[static_cast<std::size_t>(t_nodes[i].right)] = here;
  }
  constexpr auto kUnset = ~RotationSequence::Anchor{0};
  std::vector<RotationSequence::Anchor> anchor(t_nodes.size(), kUnset);
  if (!anchor.empty()) anchor[0] = RotationSequence::kRootAnchor;
  std::vector<Tree::Index> chain;
  auto anchor_of = [&](Tree::Index node) {
    chain.clear();
    for (auto v = node; anchor[static_cast<std::size_t>(v)] == kUnset; v = parent[static_cast<std::size_t>(v)]) {
      chain.push_back(v);
    }
    while (!chain.empty()) {
      const auto v = chain.back();
      chain.pop_back();
      const auto up = parent[static_cast<std::size_t>(v)];
      const Side side = t_nodes[static_cast<std::size_t>(up)].left == v ? Side::Left : Side::Right;
      anchor[static_cast<std::size_t>(v)] = seq.extend(anchor[static_cast<std::size_t>(up)], side);
    }
    return anchor[static_cast<std::size_t>(node)];
  };

  for (std::size_t p = 0; p < split.pieces.size(); ++p) {
    const auto& piece = split.pieces[p];
    if (piece.size < 2) continue;  // a single node has nothing to rotate
    const auto down = detail::comb_depths(piece.s_piece);
    const auto up = detail::comb_depths(piece.t_piece);
    const auto a = anchor_of(split.t_roots[p]);
    for (auto depth : down) seq.push_back(Direction::Right, a, depth);
    for (auto it = up.rbegin(); it != up.rend(); ++it) seq.push_back(Direction::Left, a, *it);
  }
  return seq;
}

struct RefinedUpper {
  std::size_t value = 0;
  bool is_exact = false;

  friend bool operator==(const RefinedUpper&, const RefinedUpper&) = default;
};

struct RefinedOptions {
  // Pieces with at most this many internal nodes are solved exactly.
  std::size_t exact_threshold = 10;
  // 2n-6 is applied to pieces with at least this many internal nodes.
  std::size_t sharp_bound_min_size = 13;
  std::size_t state_limit = kDefaultStateLimit;
};

/// Sum over the pieces of the best known upper bound for each: the exact
/// distance for small pieces, otherwise min(2n_i-2, 2n_i-6) where the
/// sharper bound applies. Distance is additive over the split, so the sum is
/// the exact distance when every piece was solved exactly.
inline RefinedUpper refined_upper(const Tree& s, const Tree& t, const RefinedOptions& opts = {}) {
  const auto pieces = split_at_common_edges(s, t);
  RefinedUpper r{0, true};
  for (const auto& piece : pieces) {
    const auto ni = piece.size;
    if (ni <= opts.exact_threshold) {
      r.value += exact_distance(piece.s_piece, piece.t_piece, opts.state_limit);
      continue;
    }
    std::size_t bound = 2 * ni - 2;
    if (ni >= opts.sharp_bound_min_size) bound = std::min(bound, 2 * ni - 6);
    r.value += bound;
    r.is_exact = false;
  }
  return r;
}

}  // namespace rotkit
