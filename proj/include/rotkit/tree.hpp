#pragma once

#include <cctype>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rotkit/error.hpp"

namespace rotkit {

enum class Side : std::uint8_t { Left, Right };

/// An ordered extended binary tree: every internal node has exactly two
/// ordered children. Leaves carry no data; leaf k is the k-th leaf met in a
/// left-to-right traversal.
///
/// Internal nodes are stored in preorder, so node 0 is the root and two
/// trees have the same shape exactly when their node arrays compare equal.
class Tree {
 public:
  using Index = std::int32_t;
  static constexpr Index kLeaf = -1;

  struct Node {
    Index left = kLeaf;
    Index right = kLeaf;
    friend bool operator==(const Node&, const Node&) = default;
  };

  /// The single-leaf tree (no internal nodes).
  Tree() = default;

  /// Builds a tree from an arbitrary linked node array rooted at `root`
  /// (kLeaf for the single-leaf tree). Every node must be reachable from the
  /// root exactly once. The result is renumbered into preorder.
  static Tree from_links(std::span<const Node> links, Index root);

  std::size_t internal_count() const noexcept { return nodes_.size(); }
  std::size_t leaf_count() const noexcept { return nodes_.size() + 1; }
  bool is_single_leaf() const noexcept { return nodes_.empty(); }
  Index root() const noexcept { return nodes_.empty() ? kLeaf : 0; }

  const Node& node(Index i) const { return nodes_[static_cast<std::size_t>(i)]; }
  std::span<const Node> nodes() const noexcept { return nodes_; }

  static bool is_leaf(Index child) noexcept { return child == kLeaf; }

  friend bool operator==(const Tree&, const Tree&) = default;

 private:
  explicit Tree(std::vector<Node> preorder) : nodes_(std::move(preorder)) {}

  friend Tree build_comb(std::size_t, Side);

  std::vector<Node> nodes_;
};

inline Tree Tree::from_links(std::span<const Node> links, Index root) {
  if (root == kLeaf) {
    if (!links.empty()) throw ArgumentError("unreachable nodes in tree links");
    return Tree{};
  }
  const auto count = links.size();
  if (root < 0 || static_cast<std::size_t>(root) >= count) {
    throw ArgumentError("tree root index out of range");
  }

  std::vector<Node> out;
  out.reserve(count);
  std::vector<char> seen(count, 0);

  struct Pending {
    Index source;
    Index parent;  // index in `out`, or kLeaf for the root
    Side side;
  };
  std::vector<Pending> stack{{root, kLeaf, Side::Left}};
  while (!stack.empty()) {
    const Pending p = stack.back();
    stack.pop_back();
    if (p.source < 0 || static_cast<std::size_t>(p.source) >= count) {
      throw ArgumentError("child index out of range");
    }
    auto& flag = seen[static_cast<std::size_t>(p.source)];
    if (flag) throw ArgumentError("tree links contain a cycle or shared node");
    flag = 1;

    const auto here = static_cast<Index>(out.size());
    out.emplace_back();
    if (p.parent != kLeaf) {
      auto& parent = out[static_cast<std::size_t>(p.parent)];
      (p.side == Side::Left ? parent.left : parent.right) = here;
    }
    const Node& src = links[static_cast<std::size_t>(p.source)];
    if (src.right != kLeaf) stack.push_back({src.right, here, Side::Right});
    if (src.left != kLeaf) stack.push_back({src.left, here, Side::Left});
  }
  if (out.size() != count) throw ArgumentError("unreachable nodes in tree links");
  return Tree(std::move(out));
}

/// Number of internal nodes in each node's subtree (including itself),
/// indexed like Tree::nodes().
inline std::vector<std::uint32_t> subtree_sizes(const Tree& t) {
  const auto nodes = t.nodes();
  std::vector<std::uint32_t> size(nodes.size(), 1);
  // Children follow their parent in preorder, so a reverse sweep sees them first.
  for (std::size_t i = nodes.size(); i-- > 0;) {
    if (nodes[i].left != Tree::kLeaf) size[i] += size[static_cast<std::size_t>(nodes[i].left)];
    if (nodes[i].right != Tree::kLeaf) size[i] += size[static_cast<std::size_t>(nodes[i].right)];
  }
  return size;
}

inline std::size_t internal_count(const Tree& t) noexcept { return t.internal_count(); }

/// Internal nodes reached from the root by right-child links only, root included.
inline std::size_t right_spine_count(const Tree& t) noexcept {
  std::size_t count = 0;
  for (auto i = t.root(); i != Tree::kLeaf; i = t.node(i).right) ++count;
  return count;
}

/// Caterpillar with n internal nodes. A right comb has a leaf as every left
/// child; a left comb has a leaf as every right child.
inline Tree build_comb(std::size_t n, Side side) {
  std::vector<Tree::Node> nodes(n);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    (side == Side::Right ? nodes[i].right : nodes[i].left) = static_cast<Tree::Index>(i + 1);
  }
  return Tree(std::move(nodes));
}

// ---------------------------------------------------------------------------
// Text form
//
//   TREE := "." | LABEL | "(" TREE "," TREE ")"
//
// Whitespace is allowed between tokens. Labels are positive integers and must
// read 1..n+1 from left to right; a tree is either fully labeled or not at all.

inline Tree parse_tree(std::string_view text) {
  std::vector<Tree::Node> nodes;
  // Each frame is an open "(" node; `stage` counts the children read so far.
  struct Frame {
    Tree::Index node;
    int stage;
  };
  std::vector<Frame> open;
  std::size_t pos = 0;
  bool done = false;
  std::size_t dots = 0;
  std::size_t labels = 0;

  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto attach = [&](Tree::Index child) {
    if (open.empty()) {
      done = true;
      return;
    }
    auto& top = open.back();
    auto& parent = nodes[static_cast<std::size_t>(top.node)];
    (top.stage == 0 ? parent.left : parent.right) = child;
  };
  // After a complete subtree: expect "," or ")" as appropriate, closing
  // finished frames as we go.
  auto finish_subtree = [&] {
    while (!open.empty()) {
      skip_ws();
      auto& top = open.back();
      if (top.stage == 0) {
        if (pos >= text.size() || text[pos] != ',') throw ParseError(pos, "expected ','");
        ++pos;
        top.stage = 1;
        return;
      }
      if (pos >= text.size() || text[pos] != ')') throw ParseError(pos, "expected ')'");
      ++pos;
      open.pop_back();
    }
    done = true;
  };

  while (!done) {
    skip_ws();
    if (pos >= text.size()) throw ParseError(pos, "unexpected end of input");
    const char c = text[pos];
    if (c == '(') {
      ++pos;
      const auto idx = static_cast<Tree::Index>(nodes.size());
      nodes.emplace_back();
      if (!open.empty()) attach(idx);
      open.push_back({idx, 0});
    } else if (c == '.' || std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos;
      if (c == '.') {
        ++pos;
        ++dots;
      } else {
        std::uint64_t value = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
          value = value * 10 + static_cast<std::uint64_t>(text[pos] - '0');
          if (value > (std::uint64_t{1} << 40)) throw ParseError(start, "leaf label too large");
          ++pos;
        }
        ++labels;
        if (value != labels) {
          throw ParseError(start, "leaf label " + std::to_string(value) + " where " +
                                      std::to_string(labels) + " was expected");
        }
      }
      if (dots != 0 && labels != 0) throw ParseError(start, "mixed labeled and unlabeled leaves");
      if (!open.empty()) attach(Tree::kLeaf);
      finish_subtree();
    } else {
      throw ParseError(pos, std::string("unexpected character '") + c + "'");
    }
  }
  skip_ws();
  if (pos != text.size()) throw ParseError(pos, "trailing characters after tree");
  // The parser emits nodes in preorder already.
  return Tree::from_links(nodes, nodes.empty() ? Tree::kLeaf : 0);
}

inline std::string serialize_tree(const Tree& t, bool labeled = false) {
  std::string out;
  out.reserve(t.internal_count() * 4 + 1);
  std::size_t leaf = 0;
  auto emit_leaf = [&] {
    ++leaf;
    if (labeled) {
      out += std::to_string(leaf);
    } else {
      out += '.';
    }
  };
  if (t.is_single_leaf()) {
    emit_leaf();
    return out;
  }
  // Items are either a subtree to print or a literal separator.
  struct Item {
    Tree::Index node;
    char literal;  // 0 when `node` is meaningful
  };
  std::vector<Item> stack{{t.root(), 0}};
  while (!stack.empty()) {
    const Item item = stack.back();
    stack.pop_back();
    if (item.literal != 0) {
      out += item.literal;
      continue;
    }
    if (item.node == Tree::kLeaf) {
      emit_leaf();
      continue;
    }
    const auto& n = t.node(item.node);
    out += '(';
    stack.push_back({0, ')'});
    stack.push_back({n.right, 0});
    stack.push_back({0, ','});
    stack.push_back({n.left, 0});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Canonical code: preorder walk over all nodes, 1 for internal, 0 for leaf.
// A tree with n internal nodes has a code of length 2n+1.

class CanonicalCode {
 public:
  CanonicalCode() = default;

  std::size_t size() const noexcept { return bits_; }
  bool operator[](std::size_t i) const noexcept {
    return (static_cast<unsigned char>(bytes_[i / 8]) >> (7 - i % 8)) & 1U;
  }

  void push_back(bool bit) {
    if (bits_ % 8 == 0) bytes_.push_back('\0');
    if (bit) bytes_.back() = static_cast<char>(bytes_.back() | (0x80 >> (bits_ % 8)));
    ++bits_;
  }

  std::string to_string() const {
    std::string s(bits_, '0');
    for (std::size_t i = 0; i < bits_; ++i) {
      if ((*this)[i]) s[i] = '1';
    }
    return s;
  }

  static CanonicalCode from_string(std::string_view bits) {
    CanonicalCode code;
    for (std::size_t i = 0; i < bits.size(); ++i) {
      if (bits[i] != '0' && bits[i] != '1') throw ParseError(i, "expected '0' or '1'");
      code.push_back(bits[i] == '1');
    }
    return code;
  }

  // Bits are packed most-significant first with zero padding, so for equal
  // lengths byte order is bit-string order.
  friend bool operator==(const CanonicalCode&, const CanonicalCode&) = default;
  friend auto operator<=>(const CanonicalCode& a, const CanonicalCode& b) {
    if (auto c = a.bits_ <=> b.bits_; c != 0) return c;
    return a.bytes_ <=> b.bytes_;
  }

  std::size_t hash() const noexcept { return std::hash<std::string>{}(bytes_); }

  struct Hasher {
    std::size_t operator()(const CanonicalCode& c) const noexcept { return c.hash(); }
  };

 private:
  std::string bytes_;
  std::size_t bits_ = 0;
};

inline CanonicalCode canonical_code(const Tree& t) {
  CanonicalCode code;
  std::vector<Tree::Index> stack{t.root()};
  while (!stack.empty()) {
    const auto i = stack.back();
    stack.pop_back();
    if (i == Tree::kLeaf) {
      code.push_back(false);
      continue;
    }
    code.push_back(true);
    stack.push_back(t.node(i).right);
    stack.push_back(t.node(i).left);
  }
  return code;
}

inline Tree decode_tree(const CanonicalCode& code) {
  std::vector<Tree::Node> nodes;
  // Slots still waiting for a subtree, as (node, side); the root slot is kLeaf.
  std::vector<std::pair<Tree::Index, Side>> slots{{Tree::kLeaf, Side::Left}};
  for (std::size_t i = 0; i < code.size(); ++i) {
    if (slots.empty()) throw ParseError(i, "trailing bits after complete tree");
    const auto [parent, side] = slots.back();
    slots.pop_back();
    Tree::Index child = Tree::kLeaf;
    if (code[i]) {
      child = static_cast<Tree::Index>(nodes.size());
      nodes.emplace_back();
      slots.emplace_back(child, Side::Right);
      slots.emplace_back(child, Side::Left);
    }
    if (parent != Tree::kLeaf) {
      auto& p = nodes[static_cast<std::size_t>(parent)];
      (side == Side::Left ? p.left : p.right) = child;
    }
  }
  if (!slots.empty()) throw ParseError(code.size(), "incomplete canonical code");
  return Tree::from_links(nodes, nodes.empty() ? Tree::kLeaf : 0);
}

/// Uniformly random shape with n internal nodes, deterministic in (n, seed).
///
/// Grows the tree by leaf insertion: each step picks one of the 2k+1 nodes
/// uniformly, splices a new internal node above it and hangs a fresh leaf on
/// a uniformly chosen side. Every shape is reached by the same number of
/// step sequences.
inline Tree random_tree(std::size_t n, std::uint64_t seed) {
  if (n == 0) return Tree{};
  std::mt19937_64 rng(seed);
  // Slots 0..2n cover internal nodes and leaves alike.
  std::vector<std::int64_t> left{-1}, right{-1}, parent{-1};
  std::vector<char> internal{0};
  left.reserve(2 * n + 1);
  right.reserve(2 * n + 1);
  parent.reserve(2 * n + 1);
  internal.reserve(2 * n + 1);
  std::int64_t root = 0;
  auto add = [&](bool is_internal) {
    left.push_back(-1);
    right.push_back(-1);
    parent.push_back(-1);
    internal.push_back(is_internal ? 1 : 0);
    return static_cast<std::int64_t>(left.size() - 1);
  };

  for (std::size_t k = 0; k < n; ++k) {
    std::uniform_int_distribution<std::int64_t> pick(0, static_cast<std::int64_t>(2 * k));
    const auto x = pick(rng);
    const bool leaf_on_left = std::uniform_int_distribution<int>(0, 1)(rng) == 0;
    const auto fork = add(true);
    const auto leaf = add(false);
    const auto up = parent[static_cast<std::size_t>(x)];
    if (up == -1) {
      root = fork;
    } else {
      auto& slot = left[static_cast<std::size_t>(up)] == x ? left[static_cast<std::size_t>(up)]
                                                           : right[static_cast<std::size_t>(up)];
      slot = fork;
    }
    parent[static_cast<std::size_t>(fork)] = up;
    left[static_cast<std::size_t>(fork)] = leaf_on_left ? leaf : x;
    right[static_cast<std::size_t>(fork)] = leaf_on_left ? x : leaf;
    parent[static_cast<std::size_t>(x)] = fork;
    parent[static_cast<std::size_t>(leaf)] = fork;
  }

  // Compact internal slots into tree links.
  std::vector<Tree::Index> id(internal.size(), Tree::kLeaf);
  Tree::Index next = 0;
  for (std::size_t i = 0; i < internal.size(); ++i) {
    if (internal[i]) id[i] = next++;
  }
  std::vector<Tree::Node> links(n);
  for (std::size_t i = 0; i < internal.size(); ++i) {
    if (!internal[i]) continue;
    auto& node = links[static_cast<std::size_t>(id[i])];
    node.left = id[static_cast<std::size_t>(left[i])];
    node.right = id[static_cast<std::size_t>(right[i])];
  }
  return Tree::from_links(links, id[static_cast<std::size_t>(root)]);
}

}  // namespace rotkit

template <>
struct std::hash<rotkit::CanonicalCode> {
  std::size_t operator()(const rotkit::CanonicalCode& c) const noexcept { return c.hash(); }
};
