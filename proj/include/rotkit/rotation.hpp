#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rotkit/error.hpp"
#include "rotkit/tree.hpp"

namespace rotkit {

// RightRotate at v (left child u internal): u takes v's place, v becomes u's
// right child, and u's former right subtree becomes v's left subtree.
// LeftRotate is the mirror image and the exact inverse.
enum class Direction : std::uint8_t { Right, Left };

inline Direction flipped(Direction d) noexcept {
  return d == Direction::Right ? Direction::Left : Direction::Right;
}

/// Address of a node as the steps taken from the root. Empty is the root.
class Path {
 public:
  Path() = default;
  explicit Path(std::vector<Side> steps) : steps_(std::move(steps)) {}

  static Path parse(std::string_view text) {
    Path p;
    p.steps_.reserve(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
      switch (text[i]) {
        case 'L': p.steps_.push_back(Side::Left); break;
        case 'R': p.steps_.push_back(Side::Right); break;
        default: throw ParseError(i, "path steps must be 'L' or 'R'");
      }
    }
    return p;
  }

  std::string to_string() const {
    std::string s;
    s.reserve(steps_.size());
    for (Side step : steps_) s += step == Side::Left ? 'L' : 'R';
    return s;
  }

  std::size_t size() const noexcept { return steps_.size(); }
  bool empty() const noexcept { return steps_.empty(); }
  Side operator[](std::size_t i) const noexcept { return steps_[i]; }
  const std::vector<Side>& steps() const noexcept { return steps_; }

  void push_back(Side s) { steps_.push_back(s); }

  friend bool operator==(const Path&, const Path&) = default;

 private:
  std::vector<Side> steps_;
};

struct RotationOp {
  Direction direction = Direction::Right;
  Path path;

  friend bool operator==(const RotationOp&, const RotationOp&) = default;
};

/// Token form: direction letter, '@', path. "R@" rotates at the root.
inline std::string to_string(const RotationOp& op) {
  std::string s(1, op.direction == Direction::Right ? 'R' : 'L');
  s += '@';
  s += op.path.to_string();
  return s;
}

inline RotationOp parse_rotation_op(std::string_view token) {
  if (token.size() < 2 || token[1] != '@') throw ParseError(0, "rotation op must look like R@path");
  RotationOp op;
  switch (token[0]) {
    case 'R': op.direction = Direction::Right; break;
    case 'L': op.direction = Direction::Left; break;
    default: throw ParseError(0, "rotation direction must be 'R' or 'L'");
  }
  try {
    op.path = Path::parse(token.substr(2));
  } catch (const ParseError& e) {
    throw ParseError(e.offset() + 2, "path steps must be 'L' or 'R'");
  }
  return op;
}

/// Ordered list of rotations, applied first to last.
///
/// Paths are stored compactly: each op is an anchor in a shared prefix trie
/// plus a run of trailing right steps. Sequences produced by comb walks have
/// exactly that shape, which keeps construction linear even though the
/// spelled-out paths can have quadratic total length.
class RotationSequence {
 public:
  using Anchor = std::uint32_t;
  static constexpr Anchor kRootAnchor = 0;

  RotationSequence() = default;

  std::size_t size() const noexcept { return ops_.size(); }
  bool empty() const noexcept { return ops_.empty(); }

  /// Prefix node reached from `from` by one more step; created on demand.
  Anchor extend(Anchor from, Side step) {
    const int which = step == Side::Left ? 0 : 1;
    if (trie_[from].child[which] == kNone) {
      const auto created = static_cast<Anchor>(trie_.size());
      trie_.push_back({from, step, trie_[from].depth + 1, {kNone, kNone}});
      trie_[from].child[which] = created;
    }
    return trie_[from].child[which];
  }

  void push_back(Direction d, Anchor anchor, std::uint32_t trailing_right) {
    ops_.push_back({d, anchor, trailing_right});
  }

  void push_back(const RotationOp& op) {
    // Split the path into an anchor and its trailing run of right steps.
    const auto& steps = op.path.steps();
    std::size_t stem = steps.size();
    while (stem > 0 && steps[stem - 1] == Side::Right) --stem;
    Anchor a = kRootAnchor;
    for (std::size_t i = 0; i < stem; ++i) a = extend(a, steps[i]);
    push_back(op.direction, a, static_cast<std::uint32_t>(steps.size() - stem));
  }

  Direction direction(std::size_t i) const noexcept { return ops_[i].direction; }
  std::size_t path_length(std::size_t i) const noexcept {
    return trie_[ops_[i].anchor].depth + ops_[i].trailing_right;
  }

  /// Writes the full path of op i into `out` (cleared first).
  void path_steps(std::size_t i, std::vector<Side>& out) const {
    out.clear();
    const auto& e = ops_[i];
    for (Anchor a = e.anchor; a != kRootAnchor; a = trie_[a].parent) out.push_back(trie_[a].step);
    std::reverse(out.begin(), out.end());
    out.insert(out.end(), e.trailing_right, Side::Right);
  }

  RotationOp operator[](std::size_t i) const {
    std::vector<Side> steps;
    path_steps(i, steps);
    return {ops_[i].direction, Path(std::move(steps))};
  }

  std::vector<RotationOp> ops() const {
    std::vector<RotationOp> out;
    out.reserve(size());
    for (std::size_t i = 0; i < size(); ++i) out.push_back((*this)[i]);
    return out;
  }

  friend bool operator==(const RotationSequence& a, const RotationSequence& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] != b[i]) return false;
    }
    return true;
  }

 private:
  static constexpr Anchor kNone = ~Anchor{0};

  struct TrieNode {
    Anchor parent;
    Side step;
    std::uint32_t depth;
    Anchor child[2];
  };
  struct Entry {
    Direction direction;
    Anchor anchor;
    std::uint32_t trailing_right;
  };

  std::vector<TrieNode> trie_{{kNone, Side::Left, 0, {kNone, kNone}}};
  std::vector<Entry> ops_;
};

/// Whitespace-separated op tokens.
inline std::string to_string(const RotationSequence& seq) {
  std::string out;
  std::vector<Side> steps;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (i) out += ' ';
    out += seq.direction(i) == Direction::Right ? 'R' : 'L';
    out += '@';
    seq.path_steps(i, steps);
    for (Side s : steps) out += s == Side::Left ? 'L' : 'R';
  }
  return out;
}

inline RotationSequence parse_rotation_sequence(std::string_view text) {
  RotationSequence seq;
  std::size_t pos = 0;
  while (pos < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[pos]))) {
      ++pos;
      continue;
    }
    std::size_t end = pos;
    while (end < text.size() && !std::isspace(static_cast<unsigned char>(text[end]))) ++end;
    try {
      seq.push_back(parse_rotation_op(text.substr(pos, end - pos)));
    } catch (const ParseError& e) {
      throw ParseError(pos + e.offset(), "malformed rotation op");
    }
    pos = end;
  }
  return seq;
}

namespace detail {

// Mutable linked form used while applying many rotations in a row.
struct WorkTree {
  std::vector<Tree::Node> nodes;
  Tree::Index root = Tree::kLeaf;

  explicit WorkTree(const Tree& t)
      : nodes(t.nodes().begin(), t.nodes().end()), root(t.root()) {}

  Tree::Node& at(Tree::Index i) { return nodes[static_cast<std::size_t>(i)]; }

  // Slot holding the node addressed by `steps`, or nullptr if it is a leaf or
  // lies below one.
  template <typename Steps>
  Tree::Index* locate(const Steps& steps) {
    Tree::Index* slot = &root;
    for (Side s : steps) {
      if (*slot == Tree::kLeaf) return nullptr;
      auto& n = at(*slot);
      slot = s == Side::Left ? &n.left : &n.right;
    }
    return *slot == Tree::kLeaf ? nullptr : slot;
  }

  // False when the child that would move up is a leaf.
  bool rotate(Tree::Index& slot, Direction d) {
    const auto v = slot;
    auto& vn = at(v);
    if (d == Direction::Right) {
      const auto u = vn.left;
      if (u == Tree::kLeaf) return false;
      vn.left = at(u).right;
      at(u).right = v;
      slot = u;
    } else {
      const auto u = vn.right;
      if (u == Tree::kLeaf) return false;
      vn.right = at(u).left;
      at(u).left = v;
      slot = u;
    }
    return true;
  }

  Tree freeze() const { return Tree::from_links(nodes, root); }
};

template <typename Steps>
void apply_one(WorkTree& w, Direction d, const Steps& steps, std::size_t index) {
  Tree::Index* slot = w.locate(steps);
  if (slot == nullptr) {
    throw RotationError(RotationError::Reason::InvalidPath,
                        "path does not address an internal node", index);
  }
  if (!w.rotate(*slot, d)) {
    throw RotationError(RotationError::Reason::LeafChild,
                        d == Direction::Right ? "left child is a leaf" : "right child is a leaf",
                        index);
  }
}

}  // namespace detail

inline Tree apply_rotation(const Tree& t, const RotationOp& op) {
  detail::WorkTree w(t);
  detail::apply_one(w, op.direction, op.path.steps(), RotationError::npos);
  return w.freeze();
}

/// Left fold of apply_rotation. A failing op is reported with its index.
inline Tree apply_sequence(const Tree& t, const RotationSequence& seq) {
  detail::WorkTree w(t);
  std::vector<Side> steps;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    seq.path_steps(i, steps);
    detail::apply_one(w, seq.direction(i), steps, i);
  }
  return w.freeze();
}

}  // namespace rotkit
