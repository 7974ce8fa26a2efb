#include <gtest/gtest.h>

#include <string>

#include "reference.hpp"
#include "rotkit/rotation.hpp"
#include "rotkit/tree.hpp"

namespace rotkit {
namespace {

RotationOp op(const char* token) { return parse_rotation_op(token); }

TEST(ApplyRotation, RightAtRootOfThreeLeafTree) {
  EXPECT_EQ(serialize_tree(apply_rotation(parse_tree("((.,.),.)"), op("R@"))), "(.,(.,.))");
}

TEST(ApplyRotation, RightNeedsInternalLeftChild) {
  try {
    apply_rotation(parse_tree("(.,(.,.))"), op("R@"));
    FAIL() << "expected a rotation error";
  } catch (const RotationError& e) {
    EXPECT_EQ(e.reason(), RotationError::Reason::LeafChild);
    EXPECT_EQ(e.index(), RotationError::npos);
  }
}

TEST(ApplyRotation, InvalidPaths) {
  const auto t = parse_tree("((.,.),.)");
  EXPECT_THROW(apply_rotation(t, op("R@R")), RotationError);     // addresses a leaf
  EXPECT_THROW(apply_rotation(t, op("R@RLL")), RotationError);   // walks past a leaf
  EXPECT_THROW(apply_rotation(Tree{}, op("L@")), RotationError);
  try {
    apply_rotation(t, op("L@LL"));
  } catch (const RotationError& e) {
    EXPECT_EQ(e.reason(), RotationError::Reason::InvalidPath);
  }
}

TEST(ApplyRotation, InverseOnEverySiteUpToSix) {
  for (std::size_t n = 0; n <= 6; ++n) {
    for (const auto& text : ref::all_trees(n)) {
      const auto t = parse_tree(text);
      std::vector<std::string> paths;
      ref::collect_paths(text, "", paths);
      for (const auto& p : paths) {
        for (char d : {'R', 'L'}) {
          const auto expected = ref::rotate(text, p, d);
          const RotationOp forward{d == 'R' ? Direction::Right : Direction::Left, Path::parse(p)};
          if (!expected) {
            EXPECT_THROW(apply_rotation(t, forward), RotationError) << text << " " << to_string(forward);
            continue;
          }
          const auto moved = apply_rotation(t, forward);
          ASSERT_EQ(serialize_tree(moved), *expected) << text << " " << to_string(forward);
          EXPECT_NE(moved, t);
          EXPECT_EQ(moved.leaf_count(), t.leaf_count());
          const RotationOp back{flipped(forward.direction), forward.path};
          EXPECT_EQ(apply_rotation(moved, back), t);
        }
      }
    }
  }
}

TEST(RotationOp, TokenForm) {
  EXPECT_EQ(to_string(op("R@")), "R@");
  EXPECT_EQ(to_string(op("L@LR")), "L@LR");
  EXPECT_EQ(op("L@LR").path.size(), 2u);
  EXPECT_THROW(op("X@"), ParseError);
  EXPECT_THROW(op("R"), ParseError);
  EXPECT_THROW(op("R-L"), ParseError);
  EXPECT_THROW(op("R@LQ"), ParseError);
}

TEST(RotationSequence, StoresArbitraryPaths) {
  RotationSequence seq;
  for (const char* t : {"R@", "L@LR", "R@RRR", "L@LRR", "R@LRL", "L@"}) seq.push_back(op(t));
  EXPECT_EQ(to_string(seq), "R@ L@LR R@RRR L@LRR R@LRL L@");
  EXPECT_EQ(seq[3], op("L@LRR"));
  EXPECT_EQ(seq.path_length(2), 3u);
  EXPECT_EQ(parse_rotation_sequence(" R@\nL@LR  R@RRR\tL@LRR R@LRL L@ "), seq);
  EXPECT_TRUE(parse_rotation_sequence("   ").empty());
  EXPECT_THROW(parse_rotation_sequence("R@ Q@L"), ParseError);
}

TEST(ApplySequence, Examples) {
  const auto t = parse_tree("((.,(.,.)),(.,.))");
  EXPECT_EQ(apply_sequence(t, RotationSequence{}), t);
  EXPECT_EQ(serialize_tree(apply_sequence(parse_tree("((.,.),.)"), parse_rotation_sequence("R@"))),
            "(.,(.,.))");
}

TEST(ApplySequence, LeftCombToRightCombAtThree) {
  // By hand: (((a,b),c),d) -R@-> ((a,b),(c,d)) -R@-> (a,(b,(c,d))).
  const auto seq = parse_rotation_sequence("R@ R@");
  const auto result = apply_sequence(build_comb(3, Side::Left), seq);
  EXPECT_EQ(result, build_comb(3, Side::Right));
  // Same walk through the reference implementation.
  auto step = ref::rotate("(((.,.),.),.)", "", 'R');
  ASSERT_TRUE(step);
  step = ref::rotate(*step, "", 'R');
  ASSERT_TRUE(step);
  EXPECT_EQ(serialize_tree(result), *step);
}

TEST(ApplySequence, ReportsFailingIndex) {
  const auto seq = parse_rotation_sequence("R@ R@ R@");
  try {
    apply_sequence(build_comb(2, Side::Left), seq);
    FAIL() << "expected a rotation error";
  } catch (const RotationError& e) {
    EXPECT_EQ(e.index(), 1u);
    EXPECT_EQ(e.reason(), RotationError::Reason::LeafChild);
  }
}

}  // namespace
}  // namespace rotkit
