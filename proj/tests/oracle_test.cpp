#include <gtest/gtest.h>

#include <random>
#include <set>
#include <string>

#include "reference.hpp"
#include "rotkit/common_edges.hpp"
#include "rotkit/oracle.hpp"
#include "rotkit/tree.hpp"

namespace rotkit {
namespace {

TEST(Neighbors, Examples) {
  EXPECT_TRUE(rotation_neighbors(Tree{}).empty());
  const auto nbs = rotation_neighbors(parse_tree("((.,.),.)"));
  ASSERT_EQ(nbs.size(), 1u);
  EXPECT_EQ(serialize_tree(nbs[0].tree), "(.,(.,.))");
  EXPECT_EQ(to_string(nbs[0].op), "R@");
}

TEST(Neighbors, ThreeNodeGraphIsAFiveCycle) {
  const auto trees = enumerate_trees(3);
  ASSERT_EQ(trees.size(), 5u);
  std::set<std::pair<std::string, std::string>> edges;
  for (const auto& t : trees) {
    const auto nbs = rotation_neighbors(t);
    EXPECT_EQ(nbs.size(), 2u);
    for (const auto& nb : nbs) {
      edges.insert(std::minmax(serialize_tree(t), serialize_tree(nb.tree)));
    }
  }
  EXPECT_EQ(edges.size(), 5u);
  // Connected with every degree 2 and 5 edges on 5 vertices: a single cycle.
  EXPECT_EQ(diameter(3).value, 2u);
}

TEST(Neighbors, MatchReferenceUpToSix) {
  for (std::size_t n = 0; n <= 6; ++n) {
    for (const auto& text : ref::all_trees(n)) {
      const auto t = parse_tree(text);
      std::multiset<std::string> got, want;
      for (const auto& nb : rotation_neighbors(t)) {
        got.insert(serialize_tree(nb.tree));
        ASSERT_EQ(apply_rotation(t, nb.op), nb.tree);
        ASSERT_NE(nb.tree, t);
        // Symmetric relation.
        bool back = false;
        for (const auto& nb2 : rotation_neighbors(nb.tree)) back |= nb2.tree == t;
        ASSERT_TRUE(back);
      }
      for (const auto& s : ref::neighbors(text)) want.insert(s);
      ASSERT_EQ(got, want) << text;
      EXPECT_EQ(got.size(), n == 0 ? 0 : n - 1);
    }
  }
}

TEST(ExactDistance, Examples) {
  const auto t = random_tree(9, 3);
  EXPECT_EQ(exact_distance(t, t), 0u);
  EXPECT_EQ(exact_distance(build_comb(3, Side::Left), build_comb(3, Side::Right)), 2u);
  EXPECT_EQ(exact_distance(parse_tree("((.,.),((.,.),.))"), parse_tree("((.,.),(.,(.,.)))")), 1u);
  EXPECT_THROW(exact_distance(build_comb(3, Side::Left), build_comb(4, Side::Left)), SizeMismatchError);
}

TEST(ExactDistance, MatchesReferenceBfsUpToSix) {
  for (std::size_t n = 0; n <= 6; ++n) {
    for (const auto& a : ref::all_trees(n)) {
      const auto dist = ref::distances_from(a);
      const auto s = parse_tree(a);
      for (const auto& [b, d] : dist) {
        ASSERT_EQ(exact_distance(s, parse_tree(b)), d) << a << " -> " << b;
      }
    }
  }
}

TEST(ExactDistance, SymmetricAndTriangle) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 60; ++i) {
    const std::size_t n = 5 + i % 4;
    const auto a = random_tree(n, rng());
    const auto b = random_tree(n, rng());
    const auto c = random_tree(n, rng());
    const auto ab = exact_distance(a, b);
    EXPECT_EQ(ab, exact_distance(b, a));
    EXPECT_LE(exact_distance(a, c), ab + exact_distance(b, c));
  }
}

TEST(ExactDistance, UnitDistanceMeansAllButOneEdgeCommon) {
  for (std::size_t n = 2; n <= 6; ++n) {
    const auto trees = enumerate_trees(n);
    for (const auto& s : trees) {
      for (const auto& t : trees) {
        if (exact_distance(s, t) == 1) ASSERT_EQ(common_edges(s, t).size(), n - 2);
      }
    }
  }
}

TEST(ExactDistance, StateLimit) {
  const auto s = build_comb(40, Side::Left);
  const auto t = build_comb(40, Side::Right);
  EXPECT_THROW(exact_distance(s, t, 1000), StateLimitError);
  try {
    exact_distance(s, t, 500);
  } catch (const StateLimitError& e) {
    EXPECT_EQ(e.limit(), 500u);
  }
}

TEST(Enumerate, CountsAndOrder) {
  EXPECT_EQ(enumerate_trees(0).size(), 1u);
  EXPECT_EQ(enumerate_trees(1).size(), 1u);
  EXPECT_EQ(enumerate_trees(3).size(), 5u);
  EXPECT_EQ(enumerate_trees(4).size(), 14u);
  for (std::size_t n = 0; n <= 9; ++n) {
    const auto trees = enumerate_trees(n);
    ASSERT_EQ(trees.size(), catalan(n));
    for (std::size_t i = 1; i < trees.size(); ++i) {
      ASSERT_LT(canonical_code(trees[i - 1]), canonical_code(trees[i]));
    }
  }
  // Cross-check with the independent generator.
  for (std::size_t n = 0; n <= 6; ++n) {
    const auto all = ref::all_trees(n);
    const std::set<std::string> want(all.begin(), all.end());
    std::set<std::string> got;
    for (const auto& t : enumerate_trees(n)) got.insert(serialize_tree(t));
    EXPECT_EQ(got, want);
  }
  EXPECT_THROW(enumerate_trees(13), ArgumentError);
  EXPECT_EQ(enumerate_trees(13, 13).size(), catalan(13));
}

TEST(Catalan, Recurrence) {
  std::vector<std::uint64_t> c{1};
  for (std::size_t n = 1; n <= 20; ++n) {
    std::uint64_t sum = 0;
    for (std::size_t k = 0; k < n; ++k) sum += c[k] * c[n - 1 - k];
    c.push_back(sum);
  }
  for (std::size_t n = 0; n <= 20; ++n) EXPECT_EQ(catalan(n), c[n]);
}

TEST(Diameter, SmallValues) {
  EXPECT_EQ(diameter(0).value, 0u);
  EXPECT_EQ(diameter(1).value, 0u);
  EXPECT_EQ(diameter(2).value, 1u);
  const auto d3 = diameter(3);
  EXPECT_EQ(d3.value, 2u);
  EXPECT_EQ(exact_distance(d3.from, d3.to), 2u);
  for (std::size_t n = 4; n <= 8; ++n) {
    const auto d = diameter(n);
    EXPECT_LE(d.value, 2 * n - 2);
    EXPECT_EQ(exact_distance(d.from, d.to), d.value);
  }
  EXPECT_THROW(diameter(8, 1000), StateLimitError);
}

}  // namespace
}  // namespace rotkit
