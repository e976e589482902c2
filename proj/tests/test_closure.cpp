#include <gtest/gtest.h>

#include <set>

#include "mapforge/closure.hpp"
#include "mapforge/io.hpp"

using namespace mapforge;

namespace {

const std::string kData = MAPFORGE_TEST_DATA;

std::vector<BlossomingTree> balanced_trees(std::size_t n, Family f) {
  std::vector<BlossomingTree> out;
  for (auto& t : enumerate_trees(n, f))
    if (is_balanced(t)) out.push_back(std::move(t));
  return out;
}

}  // namespace

class ClosureFamily : public ::testing::TestWithParam<Family> {};
INSTANTIATE_TEST_SUITE_P(Families, ClosureFamily, ::testing::Values(Family::Triangulation, Family::Quadrangulation),
                         [](const auto& info) { return std::string(family_name(info.param)); });

TEST_P(ClosureFamily, ExhaustiveBijection) {
  const Family f = GetParam();
  for (std::size_t n = 1; n <= 5; ++n) {
    std::set<std::vector<std::int32_t>> maps;
    const auto trees = balanced_trees(n, f);
    for (const auto& t : trees) {
      const auto c = close(t);
      const bool degenerate = f == Family::Quadrangulation && n == 1;
      if (!degenerate) {
        ASSERT_TRUE(c.map.is_simple()) << n;
        ASSERT_TRUE(c.map.is_k_angulation(face_degree(f)));
        ASSERT_TRUE(check_orientation(c.map, c.orientation, f).ok);
        ASSERT_TRUE(is_minimal(c.map, c.orientation));
        EXPECT_EQ(minimal_orientation(c.map, f), c.orientation);
        const auto back = open(c.map, c.orientation, f);
        EXPECT_EQ(canonical_code(back), canonical_code(t));
        const auto again = close(back);
        EXPECT_EQ(canonical_code(again.map, &again.orientation), canonical_code(c.map, &c.orientation));
      }
      maps.insert(canonical_code(c.map));
    }
    EXPECT_EQ(maps.size(), trees.size()) << "closures not pairwise distinct at n=" << n;
  }
}

TEST(Closure, SmallestMaps) {
  const auto tri1 = close(balanced_trees(1, Family::Triangulation).front());
  EXPECT_EQ(tri1.map.vertex_count(), 3u);
  const auto tri2 = balanced_trees(2, Family::Triangulation);
  ASSERT_EQ(tri2.size(), 1u);
  const auto tet = close(tri2.front());
  EXPECT_EQ(tet.map.vertex_count(), 4u);
  EXPECT_EQ(tet.map.face_count(), 4u);
  const auto fx = map_from_json(read_text_file(kData + "/tetrahedron.json"));
  EXPECT_EQ(canonical_code(tet.map, &tet.orientation), canonical_code(fx.map, &*fx.orientation));
  const auto q = close(balanced_trees(2, Family::Quadrangulation).front());
  EXPECT_EQ(q.map.vertex_count(), 4u);
  EXPECT_EQ(q.map.face_degrees(), (std::vector<std::uint32_t>{4, 4}));
  EXPECT_TRUE(q.map.is_simple());
}

TEST(Closure, OpenTetrahedronGivesTheBalancedTree) {
  const auto fx = map_from_json(read_text_file(kData + "/tetrahedron.json"));
  const auto t = open(fx.map, *fx.orientation, Family::Triangulation);
  EXPECT_TRUE(is_balanced(t));
  EXPECT_EQ(t.inner_count(), 2u);
  EXPECT_EQ(canonical_code(t), canonical_code(balanced_trees(2, Family::Triangulation).front()));
}

TEST(Closure, RejectsUnbalancedTrees) {
  for (const auto& t : enumerate_trees(3, Family::Triangulation))
    if (!is_balanced(t)) EXPECT_THROW(close(t), DomainError);
}

TEST(Closure, OpenRejectsBadOrientation) {
  const auto fx = map_from_json(read_text_file(kData + "/tetrahedron_reversed.json"));
  EXPECT_THROW(open(fx.map, *fx.orientation, Family::Triangulation), DomainError);
}

TEST_P(ClosureFamily, SampledRoundTrip) {
  Rng rng(1);
  for (int s = 0; s < 500; ++s) {
    const auto t0 = sample_blossoming_tree(2 + rng.below(199), GetParam(), rng);
    const auto [a, b] = balanced_corners(t0);
    const auto t = reroot(t0, rng.below(2) ? a : b);
    const auto c = close(t);
    const auto back = open(c.map, c.orientation, GetParam());
    ASSERT_EQ(canonical_code(back), canonical_code(t));
    const auto c2 = close(back);
    ASSERT_EQ(canonical_code(c2.map, &c2.orientation), canonical_code(c.map, &c.orientation));
  }
}

TEST(Successor, GlobalMinimumIsUnclosed) {
  Rng rng(2);
  for (int s = 0; s < 100; ++s) {
    const auto t0 = sample_blossoming_tree(2 + rng.below(50), Family::Triangulation, rng);
    const auto t = reroot(t0, balanced_corners(t0).first);
    const auto lab = corner_labelling(t);
    const std::size_t L = lab.size() - 1;
    std::size_t jmin = 0;
    for (std::size_t j = 0; j < L; ++j)
      if (lab[j] < lab[jmin]) jmin = j;
    EXPECT_FALSE(successor(lab, jmin).has_value());
  }
}

TEST(Successor, OneVertexTreeLeavesBothStemsUnclosed) {
  const auto t = balanced_trees(1, Family::Triangulation).front();
  const auto pc = partial_closure_by_labels(t);
  for (VertexId v = 0; v < static_cast<VertexId>(t.tree.size()); ++v)
    if (t.blossom(v)) EXPECT_FALSE(pc.closed[v]);
}

TEST_P(ClosureFamily, PartialClosureTwoConstructionsAgree) {
  for (std::size_t n = 1; n <= 4; ++n) {
    for (const auto& t : enumerate_trees(n, GetParam())) {
      if (!is_balanced(t)) continue;
      const auto a = partial_closure_by_labels(t);
      const auto b = partial_closure_by_local_closures(t);
      EXPECT_EQ(a.next_cw, b.next_cw);
      EXPECT_EQ(a.closed, b.closed);
    }
  }
  Rng rng(3);
  for (int s = 0; s < 100; ++s) {
    const auto t0 = sample_blossoming_tree(2 + rng.below(100), GetParam(), rng);
    const auto t = reroot(t0, balanced_corners(t0).second);
    EXPECT_EQ(partial_closure_by_labels(t).next_cw, partial_closure_by_local_closures(t).next_cw);
  }
}

TEST(MarkedClosure, InnerCornerCount) {
  for (std::size_t n = 1; n <= 6; ++n)
    for (const auto& t : enumerate_trees(n, Family::Triangulation))
      EXPECT_EQ(inner_corners(t, contour_exploration(t.tree)).size(), 4 * n - 2);
}

TEST(MarkedClosure, InjectiveOverInnerCorners) {
  for (Family f : {Family::Triangulation, Family::Quadrangulation}) {
    for (std::size_t n = 1; n <= 4; ++n) {
      for (const auto& t : balanced_trees(n, f)) {
        const auto contour = contour_exploration(t.tree);
        std::set<HalfEdgeId> seen;
        const auto inner = inner_corners(t, contour);
        for (std::size_t j : inner) seen.insert(close_marked(t, j).marked_corner);
        EXPECT_EQ(seen.size(), inner.size());
        const auto root = close_marked(t, 0);
        EXPECT_EQ(root.marked_corner, root.closure.inner_corner_image[0]);
      }
    }
  }
}

TEST(MarkedClosure, RootCornerMapsToRootImage) {
  const auto t = balanced_trees(3, Family::Triangulation).front();
  const auto mc = close_marked(t, 0);
  EXPECT_EQ(mc.closure.map.vertex_of(mc.marked_corner), mc.closure.map_vertex[t.tree.root()]);
  const auto contour = contour_exploration(t.tree);
  for (std::size_t j = 0; j < contour.steps(); ++j)
    if (t.blossom(contour.visits[j])) EXPECT_THROW(close_marked(t, j), PreconditionError);
}
