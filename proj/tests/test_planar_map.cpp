#include <gtest/gtest.h>

#include <algorithm>

#include "mapforge/closure.hpp"
#include "mapforge/io.hpp"
#include "mapforge/planar_map.hpp"

using namespace mapforge;

namespace {

const std::string kData = MAPFORGE_TEST_DATA;

MapFile fixture(const std::string& name) { return map_from_json(read_text_file(kData + "/" + name)); }

ClosureResult sample_closure(std::size_t inner, Family f, Rng& rng) {
  const auto t = sample_blossoming_tree(inner, f, rng);
  return close(reroot(t, balanced_corners(t).first));
}

}  // namespace

TEST(Euler, Triangle) {
  const auto all = enumerate_trees(1, Family::Triangulation);
  const auto c = close(all.front());
  EXPECT_EQ(c.map.vertex_count(), 3u);
  EXPECT_EQ(c.map.edge_count(), 3u);
  EXPECT_EQ(c.map.face_count(), 2u);
}

TEST(Euler, Tetrahedron) {
  const auto m = fixture("tetrahedron.json").map;
  EXPECT_EQ(m.vertex_count(), 4u);
  EXPECT_EQ(m.edge_count(), 6u);
  EXPECT_EQ(m.face_count(), 4u);
  EXPECT_TRUE(m.is_simple());
  EXPECT_TRUE(m.is_k_angulation(3));
}

TEST(Euler, TorusRotationIsRejected) {
  try {
    PlanarMap m({2, 3, 1, 0}, {0, 0, 0, 0}, 0);
    FAIL() << "accepted a genus-one rotation";
  } catch (const GenusError& e) {
    EXPECT_EQ(e.genus(), 1);
  }
  EXPECT_EQ(genus({2, 3, 1, 0}, {0, 0, 0, 0}), 1);
}

TEST(Construction, RejectsMalformedRotations) {
  EXPECT_THROW(PlanarMap({0, 0}, {0, 1}, 0), InputError);       // not a permutation
  EXPECT_THROW(PlanarMap({1, 0, 2}, {0, 0, 1}, 0), InputError);  // odd count
  EXPECT_THROW(PlanarMap({0, 1}, {0, 1}, 5), InputError);        // root out of range
}

TEST(Simplicity, DoubleEdgeIsNotSimple) {
  // Two vertices joined by two parallel edges (a digon face pair).
  PlanarMap m({2, 3, 0, 1}, {0, 1, 0, 1}, 0);
  EXPECT_EQ(m.face_count(), 2u);
  EXPECT_FALSE(m.is_simple());
}

TEST(Orientation, ClosureTetrahedronPasses) {
  const auto f = fixture("tetrahedron.json");
  ASSERT_TRUE(f.orientation);
  EXPECT_TRUE(check_orientation(f.map, *f.orientation, Family::Triangulation).ok);
  EXPECT_TRUE(is_minimal(f.map, *f.orientation));
}

TEST(Orientation, ReversingOneEdgeGivesTwoViolations) {
  const auto f = fixture("tetrahedron.json");
  for (std::int32_t e = 0; e < static_cast<std::int32_t>(f.map.edge_count()); ++e) {
    if (e == f.map.root_half_edge() / 2) continue;
    auto o = *f.orientation;
    o.reverse(e);
    const auto r = check_orientation(f.map, o, Family::Triangulation);
    EXPECT_FALSE(r.ok);
    EXPECT_EQ(r.offending.size(), 2u);
  }
}

TEST(Orientation, QuadProfile) {
  for (const auto& t : enumerate_trees(2, Family::Quadrangulation)) {
    if (!is_balanced(t)) continue;
    const auto c = close(t);
    EXPECT_TRUE(check_orientation(c.map, c.orientation, Family::Quadrangulation).ok);
    auto alpha = alpha_profile(c.map, Family::Quadrangulation);
    std::sort(alpha.begin(), alpha.end());
    EXPECT_EQ(alpha, (std::vector<std::uint32_t>{0, 1, 1, 2}));
    EXPECT_EQ(c.map.vertex_count(), 4u);
    EXPECT_EQ(c.map.face_count(), 2u);
    EXPECT_EQ(c.map.face_degrees(), (std::vector<std::uint32_t>{4, 4}));
  }
}

TEST(Minimality, ReversedClockwiseFaceIsNotMinimal) {
  Rng rng(1);
  int tried = 0;
  for (int s = 0; s < 20 && tried < 10; ++s) {
    const auto c = sample_closure(4 + rng.below(10), Family::Triangulation, rng);
    const auto& m = c.map;
    for (FaceId fc = 0; fc < static_cast<FaceId>(m.face_count()); ++fc) {
      if (fc == m.root_face()) continue;
      std::vector<HalfEdgeId> cyc;
      HalfEdgeId h = m.face_first(fc);
      bool directed = true;
      do {
        cyc.push_back(h);
        directed &= !c.orientation.is_out(h);  // face walks run counterclockwise
        h = m.face_next(h);
      } while (h != m.face_first(fc));
      if (!directed) continue;
      auto o = c.orientation;
      for (HalfEdgeId x : cyc) o.reverse(x >> 1);
      EXPECT_TRUE(check_orientation(m, o, Family::Triangulation).ok);
      EXPECT_FALSE(is_minimal(m, o));
      ++tried;
      break;
    }
  }
  EXPECT_GT(tried, 0);
}

TEST(Minimality, AcyclicOrientationIsMinimal) {
  Rng rng(2);
  const auto c = sample_closure(30, Family::Triangulation, rng);
  EdgeOrientation o{std::vector<std::uint8_t>(c.map.edge_count())};
  for (std::size_t e = 0; e < c.map.edge_count(); ++e)
    o.bit[e] = c.map.vertex_of(static_cast<HalfEdgeId>(2 * e)) < c.map.target(static_cast<HalfEdgeId>(2 * e)) ? 0 : 1;
  EXPECT_TRUE(is_minimal(c.map, o));
}

TEST(MinimalOrientation, TetrahedronAndTriangle) {
  const auto f = fixture("tetrahedron.json");
  EXPECT_EQ(minimal_orientation(f.map, Family::Triangulation), *f.orientation);
  const auto tri = close(enumerate_trees(1, Family::Triangulation).front());
  EXPECT_EQ(minimal_orientation(tri.map, Family::Triangulation), tri.orientation);
  EXPECT_EQ(any_alpha_orientation(tri.map, Family::Triangulation), tri.orientation);
}

TEST(MinimalOrientation, AgreesWithClosureOnRandomMaps) {
  Rng rng(3);
  for (Family f : {Family::Triangulation, Family::Quadrangulation}) {
    for (int s = 0; s < 500; ++s) {
      const auto c = sample_closure(2 + rng.below(49), f, rng);
      ASSERT_EQ(minimal_orientation(c.map, f), c.orientation);
    }
  }
}

TEST(MinimalOrientation, MinimizeFromAnyAlphaOrientation) {
  Rng rng(4);
  for (int s = 0; s < 50; ++s) {
    const auto c = sample_closure(3 + rng.below(40), Family::Triangulation, rng);
    const auto start = any_alpha_orientation(c.map, Family::Triangulation);
    EXPECT_EQ(minimize(c.map, start), c.orientation);
  }
}

TEST(CanonicalCode, InvariantUnderRenumbering) {
  Rng rng(5);
  for (int s = 0; s < 50; ++s) {
    const auto c = sample_closure(2 + rng.below(60), Family::Quadrangulation, rng);
    const auto back = map_from_json(closure_to_json(c));
    EXPECT_EQ(canonical_code(back.map, &*back.orientation), canonical_code(c.map, &c.orientation));
  }
}
