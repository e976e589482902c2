#include <gtest/gtest.h>

#include <atomic>
#include <set>

#include "mapforge/common.hpp"

using namespace mapforge;

TEST(Fnv1a64, PublishedVectors) {
  EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
  EXPECT_EQ(fnv1a64("foobar"), 0x85944171f73967e8ULL);
}

TEST(Splitmix64, ReferenceOutput) {
  // First output of the reference generator seeded with 0.
  EXPECT_EQ(splitmix64(0), 0xe220a8397b1dcdafULL);
  EXPECT_EQ(stream_seed(7, 0), 7 ^ 0xe220a8397b1dcdafULL);
}

TEST(Rng, DeterministicAndInRange) {
  Rng a(42), b(42);
  for (int i = 0; i < 1000; ++i) {
    const auto x = a.below(17);
    EXPECT_EQ(x, b.below(17));
    EXPECT_LT(x, 17u);
    const double u = a.uniform_pos();
    EXPECT_EQ(u, b.uniform_pos());
    EXPECT_GT(u, 0.0);
    EXPECT_LE(u, 1.0);
  }
}

TEST(Rng, BelowIsRoughlyUniform) {
  Rng r(3);
  std::array<int, 5> hist{};
  for (int i = 0; i < 50000; ++i) ++hist[r.below(5)];
  for (int h : hist) EXPECT_NEAR(h, 10000, 400);
}

TEST(ParallelFor, VisitsEveryIndexOnce) {
  for (unsigned threads : {1u, 3u, 8u}) {
    std::vector<std::atomic<int>> hits(1000);
    parallel_for(hits.size(), threads, [&](std::size_t i) { ++hits[i]; });
    for (auto& h : hits) EXPECT_EQ(h.load(), 1);
  }
}

TEST(Family, NamesRoundTrip) {
  EXPECT_EQ(parse_family("tri"), Family::Triangulation);
  EXPECT_EQ(parse_family("quad"), Family::Quadrangulation);
  EXPECT_EQ(family_name(Family::Quadrangulation), "quad");
  EXPECT_THROW(parse_family("pent"), InputError);
}
