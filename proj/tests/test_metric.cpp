#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "mapforge/common.hpp"
#include "mapforge/metric.hpp"

using namespace mapforge;

namespace {

FiniteMetricSpace line(const std::vector<double>& xs, std::vector<double> w = {}) {
  std::vector<std::vector<double>> d(xs.size(), std::vector<double>(xs.size()));
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = 0; j < xs.size(); ++j) d[i][j] = std::abs(xs[i] - xs[j]);
  return FiniteMetricSpace(d, std::move(w));
}

FiniteMetricSpace permuted(const FiniteMetricSpace& A, const std::vector<std::size_t>& p) {
  std::vector<std::vector<double>> d(A.size(), std::vector<double>(A.size()));
  for (std::size_t i = 0; i < A.size(); ++i)
    for (std::size_t j = 0; j < A.size(); ++j) d[p[i]][p[j]] = A(i, j);
  return FiniteMetricSpace(d);
}

FiniteMetricSpace point() { return FiniteMetricSpace({{0.0}}, {1.0}); }

}  // namespace

TEST(MetricSpace, Validation) {
  EXPECT_THROW(FiniteMetricSpace({{0, 1}, {2, 0}}), InputError);          // asymmetric
  EXPECT_THROW(FiniteMetricSpace({{0, 1}, {1, 0}, {0, 0}}), InputError);  // not square
  EXPECT_THROW(FiniteMetricSpace({{1, 1}, {1, 0}}), InputError);          // diagonal
  EXPECT_THROW(FiniteMetricSpace({{0, -1}, {-1, 0}}), InputError);
  EXPECT_THROW(FiniteMetricSpace({{0, 1, 5}, {1, 0, 1}, {5, 1, 0}}), InputError);  // triangle
  EXPECT_THROW(FiniteMetricSpace({{0, 1}, {1, 0}}, {0.5, 0.6}), InputError);
  EXPECT_NO_THROW(FiniteMetricSpace({{0, 1}, {1, 0}}, {0.25, 0.75}));
  EXPECT_DOUBLE_EQ(line({0, 1, 3}).diameter(), 3.0);
}

TEST(Gh, TwoPointSpaces) {
  for (double a : {0.5, 1.0, 4.0})
    for (double b : {1.0, 2.5}) EXPECT_NEAR(gh_bruteforce(line({0, a}), line({0, b})).value, std::abs(a - b) / 2, 1e-12);
}

TEST(Gh, PointAgainstSpaceIsHalfDiameter) {
  const auto Q = line({0, 1, 3});
  EXPECT_DOUBLE_EQ(gh_bruteforce(point(), Q).value, 1.5);
  EXPECT_DOUBLE_EQ(gh_bruteforce(Q, point()).value, 1.5);
}

TEST(Gh, IsometricCopiesAreAtZero) {
  const FiniteMetricSpace A({{0, 1, 2, 2, 3},
                             {1, 0, 1, 2, 2},
                             {2, 1, 0, 1, 2},
                             {2, 2, 1, 0, 1},
                             {3, 2, 2, 1, 0}});
  Rng rng(1);
  for (int s = 0; s < 5; ++s) {
    std::vector<std::size_t> p{0, 1, 2, 3, 4};
    for (std::size_t i = p.size(); i > 1; --i) std::swap(p[i - 1], p[rng.below(i)]);
    const auto r = gh_bruteforce(A, permuted(A, p));
    EXPECT_DOUBLE_EQ(r.value, 0.0);
    EXPECT_DOUBLE_EQ(distortion(r.witness, A, permuted(A, p)), 0.0);
  }
}

TEST(Gh, HandComputedTriangle) {
  // Equilateral triangle of side 1 against a segment of length 1: the best
  // correspondence sends two vertices to one endpoint, distortion 1.
  const FiniteMetricSpace tri({{0, 1, 1}, {1, 0, 1}, {1, 1, 0}});
  EXPECT_DOUBLE_EQ(gh_bruteforce(tri, line({0, 1})).value, 0.5);
}

TEST(Gh, WitnessAchievesValueAndIsSymmetric) {
  Rng rng(2);
  for (int s = 0; s < 20; ++s) {
    std::vector<double> xs(2 + rng.below(4)), ys(2 + rng.below(4));
    for (auto& x : xs) x = static_cast<double>(rng.below(10));
    for (auto& y : ys) y = static_cast<double>(rng.below(10));
    const auto A = line(xs), B = line(ys);
    const auto r = gh_bruteforce(A, B);
    EXPECT_NEAR(distortion(r.witness, A, B) / 2, r.value, 1e-12);
    EXPECT_NEAR(gh_bruteforce(B, A).value, r.value, 1e-12);
    EXPECT_LE(r.value, std::max(A.diameter(), B.diameter()) / 2 + 1e-12);
    EXPECT_GE(r.value, std::abs(A.diameter() - B.diameter()) / 2 - 1e-12);
  }
}

TEST(Gh, ForcedPairsOnlyIncrease) {
  const auto A = line({0, 1, 2}), B = line({0, 1, 2});
  EXPECT_DOUBLE_EQ(gh_bruteforce(A, B).value, 0.0);
  EXPECT_DOUBLE_EQ(gh_bruteforce(A, B, {{0, 2}}).value, 0.0);  // reflection
  EXPECT_DOUBLE_EQ(gh_bruteforce(A, B, {{0, 1}}).value, 0.5);
}

TEST(Gh, Guard) {
  std::vector<double> xs(8);
  for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = static_cast<double>(i);
  EXPECT_THROW(gh_bruteforce(line(xs), line(xs)), GuardError);
  EXPECT_NO_THROW(gh_bruteforce(line({0, 1, 2, 3, 4, 5, 6}), line({0, 1, 2, 3, 4, 5, 6})));
}

TEST(Distortion, MonotoneInTheCorrespondence) {
  const auto A = line({0, 1, 4}), B = line({0, 2, 3});
  const Correspondence small{{0, 0}, {1, 1}, {2, 2}};
  Correspondence big = small;
  big.push_back({0, 2});
  EXPECT_LE(distortion(small, A, B), distortion(big, A, B));
  EXPECT_DOUBLE_EQ(distortion(small, A, B), 2.0);  // pair (1,2): 3 against 1
}

TEST(Distortion, RejectsNonCovering) {
  const auto A = line({0, 1}), B = line({0, 1});
  EXPECT_THROW(distortion({{0, 0}}, A, B), DomainError);
  EXPECT_THROW(distortion({{0, 0}, {1, 5}}, A, B), DomainError);
}

TEST(Ghp, UniformAgainstPointMass) {
  const auto A = line({0, 1}, {0.5, 0.5});
  const Correspondence C{{0, 0}, {1, 0}};
  EXPECT_DOUBLE_EQ(ghp_upper_bound(A, point(), C, {{0.5}, {0.5}}), 0.5);
}

TEST(Ghp, DiagonalCouplingOfEqualSpaces) {
  const auto A = line({0, 1, 3}, {0.2, 0.3, 0.5});
  const Correspondence C{{0, 0}, {1, 1}, {2, 2}};
  const Coupling nu{{0.2, 0, 0}, {0, 0.3, 0}, {0, 0, 0.5}};
  EXPECT_DOUBLE_EQ(ghp_upper_bound(A, A, C, nu), 0.0);
  // Mass off the correspondence counts against it.
  const Coupling off{{0.1, 0.1, 0}, {0.1, 0.2, 0}, {0, 0, 0.5}};
  EXPECT_NEAR(ghp_upper_bound(A, A, C, off), 0.2, 1e-12);
}

TEST(Ghp, Errors) {
  const auto A = line({0, 1}, {0.5, 0.5});
  const Correspondence C{{0, 0}, {1, 0}};
  EXPECT_THROW(ghp_upper_bound(A, point(), C, {{0.4}, {0.5}}), DomainError);
  EXPECT_THROW(ghp_upper_bound(line({0, 1}), point(), C, {{0.5}, {0.5}}), DomainError);
}

TEST(Csv, ReadsDistancesAndWeights) {
  std::istringstream in("# two points\n0,2,0.5\n2,0,0.5\n");
  const auto S = FiniteMetricSpace::read_csv(in);
  ASSERT_EQ(S.size(), 2u);
  EXPECT_DOUBLE_EQ(S(0, 1), 2.0);
  ASSERT_TRUE(S.weighted());
  EXPECT_DOUBLE_EQ(S.weight(1), 0.5);
  std::istringstream plain("0,1\n\n1,0\n");
  EXPECT_FALSE(FiniteMetricSpace::read_csv(plain).weighted());
}

TEST(Csv, ErrorsCarryLocation) {
  std::istringstream bad("0,1\n1,x\n");
  try {
    FiniteMetricSpace::read_csv(bad);
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("line 2, column 2"), std::string::npos) << e.what();
  }
  std::istringstream ragged("0,1\n1,0,3,4\n");
  EXPECT_THROW(FiniteMetricSpace::read_csv(ragged), InputError);
  EXPECT_THROW(FiniteMetricSpace::read_csv_file("/nonexistent/metric.csv"), InputError);
}
