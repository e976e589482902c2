#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "mapforge/blossoming.hpp"
#include "mapforge/closure.hpp"

namespace mapforge {

// Height and label read along the contour, one sample per contour step.
struct ProcessPair {
  std::vector<std::int32_t> C;
  std::vector<std::int32_t> Z;

  // Linear interpolation at t in [0,1].
  double C_at(double t) const;
  double Z_at(double t) const;
};

ProcessPair processes(const ValidLabelledTree& v);

// Scaling constants. n is the number of tree vertices for the processes
// and the number of map vertices for distances.
double contour_scale(Family f, std::size_t n);   // a_n
double label_scale(Family f, std::size_t n);     // b_n
double distance_scale(Family f, std::size_t n);  // c n^(-1/4)

// Uniform element of the valid labelled trees with n vertices.
ValidLabelledTree sample_valid_labelled_tree(std::size_t n, Family f, Rng& rng);

// Result of an R-symmetrization. Vertex ids are those of the input tree, so
// v^R = v. Displacements may lose monotonicity inside sibling blocks.
struct SymmetrizedTree {
  PlantedPlaneTree tree;
  std::vector<std::int8_t> disp;
  std::vector<std::uint8_t> spanned;  // membership in the subtree spanned by R
};

// R must contain the root (PreconditionError otherwise).
SymmetrizedTree partial_symmetrize(const ValidLabelledTree& v, const std::vector<VertexId>& R, Rng& rng);
SymmetrizedTree partial_symmetrize(const ValidLabelledTree& v, const std::vector<VertexId>& R, std::uint64_t seed);

// Uniformly random rearrangement of `values` among the arrangements of the
// same multiset (a uniform valid permutation applied to displacements).
void shuffle_block(std::vector<std::int8_t>& values, Rng& rng);

// Delta_{T,R}: largest label gap between a contour visit and the next visit
// of the spanned subtree.
std::int32_t fluctuation(const PlantedPlaneTree& tree, const std::vector<std::int8_t>& disp,
                         const std::vector<std::uint8_t>& spanned);

std::vector<std::uint8_t> spanned_mask(const PlantedPlaneTree& tree, const std::vector<VertexId>& R);

struct DisplacementLawReport {
  struct Coordinate {
    std::size_t k = 0, index = 0;  // index-th child of a vertex with k children
    std::size_t count = 0;
    double mean = 0, se = 0;            // after full symmetrization
    double mean_raw = 0, se_raw = 0;    // as sampled
    double chi2 = 0, p_value = 1;       // symmetrized values against uniform
  };
  std::size_t trees = 0;
  std::vector<Coordinate> coordinates;
};

// Samples `trees` valid labelled trees of size n, symmetrizes each with
// R = {root} and records per-coordinate displacement statistics for sibling
// blocks of size 1..max_k.
DisplacementLawReport symmetrized_displacement_law_test(Family f, std::size_t n, std::size_t trees, std::uint64_t seed,
                                                        std::size_t max_k = 4, unsigned threads = 1);

// One draw of the marked bijection: a tree planted at a uniform inner corner
// (the mark), closed at a uniform balanced corner.
struct MarkedSample {
  BlossomingTree marked;     // planted at the marked corner
  ClosureResult closure;     // closure of the balanced rooting
  InnerLabelling labelled;   // inner tree planted at the marked corner
  std::vector<std::int32_t> X;  // per labelled vertex
};
MarkedSample sample_marked_map(std::size_t inner, Family f, Rng& rng);

// Uniform rooted simple triangulation (quadrangulation) with the given
// number of vertices, with its closure data.
ClosureResult sample_rooted_map(std::size_t vertices, Family f, Rng& rng);

// c n^(-1/4) d(U,V) for independent uniform inner vertices U, V of N maps
// with n vertices. Sample i uses stream_seed(seed, i).
std::vector<double> two_point_statistics(Family f, std::size_t n, std::size_t samples, std::uint64_t seed,
                                         unsigned threads = 1);

// Two-sample Kolmogorov-Smirnov distance.
double ks_statistic(std::vector<double> a, std::vector<double> b);

struct CsReport {
  struct Row {
    std::size_t n = 0;            // map vertices
    std::int32_t max_dist_to_R = 0;                 // 2(i)
    double ks_root_vs_uniform = 0;                  // 2(ii)
    std::size_t upper_violations = 0;               // 3(i), additive constant 18
    std::size_t upper_checked = 0;
    double upper_worst_slack = 0;                   // min over pairs of bound - d
    double lower_gap_median = 0;                    // 3(ii), scaled by b_n
    double label_error_median = 0;                  // (Y-1) - d(.,A), scaled by N^(1/4)
    double root_to_min_gap_mean = 0;                // |b_n d(root, u_n) + b_n min Z|
  };
  Family family = Family::Triangulation;
  std::size_t samples = 0;
  std::vector<Row> rows;
};

CsReport cs_family_report(Family f, const std::vector<std::size_t>& n_list, std::size_t samples, std::uint64_t seed,
                          unsigned threads = 1, std::size_t pairs_per_map = 200);

}  // namespace mapforge
