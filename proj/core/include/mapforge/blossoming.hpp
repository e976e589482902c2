#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "mapforge/common.hpp"
#include "mapforge/plane_tree.hpp"

namespace mapforge {

// Plane tree whose degree-one vertices are blossoms; every inner vertex
// carries stems_per_vertex(family) blossoms. The root is always inner.
struct BlossomingTree {
  PlantedPlaneTree tree;
  std::vector<std::uint8_t> is_blossom;
  Family family = Family::Triangulation;

  std::size_t inner_count() const;
  bool blossom(VertexId v) const { return is_blossom[v] != 0; }
};

// Throws InputError describing the first violated structural invariant.
void validate(const BlossomingTree& t);

// Preorder code: -1 for a blossom, the child count otherwise. Two planted
// blossoming trees are isomorphic iff their codes are equal.
std::vector<std::int32_t> canonical_code(const BlossomingTree& t);

// lambda on contour corners 0..L-1, plus the replayed value at index L
// (which is lambda(0) + 2: a full lap gains two).
std::vector<std::int32_t> corner_labelling(const BlossomingTree& t, const ContourSequence& contour);
std::vector<std::int32_t> corner_labelling(const BlossomingTree& t);

// Whether contour corner j is flanked by the stems the family requires.
bool stem_condition(const BlossomingTree& t, const ContourSequence& contour, std::size_t j);

// The two contour indices j1 <= j2 whose rerootings are balanced. A tree
// with a single corner (one inner vertex, quadrangulation) gives j1 == j2.
std::pair<std::size_t, std::size_t> balanced_corners(const BlossomingTree& t);
bool is_balanced(const BlossomingTree& t);

// Same vertex ids, planted at contour corner j of t.
BlossomingTree reroot(const BlossomingTree& t, std::size_t j);
BlossomingTree reroot(const BlossomingTree& t, const ContourSequence& contour, std::size_t j);

// Contour indices of corners at inner vertices.
std::vector<std::size_t> inner_corners(const BlossomingTree& t, const ContourSequence& contour);

// Plane tree of inner vertices with per-edge displacements. disp[v] is the
// displacement of the edge from v to its parent (0 at the root).
struct ValidLabelledTree {
  PlantedPlaneTree tree;
  std::vector<std::int8_t> disp;
  Family family = Family::Triangulation;
};

// Throws InputError unless displacements lie in the family alphabet and are
// non-decreasing along every sibling block.
void validate(const ValidLabelledTree& v);

struct InnerLabelling {
  ValidLabelledTree labelled;
  // original_id[inner id] = vertex id in the blossoming tree.
  std::vector<VertexId> original_id;
};

// Strips blossoms, planted at the root corner of t. Inner ids are preorder
// ranks among inner vertices.
InnerLabelling to_valid_labelling(const BlossomingTree& t);
// Same, computing displacements as differences of minimal corner labels
// (independent route used for cross-checking).
InnerLabelling to_valid_labelling_by_labels(const BlossomingTree& t);

// Inverse: reinserts stems. Inner vertices keep their ids; blossoms get ids
// from size() upward in creation order.
BlossomingTree from_valid_labelling(const ValidLabelledTree& v);

struct VertexLabels {
  std::vector<std::int32_t> Y;  // min corner label (blossoming trees only)
  std::vector<std::int32_t> X;  // root-to-vertex displacement sum
};

// Y over all vertices of t; X over inner vertices indexed like t.
VertexLabels vertex_labels(const BlossomingTree& t);
// X only; Y left empty.
VertexLabels vertex_labels(const ValidLabelledTree& v);

// Offspring law of the Galton-Watson tree whose conditioned version gives
// uniform blossoming trees.
double offspring_pmf(Family f, std::uint32_t c);
std::uint32_t sample_offspring(Family f, Rng& rng);
// Acceptance probability applied to a Geometric(1/2) proposal of c.
double offspring_acceptance(Family f, std::uint32_t c);

// Galton-Watson tree conditioned on n vertices; ids are preorder ranks.
// The Lukasiewicz bridge is drawn exactly in O(n) from the negative binomial
// structure of the offspring law, then rotated by the cycle lemma.
PlantedPlaneTree sample_gw_tree(std::size_t n, Family f, Rng& rng);
// Same law: i.i.d. offspring draws rejected unless they sum to n-1.
// Expected O(n^(3/2)) draws.
PlantedPlaneTree sample_gw_tree_rejection(std::size_t n, Family f, Rng& rng);
// Inserts stems uniformly among the interleavings at every vertex.
BlossomingTree attach_stems(const PlantedPlaneTree& tree, Family f, Rng& rng);
// Uniform element of T_n (planted at a uniform inner corner).
BlossomingTree sample_blossoming_tree(std::size_t n, Family f, Rng& rng);

// Guard on exhaustive enumeration (overridable via MAPFORGE_GUARD_N).
std::size_t enumeration_guard();

// All planted plane trees with n vertices, ids = preorder ranks, in a fixed
// order.
std::vector<PlantedPlaneTree> enumerate_plane_trees(std::size_t n);
// All of T_n in deterministic order. Throws GuardError above the guard.
std::vector<BlossomingTree> enumerate_trees(std::size_t n, Family f);

}  // namespace mapforge
