#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mapforge/blossoming.hpp"
#include "mapforge/planar_map.hpp"

namespace mapforge {

// Closure of a balanced blossoming tree.
//
// Half-edge numbering: the tree edge above the vertex of lexicographic rank
// k+1 is edge k; 2k points away from the root, 2k+1 towards it. The map
// keeps these ids for tree edges and adds the edge {A,B} last, with A->B
// even. Inner vertices become map vertices 0..n-1 in lexicographic order,
// followed by A = n and B = n+1.
struct ClosureResult {
  PlanarMap map;
  EdgeOrientation orientation;
  Family family = Family::Triangulation;
  // Indexed by map corner (half-edge id).
  std::vector<std::int32_t> lambda_star;
  VertexId A = kNoVertex, B = kNoVertex;
  // tree_vertex_ids[map vertex] = tree vertex id (-1 for A and B).
  std::vector<VertexId> tree_vertex_ids;
  // map_vertex[tree vertex] (-1 for blossoms).
  std::vector<VertexId> map_vertex;
  // Per map edge: whether it is an edge between two inner tree vertices.
  std::vector<std::uint8_t> inner_tree_edge;
  // Tree contour: corner half-edges c_i, labels lambda(i), i = 0..L-1.
  std::vector<HalfEdgeId> contour_corner;
  std::vector<std::int32_t> contour_label;
  std::vector<VertexId> contour_vertex;  // tree vertex ids
  // inner_corner_image[i] for inner contour corners i, -1 at blossoms.
  std::vector<HalfEdgeId> inner_corner_image;
  // Y per map vertex, extended by Y(A) = 1, Y(B) = 2.
  std::vector<std::int32_t> Y;

  std::size_t inner_count() const { return map.vertex_count() - 2; }
};

// First corner after blossom corner `j` (contour index) whose label, counted
// with the +2 gained per lap, is below lambda(j); nullopt if none within one
// lap.
std::optional<std::size_t> successor(const std::vector<std::int32_t>& labels, std::size_t j);

// Partial closure as a rotation system on the tree half-edges. Unclosed
// up half-edges stay at their blossom. Two independent constructions.
struct PartialClosure {
  std::vector<HalfEdgeId> next_cw;
  std::vector<VertexId> vertex_of;  // tree vertex ids
  std::vector<std::uint8_t> closed;  // per blossom tree vertex
};
PartialClosure partial_closure_by_labels(const BlossomingTree& t);
PartialClosure partial_closure_by_local_closures(const BlossomingTree& t);

// Closes a tree planted at a balanced corner (DomainError otherwise).
ClosureResult close(const BlossomingTree& t);

struct MarkedClosure {
  ClosureResult closure;
  HalfEdgeId marked_corner;
};
// t planted at a balanced corner; `inner_corner` a contour index of an inner
// corner of t.
MarkedClosure close_marked(const BlossomingTree& t, std::size_t inner_corner);

// Opening: recovers the balanced tree from a simple rooted k-angulation and
// its minimal orientation. DomainError on invalid input.
BlossomingTree open(const PlanarMap& m, const EdgeOrientation& ori, Family f);

}  // namespace mapforge
