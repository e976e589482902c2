#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "mapforge/closure.hpp"
#include "mapforge/planar_map.hpp"

namespace mapforge {

// Compressed adjacency (neighbours in clockwise order) for BFS.
struct Adjacency {
  std::vector<std::uint32_t> offset;
  std::vector<VertexId> target;

  explicit Adjacency(const PlanarMap& m);
  std::size_t vertex_count() const { return offset.size() - 1; }
};

std::vector<std::int32_t> bfs_distance(const Adjacency& adj, VertexId source);
std::vector<std::int32_t> bfs_distance(const PlanarMap& m, VertexId source);

// Vertex path to `dest` following, at each step, the smallest-id neighbour
// one step closer. dist must come from a BFS rooted at dest.
std::vector<VertexId> geodesic_to(const Adjacency& adj, const std::vector<std::int32_t>& dist, VertexId from);

struct OrientedPath {
  std::vector<VertexId> vertices;
  std::vector<HalfEdgeId> half_edges;
  // Number of vertices, the length used throughout.
  std::size_t size() const { return vertices.size(); }
};

// Leftmost oriented path from the oriented edge h to A.
OrientedPath leftmost_path(const PlanarMap& m, const EdgeOrientation& ori, VertexId A, VertexId B, HalfEdgeId h);
// Leftmost path in which inner tree edges may be used in either direction.
OrientedPath modified_leftmost_path(const PlanarMap& m, const EdgeOrientation& ori,
                                    const std::vector<std::uint8_t>& inner_tree_edge, VertexId A, HalfEdgeId h);

// |P(h)| for every half-edge directed by ori (0 elsewhere and at B). Throws
// std::logic_error if some leftmost path cycles.
std::vector<std::int32_t> leftmost_lengths(const PlanarMap& m, const EdgeOrientation& ori, VertexId A, VertexId B);

// Two-point upper bound on distances from the labels along the contour.
class TwoPointBound {
 public:
  explicit TwoPointBound(const ClosureResult& c);
  // u, v are inner map vertices.
  std::int32_t operator()(VertexId u, VertexId v) const;
  std::int32_t Y(VertexId u) const { return Y_[u]; }

 private:
  std::int32_t range_min(std::size_t lo, std::size_t hi) const;  // inclusive

  std::vector<std::int32_t> Y_;
  std::vector<std::uint32_t> first_;
  std::vector<std::vector<std::int32_t>> table_;
};

struct WindingDecomposition {
  struct Piece {
    int type;            // 0 for a run along P(e), 1..4 for excursions
    std::size_t from;    // index on P(e)
    std::size_t to;
    bool reversed;       // excursion walked against P(e)
  };
  std::vector<Piece> pieces;
  std::array<int, 5> count{};           // forward excursions by type, count[1..4]
  std::array<int, 5> count_reversed{};  // excursions from u_j back to u_i, i < j
  int w = 0;
};

// Decomposes the simple path Q (vertices, Q.front() = tail of h, Q.back() =
// A) against P(h). Excursions walked backwards are typed as if walked
// forwards and counted with the opposite sign, so w = n3 - n1 - (n3' - n1').
// DomainError on bad input.
WindingDecomposition winding_number(const PlanarMap& m, const EdgeOrientation& ori, VertexId A, VertexId B,
                                    HalfEdgeId h, const std::vector<VertexId>& Q);

// BFS tree of the dual rooted at the root face; parent[f] is the crossed
// half-edge, seen from the parent's side.
struct DualTree {
  std::vector<HalfEdgeId> parent;
  explicit DualTree(const PlanarMap& m);
};

// Winding number of Q followed by reversed P(h) around the face right of h,
// counted by signed crossings of a dual path from the root face.
int winding_by_crossings(const PlanarMap& m, const EdgeOrientation& ori, VertexId A, VertexId B, HalfEdgeId h,
                         const std::vector<VertexId>& Q);
int winding_by_crossings(const PlanarMap& m, const EdgeOrientation& ori, VertexId A, VertexId B, HalfEdgeId h,
                         const std::vector<VertexId>& Q, const DualTree& dual);

struct LabelDistanceProfile {
  std::int32_t max_err = 0;
  double mean_err = 0;
  double max_err_scaled = 0;  // max_err / N^(1/4), N = vertex count
  std::size_t sandwich_violations = 0;
};
// err(u) = (Y(u) - 1) - d(u, A); also counts violations of
// Y(u)/3 <= d(u,A) <= Y(u) - 1.
LabelDistanceProfile label_distance_profile(const std::vector<std::int32_t>& Y, const std::vector<std::int32_t>& distA);

}  // namespace mapforge
