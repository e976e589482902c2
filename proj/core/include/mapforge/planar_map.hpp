#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mapforge/common.hpp"
#include "mapforge/plane_tree.hpp"

namespace mapforge {

using HalfEdgeId = std::int32_t;
using FaceId = std::int32_t;
constexpr HalfEdgeId kNoHalfEdge = -1;

constexpr HalfEdgeId twin(HalfEdgeId h) { return h ^ 1; }
constexpr std::int32_t edge_of(HalfEdgeId h) { return h >> 1; }

// Rotation-system map on the sphere. next_cw(h) is the half-edge following h
// clockwise around its tail vertex_of(h). Faces are traced by
// h -> next_cw(twin(h)) and lie to the left of their half-edges. Corner h is
// the corner between h and next_cw(h). The root corner is root_half_edge().
class PlanarMap {
 public:
  PlanarMap() = default;
  // Validates pairing, rotation consistency and genus 0 (GenusError).
  PlanarMap(std::vector<HalfEdgeId> next_cw, std::vector<VertexId> vertex_of, HalfEdgeId root);
  // rotation[v] lists the half-edges leaving v in clockwise order.
  static PlanarMap from_rotation(const std::vector<std::vector<HalfEdgeId>>& rotation, HalfEdgeId root);

  std::size_t half_edge_count() const { return next_.size(); }
  std::size_t edge_count() const { return next_.size() / 2; }
  std::size_t vertex_count() const { return first_.size(); }
  std::size_t face_count() const { return face_first_.size(); }

  HalfEdgeId next_cw(HalfEdgeId h) const { return next_[h]; }
  HalfEdgeId prev_cw(HalfEdgeId h) const { return prev_[h]; }
  VertexId vertex_of(HalfEdgeId h) const { return tail_[h]; }
  VertexId target(HalfEdgeId h) const { return tail_[twin(h)]; }
  HalfEdgeId face_next(HalfEdgeId h) const { return next_[twin(h)]; }
  FaceId face_of(HalfEdgeId h) const { return face_[h]; }
  HalfEdgeId face_first(FaceId f) const { return face_first_[f]; }
  std::uint32_t face_size(FaceId f) const { return face_size_[f]; }
  // Some half-edge leaving v.
  HalfEdgeId first_half_edge(VertexId v) const { return first_[v]; }
  std::uint32_t degree(VertexId v) const { return degree_[v]; }
  HalfEdgeId root_half_edge() const { return root_; }
  VertexId root_vertex() const { return tail_[root_]; }
  // Face holding the root corner.
  FaceId root_face() const { return face_[twin(root_)]; }

  const std::vector<HalfEdgeId>& next_cw_array() const { return next_; }
  const std::vector<VertexId>& vertex_of_array() const { return tail_; }

  bool is_simple() const;
  std::vector<std::uint32_t> face_degrees() const;
  bool is_k_angulation(unsigned k) const;

  // Same map, new root corner.
  PlanarMap with_root(HalfEdgeId root) const;

 private:
  std::vector<HalfEdgeId> next_, prev_;
  std::vector<VertexId> tail_;
  std::vector<HalfEdgeId> first_;
  std::vector<std::uint32_t> degree_;
  std::vector<FaceId> face_;
  std::vector<HalfEdgeId> face_first_;
  std::vector<std::uint32_t> face_size_;
  HalfEdgeId root_ = 0;
};

// Euler genus of a rotation system; throws InputError on malformed input.
int genus(const std::vector<HalfEdgeId>& next_cw, const std::vector<VertexId>& vertex_of);

// bit[e] selects the half-edge 2e + bit[e] as the edge's direction.
struct EdgeOrientation {
  std::vector<std::uint8_t> bit;

  HalfEdgeId out(std::int32_t e) const { return 2 * e + bit[e]; }
  bool is_out(HalfEdgeId h) const { return (h & 1) == bit[h >> 1]; }
  void reverse(std::int32_t e) { bit[e] ^= 1; }
  bool operator==(const EdgeOrientation&) const = default;
};

std::vector<std::uint32_t> outdegrees(const PlanarMap& m, const EdgeOrientation& ori);

// Root-face vertices: clockwise v, A, B (and w for quadrangulations).
struct RootFace {
  VertexId v = kNoVertex, A = kNoVertex, B = kNoVertex, w = kNoVertex;
};
RootFace root_face_vertices(const PlanarMap& m, Family f);

// Required outdegree of each vertex.
std::vector<std::uint32_t> alpha_profile(const PlanarMap& m, Family f);

struct OrientationReport {
  bool ok = true;
  std::vector<VertexId> offending;
  std::vector<std::uint32_t> outdeg;
  std::string message;
};
OrientationReport check_orientation(const PlanarMap& m, const EdgeOrientation& ori, Family f);

// No directed cycle with the root face on its right.
bool is_minimal(const PlanarMap& m, const EdgeOrientation& ori);

// Some orientation with the family's outdegree profile (DomainError if none).
EdgeOrientation any_alpha_orientation(const PlanarMap& m, Family f);
// The unique minimal one. DomainError unless m is a simple k-angulation.
EdgeOrientation minimal_orientation(const PlanarMap& m, Family f);
// Flips counterclockwise cycles of an alpha-orientation until none remain.
EdgeOrientation minimize(const PlanarMap& m, EdgeOrientation ori);

// Rooted-map invariant: equal codes iff the rooted maps (with orientation,
// if given) are isomorphic.
std::vector<std::int32_t> canonical_code(const PlanarMap& m, const EdgeOrientation* ori = nullptr);

}  // namespace mapforge
