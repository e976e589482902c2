#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mapforge/blossoming.hpp"
#include "mapforge/closure.hpp"
#include "mapforge/planar_map.hpp"
#include "mapforge/plane_tree.hpp"

namespace mapforge {

// All writers produce newline-free JSON with keys in sorted order, so equal
// objects serialize to equal bytes. Readers throw InputError whose message
// starts with "line L, column C" for syntax errors and names the offending
// field otherwise.

// {"child_order": [...], "parent": [...], "root_corner": 0}. child_order[v]
// is v's index among its siblings (0 at the root); parent of the root is -1.
std::string tree_to_json(const PlantedPlaneTree& t);
// A non-zero root_corner k plants the tree at the root's k-th corner.
PlantedPlaneTree tree_from_json(const std::string& text);

// Tree format plus "is_blossom" and "family".
std::string blossoming_to_json(const BlossomingTree& t);
BlossomingTree blossoming_from_json(const std::string& text);

// Contents of a map file. Closure data is present only when the file came
// from a closure.
struct MapFile {
  PlanarMap map;
  std::optional<EdgeOrientation> orientation;
  std::optional<Family> family;
  std::vector<std::int32_t> lambda_star;
  VertexId A = kNoVertex, B = kNoVertex;
  std::vector<VertexId> tree_vertex_ids;
};

// {"n_half_edges", "next_cw", "vertex_of", "root_half_edge"} plus
// "orientation" (one bit per edge: 1 when the odd half-edge is the outgoing
// one) when given. Map writers renumber canonically: vertices in BFS order
// from the root vertex, half-edges clockwise from the entry half-edge of
// each vertex, the root half-edge becoming 0. Isomorphic rooted maps give
// identical bytes.
std::string map_to_json(const PlanarMap& m, const EdgeOrientation* ori = nullptr);
// Map format plus "family", "lambda_star" (per corner), "A", "B" and
// "tree_vertex_ids" (preorder rank in the balanced tree, -1 for A and B).
std::string closure_to_json(const ClosureResult& c);
// Rejects non-planar rotations with GenusError.
MapFile map_from_json(const std::string& text);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

// FNV-1a 64 over the canonical serialization, as 16 lowercase hex digits.
std::string checksum_hex(const std::string& canonical);

}  // namespace mapforge
