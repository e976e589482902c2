#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace mapforge {

using VertexId = std::int32_t;
constexpr VertexId kNoVertex = -1;

// Rooted plane tree. Children of each vertex are stored in clockwise order
// starting right after the edge to the parent; for the root they start right
// after the root corner. Vertex ids are arbitrary dense integers.
class PlantedPlaneTree {
 public:
  // The single-vertex tree.
  PlantedPlaneTree();
  // children[v] lists the ordered children of v. Throws InputError unless
  // the lists describe a tree rooted at `root` covering all ids.
  PlantedPlaneTree(const std::vector<std::vector<VertexId>>& children, VertexId root);

  // parent[root] = -1; siblings are ordered by increasing id.
  static PlantedPlaneTree from_parents(const std::vector<VertexId>& parent);
  // Builds the tree whose preorder child counts are `counts` (Lukasiewicz
  // code). Vertex ids equal preorder ranks.
  static PlantedPlaneTree from_child_counts(std::span<const std::uint32_t> counts);

  std::size_t size() const { return parent_.size(); }
  std::size_t edge_count() const { return parent_.size() - 1; }
  VertexId root() const { return root_; }
  VertexId parent(VertexId v) const { return parent_[v]; }
  std::span<const VertexId> children(VertexId v) const {
    return {child_list_.data() + child_begin_[v], child_list_.data() + child_begin_[v + 1]};
  }
  std::size_t child_count(VertexId v) const { return child_begin_[v + 1] - child_begin_[v]; }
  VertexId child(VertexId v, std::size_t i) const { return child_list_[child_begin_[v] + i]; }
  // Position of v among its siblings (0 for the root).
  std::size_t child_index(VertexId v) const { return child_index_[v]; }
  std::size_t degree(VertexId v) const { return child_count(v) + (v == root_ ? 0 : 1); }
  std::uint32_t depth(VertexId v) const { return depth_[v]; }
  std::uint32_t height() const;
  // Vertices in lexicographic (depth-first, children in order) order.
  const std::vector<VertexId>& preorder() const { return preorder_; }
  std::size_t preorder_rank(VertexId v) const { return rank_[v]; }
  // Subtree size including v.
  std::size_t subtree_size(VertexId v) const { return subtree_size_[v]; }
  const std::vector<VertexId>& parents() const { return parent_; }

  // Ulam-Harris address: 1-based child indices from the root.
  std::vector<std::uint32_t> address(VertexId v) const;
  VertexId at_address(std::span<const std::uint32_t> addr) const;

  // Same tree with the root's children cyclically rotated so that child k
  // comes first (moves the root corner).
  PlantedPlaneTree rotate_root(std::size_t k) const;

  // Equal as planted plane trees with identical ids.
  bool operator==(const PlantedPlaneTree& o) const {
    return root_ == o.root_ && parent_ == o.parent_ && child_list_ == o.child_list_ &&
           child_begin_ == o.child_begin_;
  }

 private:
  void finish();

  VertexId root_ = 0;
  std::vector<VertexId> parent_;
  std::vector<std::uint32_t> child_begin_;
  std::vector<VertexId> child_list_;
  std::vector<std::uint32_t> child_index_;
  std::vector<std::uint32_t> depth_;
  std::vector<VertexId> preorder_;
  std::vector<std::uint32_t> rank_;
  std::vector<std::uint32_t> subtree_size_;
};

// A corner is identified by its vertex and the number of earlier visits of
// that vertex in the contour.
struct TreeCorner {
  VertexId vertex;
  std::uint32_t occurrence;
  bool operator==(const TreeCorner&) const = default;
};

struct ContourSequence {
  // visits[i] = r(i), i = 0..2|V|-2; visits.back() is the root again. A
  // single vertex gives a length-1 sequence.
  std::vector<VertexId> visits;
  // corner_at[i] = xi(i); corner_at.back() equals corner_at[0].
  std::vector<TreeCorner> corner_at;
  // First contour index at which each vertex is visited.
  std::vector<std::uint32_t> first_visit;

  std::size_t steps() const { return visits.size() - 1; }
};

ContourSequence contour_exploration(const PlantedPlaneTree& tree);

struct SubTree {
  PlantedPlaneTree tree;
  // original_id[new id]; new ids follow the lexicographic order.
  std::vector<VertexId> original_id;
};

// Tree on R whose edges join R-vertices with no other R-vertex in between.
// Root must be in R (PreconditionError otherwise).
SubTree reduced_tree(const PlantedPlaneTree& tree, std::span<const VertexId> R);

// Union of the tree paths between vertices of R, rooted at their common
// ancestor. R must be non-empty.
SubTree spanned_subtree(const PlantedPlaneTree& tree, std::span<const VertexId> R);

// Contour (height) process: C[i] = depth(r(i)).
std::vector<std::int32_t> height_process(const PlantedPlaneTree& tree, const ContourSequence& contour);

}  // namespace mapforge
