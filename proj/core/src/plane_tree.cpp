#include "mapforge/plane_tree.hpp"

#include <algorithm>
#include <string>

#include "mapforge/common.hpp"

namespace mapforge {

PlantedPlaneTree::PlantedPlaneTree() : root_(0), parent_{kNoVertex}, child_begin_{0, 0} { finish(); }

PlantedPlaneTree::PlantedPlaneTree(const std::vector<std::vector<VertexId>>& children, VertexId root)
    : root_(root) {
  const std::size_t n = children.size();
  if (n == 0) throw InputError("tree must have at least one vertex");
  if (root < 0 || static_cast<std::size_t>(root) >= n) throw InputError("root id out of range");
  parent_.assign(n, kNoVertex);
  child_begin_.assign(n + 1, 0);
  std::vector<std::uint8_t> seen(n, 0);
  seen[root] = 1;
  std::size_t total = 0;
  for (std::size_t v = 0; v < n; ++v) {
    child_begin_[v] = static_cast<std::uint32_t>(total);
    for (VertexId c : children[v]) {
      if (c < 0 || static_cast<std::size_t>(c) >= n) throw InputError("child id out of range");
      if (seen[c]) throw InputError("vertex " + std::to_string(c) + " has two parents or is the root");
      seen[c] = 1;
      parent_[c] = static_cast<VertexId>(v);
      child_list_.push_back(c);
      ++total;
    }
  }
  child_begin_[n] = static_cast<std::uint32_t>(total);
  if (total != n - 1) throw InputError("children lists do not cover every non-root vertex");
  finish();
  if (preorder_.size() != n) throw InputError("children lists contain a cycle");
}

PlantedPlaneTree PlantedPlaneTree::from_parents(const std::vector<VertexId>& parent) {
  std::vector<std::vector<VertexId>> children(parent.size());
  VertexId root = kNoVertex;
  for (std::size_t v = 0; v < parent.size(); ++v) {
    if (parent[v] < 0) {
      if (root != kNoVertex) throw InputError("tree has more than one root");
      root = static_cast<VertexId>(v);
    } else {
      if (static_cast<std::size_t>(parent[v]) >= parent.size()) throw InputError("parent id out of range");
      children[parent[v]].push_back(static_cast<VertexId>(v));
    }
  }
  if (root == kNoVertex) throw InputError("tree has no root");
  return PlantedPlaneTree(children, root);
}

PlantedPlaneTree PlantedPlaneTree::from_child_counts(std::span<const std::uint32_t> counts) {
  const std::size_t n = counts.size();
  if (n == 0) throw InputError("empty child-count sequence");
  std::vector<std::vector<VertexId>> children(n);
  // Stack of vertices still owed children.
  std::vector<VertexId> open;
  open.push_back(0);
  std::vector<std::uint32_t> owed(n, 0);
  owed[0] = counts[0];
  for (std::size_t i = 1; i < n; ++i) {
    while (!open.empty() && owed[open.back()] == 0) open.pop_back();
    if (open.empty()) throw InputError("child counts end the tree early");
    const VertexId p = open.back();
    children[p].push_back(static_cast<VertexId>(i));
    --owed[p];
    owed[i] = counts[i];
    open.push_back(static_cast<VertexId>(i));
  }
  for (VertexId v : open)
    if (owed[v] != 0) throw InputError("child counts leave unfilled slots");
  return PlantedPlaneTree(children, 0);
}

void PlantedPlaneTree::finish() {
  const std::size_t n = parent_.size();
  child_index_.assign(n, 0);
  depth_.assign(n, 0);
  rank_.assign(n, 0);
  subtree_size_.assign(n, 1);
  preorder_.clear();
  preorder_.reserve(n);
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t i = 0; i < child_count(static_cast<VertexId>(v)); ++i)
      child_index_[child(static_cast<VertexId>(v), i)] = static_cast<std::uint32_t>(i);
  std::vector<VertexId> stack{root_};
  while (!stack.empty()) {
    const VertexId v = stack.back();
    stack.pop_back();
    rank_[v] = static_cast<std::uint32_t>(preorder_.size());
    preorder_.push_back(v);
    if (preorder_.size() > n) return;  // cycle; caller reports
    const auto ch = children(v);
    for (auto it = ch.rbegin(); it != ch.rend(); ++it) {
      depth_[*it] = depth_[v] + 1;
      stack.push_back(*it);
    }
  }
  for (auto it = preorder_.rbegin(); it != preorder_.rend(); ++it)
    if (parent_[*it] != kNoVertex) subtree_size_[parent_[*it]] += subtree_size_[*it];
}

std::uint32_t PlantedPlaneTree::height() const { return *std::max_element(depth_.begin(), depth_.end()); }

std::vector<std::uint32_t> PlantedPlaneTree::address(VertexId v) const {
  std::vector<std::uint32_t> addr(depth_[v]);
  for (VertexId u = v; u != root_; u = parent_[u]) addr[depth_[u] - 1] = child_index_[u] + 1;
  return addr;
}

VertexId PlantedPlaneTree::at_address(std::span<const std::uint32_t> addr) const {
  VertexId v = root_;
  for (std::uint32_t i : addr) {
    if (i == 0 || i > child_count(v)) return kNoVertex;
    v = child(v, i - 1);
  }
  return v;
}

PlantedPlaneTree PlantedPlaneTree::rotate_root(std::size_t k) const {
  const std::size_t d = child_count(root_);
  if (d == 0 || k % d == 0) return *this;
  PlantedPlaneTree t = *this;
  auto first = t.child_list_.begin() + child_begin_[root_];
  std::rotate(first, first + static_cast<std::ptrdiff_t>(k % d), first + static_cast<std::ptrdiff_t>(d));
  t.finish();
  return t;
}

ContourSequence contour_exploration(const PlantedPlaneTree& tree) {
  const std::size_t n = tree.size();
  ContourSequence c;
  c.visits.reserve(2 * n - 1);
  c.corner_at.reserve(2 * n - 1);
  c.first_visit.assign(n, 0);
  std::vector<std::uint32_t> occ(n, 0);
  // Iterative walk: (vertex, next child index).
  std::vector<std::pair<VertexId, std::uint32_t>> stack{{tree.root(), 0}};
  auto visit = [&](VertexId v) {
    if (occ[v] == 0) c.first_visit[v] = static_cast<std::uint32_t>(c.visits.size());
    c.visits.push_back(v);
    c.corner_at.push_back({v, occ[v]++});
  };
  visit(tree.root());
  while (!stack.empty()) {
    auto& [v, i] = stack.back();
    if (i < tree.child_count(v)) {
      const VertexId w = tree.child(v, i++);
      stack.push_back({w, 0});
      visit(w);
    } else {
      stack.pop_back();
      if (!stack.empty()) visit(stack.back().first);
    }
  }
  // The closing visit returns to the root corner.
  if (n > 1) c.corner_at.back() = c.corner_at.front();
  return c;
}

namespace {

// Builds the subtree on `keep` (flag per vertex) with the given parent map
// into kept vertices; new ids are lexicographic ranks.
SubTree build_sub(const PlantedPlaneTree& tree, const std::vector<std::uint8_t>& keep,
                  const std::vector<VertexId>& kept_parent, VertexId root) {
  SubTree out;
  std::vector<VertexId> new_id(tree.size(), kNoVertex);
  for (VertexId v : tree.preorder())
    if (keep[v]) {
      new_id[v] = static_cast<VertexId>(out.original_id.size());
      out.original_id.push_back(v);
    }
  std::vector<std::vector<VertexId>> children(out.original_id.size());
  for (VertexId v : out.original_id)
    if (v != root) children[new_id[kept_parent[v]]].push_back(new_id[v]);
  out.tree = PlantedPlaneTree(children, new_id[root]);
  return out;
}

std::vector<std::uint8_t> membership(const PlantedPlaneTree& tree, std::span<const VertexId> R) {
  std::vector<std::uint8_t> in(tree.size(), 0);
  for (VertexId v : R) {
    if (v < 0 || static_cast<std::size_t>(v) >= tree.size()) throw PreconditionError("vertex id out of range");
    in[v] = 1;
  }
  return in;
}

}  // namespace

SubTree reduced_tree(const PlantedPlaneTree& tree, std::span<const VertexId> R) {
  auto in = membership(tree, R);
  if (!in[tree.root()]) throw PreconditionError("reduced_tree: root must belong to R");
  // Nearest strict ancestor in R, computed top-down.
  std::vector<VertexId> anc(tree.size(), kNoVertex);
  for (VertexId v : tree.preorder()) {
    const VertexId p = tree.parent(v);
    if (p == kNoVertex) continue;
    anc[v] = in[p] ? p : anc[p];
  }
  return build_sub(tree, in, anc, tree.root());
}

SubTree spanned_subtree(const PlantedPlaneTree& tree, std::span<const VertexId> R) {
  if (R.empty()) throw PreconditionError("spanned_subtree: R must be non-empty");
  auto in = membership(tree, R);
  std::size_t total = 0;
  for (std::uint8_t b : in) total += b;
  std::vector<std::uint32_t> cnt(tree.size(), 0);
  const auto& pre = tree.preorder();
  for (auto it = pre.rbegin(); it != pre.rend(); ++it) {
    cnt[*it] += in[*it];
    if (tree.parent(*it) != kNoVertex) cnt[tree.parent(*it)] += cnt[*it];
  }
  // Deepest vertex whose subtree holds all of R.
  VertexId top = tree.root();
  for (VertexId v : pre)
    if (cnt[v] == total && tree.depth(v) > tree.depth(top)) top = v;
  std::vector<std::uint8_t> keep(tree.size(), 0);
  const std::size_t lo = tree.preorder_rank(top), hi = lo + tree.subtree_size(top);
  for (std::size_t r = lo; r < hi; ++r)
    if (cnt[pre[r]] > 0) keep[pre[r]] = 1;
  return build_sub(tree, keep, tree.parents(), top);
}

std::vector<std::int32_t> height_process(const PlantedPlaneTree& tree, const ContourSequence& contour) {
  std::vector<std::int32_t> h(contour.visits.size());
  for (std::size_t i = 0; i < h.size(); ++i) h[i] = static_cast<std::int32_t>(tree.depth(contour.visits[i]));
  return h;
}

}  // namespace mapforge
