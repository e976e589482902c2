#include "mapforge/blossoming.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>

namespace mapforge {

std::size_t BlossomingTree::inner_count() const {
  std::size_t n = 0;
  for (auto b : is_blossom) n += b ? 0 : 1;
  return n;
}

void validate(const BlossomingTree& t) {
  const auto& tr = t.tree;
  if (t.is_blossom.size() != tr.size()) throw InputError("is_blossom has wrong length");
  if (t.blossom(tr.root())) throw InputError("root corner lies at a blossom");
  const unsigned k = stems_per_vertex(t.family);
  for (std::size_t v = 0; v < tr.size(); ++v) {
    const auto id = static_cast<VertexId>(v);
    if (t.blossom(id)) {
      if (tr.degree(id) != 1) throw InputError("blossom " + std::to_string(v) + " does not have degree one");
      if (t.blossom(tr.parent(id))) throw InputError("blossom " + std::to_string(v) + " hangs off a blossom");
      continue;
    }
    unsigned stems = 0;
    for (VertexId c : tr.children(id)) stems += t.blossom(c) ? 1 : 0;
    if (stems != k)
      throw InputError("inner vertex " + std::to_string(v) + " carries " + std::to_string(stems) + " stems, expected " +
                       std::to_string(k));
  }
}

std::vector<std::int32_t> canonical_code(const BlossomingTree& t) {
  std::vector<std::int32_t> code;
  code.reserve(t.tree.size());
  for (VertexId v : t.tree.preorder())
    code.push_back(t.blossom(v) ? -1 : static_cast<std::int32_t>(t.tree.child_count(v)));
  return code;
}

std::vector<std::int32_t> corner_labelling(const BlossomingTree& t, const ContourSequence& contour) {
  const std::size_t L = contour.steps();
  std::vector<std::int32_t> lab(L + 1);
  lab[0] = 2;
  const int up = stem_return_step(t.family);
  for (std::size_t i = 0; i < L; ++i) {
    const bool from_b = t.blossom(contour.visits[i]);
    const bool to_b = t.blossom(contour.visits[i + 1]);
    lab[i + 1] = lab[i] + (from_b ? up : (to_b ? 0 : -1));
  }
  return lab;
}

std::vector<std::int32_t> corner_labelling(const BlossomingTree& t) {
  return corner_labelling(t, contour_exploration(t.tree));
}

bool stem_condition(const BlossomingTree& t, const ContourSequence& contour, std::size_t j) {
  const std::size_t L = contour.steps();
  const VertexId v = contour.visits[j];
  if (t.blossom(v)) return false;
  const VertexId before = contour.visits[j == 0 ? L - 1 : j - 1];
  const VertexId after = contour.visits[j + 1];
  if (t.family == Family::Triangulation) return t.blossom(before) && t.blossom(after) && before != after;
  return t.blossom(before) || t.blossom(after);
}

namespace {

// Quadrangulations: a lap of the contour meets the unclosed stems with label
// steps of +1 or 0; the balanced corners sit just before the two stems
// reached by a +1 step. A stem is unclosed when no later corner, counting
// the +2 per lap, has a smaller label.
std::vector<std::size_t> quad_balanced_indices(const BlossomingTree& t, const ContourSequence& contour,
                                               const std::vector<std::int32_t>& lab) {
  const std::size_t L = contour.steps();
  if (L == 2) return {0};
  std::vector<std::int32_t> sufmin(2 * L + 1, std::numeric_limits<std::int32_t>::max());
  for (std::size_t i = 2 * L; i-- > 0;) sufmin[i] = std::min(sufmin[i + 1], lab[i % L] + (i >= L ? 2 : 0));
  std::vector<std::size_t> unclosed;
  for (std::size_t p = 0; p < L; ++p)
    if (t.blossom(contour.visits[p]) && sufmin[p + 1] >= lab[p]) unclosed.push_back(p);
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < unclosed.size(); ++k) {
    const std::size_t p = unclosed[k];
    const std::int32_t prev = k == 0 ? lab[unclosed.back()] - 2 : lab[unclosed[k - 1]];
    if (lab[p] - prev == 1) out.push_back(p - 1);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Contour indices j that are inner, satisfy the stem condition and whose
// rerooted labelling never drops below 2.
std::vector<std::size_t> balanced_indices(const BlossomingTree& t, const ContourSequence& contour) {
  const std::size_t L = contour.steps();
  const auto lab = corner_labelling(t, contour);
  if (t.family == Family::Quadrangulation) return quad_balanced_indices(t, contour, lab);
  std::vector<std::int32_t> sufmin(L + 1, std::numeric_limits<std::int32_t>::max());
  for (std::size_t i = L; i-- > 0;) sufmin[i] = std::min(sufmin[i + 1], lab[i]);
  std::vector<std::size_t> out;
  std::int32_t premin = std::numeric_limits<std::int32_t>::max() - 2;
  for (std::size_t j = 0; j < L; ++j) {
    if (stem_condition(t, contour, j) && lab[j] <= sufmin[j] && lab[j] <= premin + 2) out.push_back(j);
    premin = std::min(premin, lab[j]);
  }
  return out;
}

}  // namespace

std::pair<std::size_t, std::size_t> balanced_corners(const BlossomingTree& t) {
  const auto contour = contour_exploration(t.tree);
  const auto idx = balanced_indices(t, contour);
  const std::size_t L = contour.steps();
  // A lone inner vertex in a quadrangulation tree has a single corner.
  if (idx.size() == 1 && L == 2) return {idx[0], idx[0]};
  if (idx.size() != 2)
    throw std::logic_error("balanced_corners: found " + std::to_string(idx.size()) + " balanced corners");
  return {idx[0], idx[1]};
}

bool is_balanced(const BlossomingTree& t) {
  const auto contour = contour_exploration(t.tree);
  const auto idx = balanced_indices(t, contour);
  return !idx.empty() && idx.front() == 0;
}

BlossomingTree reroot(const BlossomingTree& t, const ContourSequence& contour, std::size_t j) {
  const auto& tr = t.tree;
  const std::size_t n = tr.size();
  if (j >= contour.steps() && !(j == 0 && n == 1)) throw PreconditionError("reroot: corner index out of range");
  if (n == 1) return t;
  const VertexId r = contour.visits[j];
  // Cyclic neighbour list around each vertex, in contour (clockwise) order.
  auto neighbours = [&](VertexId u) {
    std::vector<VertexId> nb;
    if (tr.parent(u) != kNoVertex) nb.push_back(tr.parent(u));
    for (VertexId c : tr.children(u)) nb.push_back(c);
    return nb;
  };
  std::vector<std::vector<VertexId>> children(n);
  std::vector<VertexId> new_parent(n, kNoVertex);
  std::vector<VertexId> queue{r};
  std::vector<std::uint8_t> seen(n, 0);
  seen[r] = 1;
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    const VertexId u = queue[qi];
    auto nb = neighbours(u);
    VertexId start;
    if (u == r) {
      start = contour.visits[j + 1];
    } else {
      const auto it = std::find(nb.begin(), nb.end(), new_parent[u]);
      start = it + 1 == nb.end() ? nb.front() : *(it + 1);
    }
    const auto s = std::find(nb.begin(), nb.end(), start);
    std::rotate(nb.begin(), s, nb.end());
    for (VertexId w : nb) {
      if (w == new_parent[u]) continue;
      children[u].push_back(w);
      new_parent[w] = u;
      seen[w] = 1;
      queue.push_back(w);
    }
  }
  BlossomingTree out;
  out.tree = PlantedPlaneTree(children, r);
  out.is_blossom = t.is_blossom;
  out.family = t.family;
  return out;
}

BlossomingTree reroot(const BlossomingTree& t, std::size_t j) { return reroot(t, contour_exploration(t.tree), j); }

std::vector<std::size_t> inner_corners(const BlossomingTree& t, const ContourSequence& contour) {
  std::vector<std::size_t> out;
  const std::size_t L = std::max<std::size_t>(contour.steps(), 1);
  for (std::size_t j = 0; j < L; ++j)
    if (!t.blossom(contour.visits[j])) out.push_back(j);
  return out;
}

void validate(const ValidLabelledTree& v) {
  const auto& tr = v.tree;
  if (v.disp.size() != tr.size()) throw InputError("displacement vector has wrong length");
  for (std::size_t u = 0; u < tr.size(); ++u) {
    const auto id = static_cast<VertexId>(u);
    std::int8_t prev = -1;
    for (VertexId c : tr.children(id)) {
      const std::int8_t d = v.disp[c];
      const bool ok = v.family == Family::Triangulation ? (d >= -1 && d <= 1) : (d == -1 || d == 1);
      if (!ok) throw InputError("displacement of vertex " + std::to_string(c) + " outside the alphabet");
      if (d < prev) throw InputError("displacements decrease among the children of vertex " + std::to_string(u));
      prev = d;
    }
  }
}

namespace {

// Inner subtree with ids = preorder ranks among inner vertices.
InnerLabelling strip_blossoms(const BlossomingTree& t) {
  const auto& tr = t.tree;
  InnerLabelling out;
  std::vector<VertexId> new_id(tr.size(), kNoVertex);
  for (VertexId v : tr.preorder())
    if (!t.blossom(v)) {
      new_id[v] = static_cast<VertexId>(out.original_id.size());
      out.original_id.push_back(v);
    }
  std::vector<std::vector<VertexId>> children(out.original_id.size());
  for (VertexId v : out.original_id)
    for (VertexId c : tr.children(v))
      if (!t.blossom(c)) children[new_id[v]].push_back(new_id[c]);
  out.labelled.tree = PlantedPlaneTree(children, 0);
  out.labelled.disp.assign(out.original_id.size(), 0);
  out.labelled.family = t.family;
  return out;
}

}  // namespace

InnerLabelling to_valid_labelling(const BlossomingTree& t) {
  auto out = strip_blossoms(t);
  const auto& tr = t.tree;
  const int scale = t.family == Family::Triangulation ? 1 : 2;
  std::vector<VertexId> new_id(tr.size(), kNoVertex);
  for (std::size_t i = 0; i < out.original_id.size(); ++i) new_id[out.original_id[i]] = static_cast<VertexId>(i);
  for (VertexId p : out.original_id) {
    int stems = 0;
    for (VertexId c : tr.children(p)) {
      if (t.blossom(c))
        ++stems;
      else
        out.labelled.disp[new_id[c]] = static_cast<std::int8_t>(scale * stems - 1);
    }
  }
  return out;
}

InnerLabelling to_valid_labelling_by_labels(const BlossomingTree& t) {
  auto out = strip_blossoms(t);
  const auto Y = vertex_labels(t).Y;
  const auto& inner = out.labelled.tree;
  for (std::size_t i = 0; i < inner.size(); ++i) {
    const auto id = static_cast<VertexId>(i);
    if (id == inner.root()) continue;
    out.labelled.disp[i] =
        static_cast<std::int8_t>(Y[out.original_id[i]] - Y[out.original_id[inner.parent(id)]]);
  }
  return out;
}

BlossomingTree from_valid_labelling(const ValidLabelledTree& v) {
  validate(v);
  const auto& tr = v.tree;
  const std::size_t n = tr.size();
  const bool tri = v.family == Family::Triangulation;
  std::vector<std::vector<VertexId>> children(n);
  std::vector<std::uint8_t> blossom(n, 0);
  VertexId next = static_cast<VertexId>(n);
  auto add_stems = [&](VertexId u, int count) {
    if (count < 0) throw InputError("negative stem count; labelling is not valid");
    for (int i = 0; i < count; ++i) {
      children[u].push_back(next++);
      children.emplace_back();
      blossom.push_back(1);
    }
  };
  // Lexicographic order of inner vertices keeps blossom ids in lex order.
  for (VertexId u : tr.preorder()) {
    const auto ch = tr.children(u);
    if (ch.empty()) {
      add_stems(u, tri ? 2 : 1);
      continue;
    }
    auto gap = [&](int diff) { return tri ? diff : diff / 2; };
    add_stems(u, gap(v.disp[ch.front()] + 1));
    for (std::size_t i = 0; i < ch.size(); ++i) {
      children[u].push_back(ch[i]);
      if (i + 1 < ch.size()) add_stems(u, gap(v.disp[ch[i + 1]] - v.disp[ch[i]]));
    }
    add_stems(u, gap(1 - v.disp[ch.back()]));
  }
  BlossomingTree out;
  out.tree = PlantedPlaneTree(children, tr.root());
  out.is_blossom = std::move(blossom);
  out.family = v.family;
  return out;
}

VertexLabels vertex_labels(const BlossomingTree& t) {
  const auto contour = contour_exploration(t.tree);
  const auto lab = corner_labelling(t, contour);
  VertexLabels out;
  out.Y.assign(t.tree.size(), std::numeric_limits<std::int32_t>::max());
  for (std::size_t i = 0; i < contour.steps(); ++i) {
    auto& y = out.Y[contour.visits[i]];
    y = std::min(y, lab[i]);
  }
  const auto inner = to_valid_labelling(t);
  const auto X = vertex_labels(inner.labelled).X;
  out.X.assign(t.tree.size(), 0);
  for (std::size_t i = 0; i < X.size(); ++i) out.X[inner.original_id[i]] = X[i];
  return out;
}

VertexLabels vertex_labels(const ValidLabelledTree& v) {
  VertexLabels out;
  out.X.assign(v.tree.size(), 0);
  for (VertexId u : v.tree.preorder())
    if (u != v.tree.root()) out.X[u] = out.X[v.tree.parent(u)] + v.disp[u];
  return out;
}

double offspring_pmf(Family f, std::uint32_t c) {
  const double x = c;
  if (f == Family::Triangulation) return (x + 2) * (x + 1) / 2 * std::pow(0.25, x) * 27.0 / 64.0;
  return (x + 1) * std::pow(1.0 / 3.0, x) * 4.0 / 9.0;
}

double offspring_acceptance(Family f, std::uint32_t c) {
  const double x = c;
  if (f == Family::Triangulation) return (x + 2) * (x + 1) / 2 * std::pow(0.5, x) / 1.5;
  return (x + 1) * std::pow(2.0 / 3.0, x) / (4.0 / 3.0);
}

std::uint32_t sample_offspring(Family f, Rng& rng) {
  for (;;) {
    const double g = std::floor(-std::log2(rng.uniform_pos()));
    const auto c = static_cast<std::uint32_t>(g);
    if (rng.uniform() < offspring_acceptance(f, c)) return c;
  }
}

namespace {

PlantedPlaneTree cycle_lemma_tree(std::vector<std::uint32_t> k) {
  // Start right after the first minimum of the walk.
  const std::size_t n = k.size();
  std::int64_t s = 0, best = std::numeric_limits<std::int64_t>::max();
  std::size_t m = 0;
  for (std::size_t j = 0; j < n; ++j) {
    s += static_cast<std::int64_t>(k[j]) - 1;
    if (s < best) {
      best = s;
      m = j + 1;
    }
  }
  std::rotate(k.begin(), k.begin() + static_cast<std::ptrdiff_t>(m % n), k.end());
  return PlantedPlaneTree::from_child_counts(k);
}

}  // namespace

PlantedPlaneTree sample_gw_tree_rejection(std::size_t n, Family f, Rng& rng) {
  if (n == 0) throw PreconditionError("sample_gw_tree: n must be positive");
  std::vector<std::uint32_t> k(n);
  for (;;) {
    std::size_t sum = 0;
    bool over = false;
    for (std::size_t i = 0; i < n; ++i) {
      k[i] = sample_offspring(f, rng);
      sum += k[i];
      if (sum > n - 1) {
        over = true;
        break;
      }
    }
    if (!over && sum == n - 1) break;
  }
  return cycle_lemma_tree(std::move(k));
}

PlantedPlaneTree sample_gw_tree(std::size_t n, Family f, Rng& rng) {
  if (n == 0) throw PreconditionError("sample_gw_tree: n must be positive");
  // B is a sum of r geometric variables (r = 3 tri, 2 quad). Given their
  // total n-1, the r*n geometric parts form a uniform weak composition:
  // n-1 stars and r*n-1 bars in uniformly random order.
  const std::size_t r = f == Family::Triangulation ? 3 : 2;
  const std::size_t parts = r * n;
  std::size_t stars = n - 1, slots = stars + parts - 1;
  std::vector<std::uint32_t> k(n, 0);
  std::size_t part = 0;
  for (; slots > 0; --slots) {
    if (stars > 0 && rng.below(slots) < stars) {
      ++k[part / r];
      --stars;
    } else {
      ++part;
    }
  }
  return cycle_lemma_tree(std::move(k));
}

BlossomingTree attach_stems(const PlantedPlaneTree& tree, Family f, Rng& rng) {
  const std::size_t n = tree.size();
  std::vector<std::vector<VertexId>> children(n);
  std::vector<std::uint8_t> blossom(n, 0);
  VertexId next = static_cast<VertexId>(n);
  for (VertexId u : tree.preorder()) {
    const auto ch = tree.children(u);
    const std::size_t slots = ch.size() + stems_per_vertex(f);
    std::size_t a, b;
    if (f == Family::Triangulation) {
      a = rng.below(slots);
      b = rng.below(slots - 1);
      if (b >= a) ++b;
      if (a > b) std::swap(a, b);
    } else {
      a = b = rng.below(slots);
    }
    std::size_t ci = 0;
    for (std::size_t s = 0; s < slots; ++s) {
      if (s == a || s == b) {
        children[u].push_back(next++);
        children.emplace_back();
        blossom.push_back(1);
      } else {
        children[u].push_back(ch[ci++]);
      }
    }
  }
  BlossomingTree out;
  out.tree = PlantedPlaneTree(children, tree.root());
  out.is_blossom = std::move(blossom);
  out.family = f;
  return out;
}

BlossomingTree sample_blossoming_tree(std::size_t n, Family f, Rng& rng) {
  auto tree = sample_gw_tree(n, f, rng);
  return attach_stems(tree, f, rng);
}

std::size_t enumeration_guard() {
  if (const char* s = std::getenv("MAPFORGE_GUARD_N")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(s, &end, 10);
    if (end != s && *end == '\0') return v;
  }
  return 8;
}

std::vector<PlantedPlaneTree> enumerate_plane_trees(std::size_t n) {
  std::vector<PlantedPlaneTree> out;
  if (n == 0) return out;
  std::vector<std::uint32_t> k(n);
  // Walk height after j counts is 1 + sum(k_i - 1); must stay positive
  // before the end and hit zero exactly at n.
  auto rec = [&](auto&& self, std::size_t j, std::int64_t open) -> void {
    if (j == n) {
      if (open == 0) out.push_back(PlantedPlaneTree::from_child_counts(k));
      return;
    }
    const std::int64_t remaining = static_cast<std::int64_t>(n - j);
    for (std::int64_t c = 0; open - 1 + c <= remaining - 1; ++c) {
      const std::int64_t next = open - 1 + c;
      if (next == 0 && j + 1 < n) continue;
      k[j] = static_cast<std::uint32_t>(c);
      self(self, j + 1, next);
    }
  };
  rec(rec, 0, 1);
  return out;
}

std::vector<BlossomingTree> enumerate_trees(std::size_t n, Family f) {
  if (n == 0) throw PreconditionError("enumerate_trees: n must be positive");
  if (n > enumeration_guard())
    throw GuardError("enumerate_trees: n=" + std::to_string(n) + " exceeds guard " +
                     std::to_string(enumeration_guard()) + " (set MAPFORGE_GUARD_N to override)");
  const std::vector<std::int8_t> alphabet =
      f == Family::Triangulation ? std::vector<std::int8_t>{-1, 0, 1} : std::vector<std::int8_t>{-1, 1};
  std::vector<BlossomingTree> out;
  for (const auto& tree : enumerate_plane_trees(n)) {
    ValidLabelledTree v{tree, std::vector<std::int8_t>(n, 0), f};
    // Non-root vertices in preorder; each one's value is bounded below by its
    // previous sibling's.
    const auto& pre = tree.preorder();
    auto rec = [&](auto&& self, std::size_t idx) -> void {
      if (idx == pre.size()) {
        out.push_back(from_valid_labelling(v));
        return;
      }
      const VertexId u = pre[idx];
      if (u == tree.root()) return self(self, idx + 1);
      const std::size_t ci = tree.child_index(u);
      const std::int8_t lo = ci == 0 ? alphabet.front() : v.disp[tree.child(tree.parent(u), ci - 1)];
      for (std::int8_t d : alphabet) {
        if (d < lo) continue;
        v.disp[u] = d;
        self(self, idx + 1);
      }
    };
    rec(rec, 0);
  }
  return out;
}

}  // namespace mapforge
