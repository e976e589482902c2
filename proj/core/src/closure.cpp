#include "mapforge/closure.hpp"

#include <algorithm>
#include <limits>
#include <list>
#include <stdexcept>
#include <string>

namespace mapforge {

namespace {

// Tree rotation system on the numbered half-edges and its contour.
struct TreeWalk {
  std::vector<HalfEdgeId> next;
  std::vector<VertexId> vertex_of;
  std::vector<HalfEdgeId> corner;  // c_i
  std::vector<VertexId> visit;     // vertex of c_i
  std::size_t L = 0;
};

HalfEdgeId down_of(const PlantedPlaneTree& tr, VertexId v) {
  return static_cast<HalfEdgeId>(2 * (tr.preorder_rank(v) - 1));
}

TreeWalk tree_walk(const BlossomingTree& t) {
  const auto& tr = t.tree;
  const std::size_t N = tr.size();
  if (N < 2) throw PreconditionError("closure needs a tree with at least one stem");
  TreeWalk w;
  const std::size_t H = 2 * (N - 1);
  w.next.assign(H, kNoHalfEdge);
  w.vertex_of.assign(H, kNoVertex);
  std::vector<HalfEdgeId> rot;
  for (std::size_t u = 0; u < N; ++u) {
    const auto id = static_cast<VertexId>(u);
    rot.clear();
    if (id != tr.root()) rot.push_back(down_of(tr, id) + 1);
    for (VertexId c : tr.children(id)) rot.push_back(down_of(tr, c));
    for (std::size_t i = 0; i < rot.size(); ++i) {
      w.next[rot[i]] = rot[(i + 1) % rot.size()];
      w.vertex_of[rot[i]] = id;
    }
  }
  w.L = H;
  w.corner.resize(H);
  w.visit.resize(H);
  HalfEdgeId c = down_of(tr, tr.children(tr.root()).back());
  for (std::size_t i = 0; i < H; ++i) {
    w.corner[i] = c;
    w.visit[i] = w.vertex_of[c];
    c = twin(w.next[c]);
  }
  return w;
}

struct LabelClosure {
  TreeWalk walk;
  std::vector<std::int32_t> labels;
  PartialClosure partial;
  // Label inherited by every tree half-edge at an inner vertex and every
  // inserted half-edge, indexed like the tree half-edges.
  std::vector<std::int32_t> corner_label;
  // Unclosed blossom corners, in contour order.
  std::vector<std::size_t> unclosed;
};

LabelClosure close_by_labels(const BlossomingTree& t) {
  LabelClosure lc;
  lc.walk = tree_walk(t);
  const auto& w = lc.walk;
  const auto contour = contour_exploration(t.tree);
  lc.labels = corner_labelling(t, contour);
  const std::size_t L = w.L;
  auto& pc = lc.partial;
  pc.next_cw = w.next;
  pc.vertex_of = w.vertex_of;
  pc.closed.assign(t.tree.size(), 0);
  lc.corner_label.assign(w.next.size(), 0);
  std::vector<HalfEdgeId> tail(L);
  std::vector<std::size_t> stack;
  // Second lap only pops; its labels are two higher.
  for (std::size_t pass = 0; pass < 2; ++pass) {
    for (std::size_t i = 0; i < L; ++i) {
      const VertexId v = w.visit[i];
      const std::int32_t lab = lc.labels[i] + 2 * static_cast<std::int32_t>(pass);
      if (t.blossom(v)) {
        if (pass == 0) stack.push_back(i);
        continue;
      }
      if (pass == 0) {
        tail[i] = w.corner[i];
        lc.corner_label[w.corner[i]] = lc.labels[i];
      }
      while (!stack.empty() && lc.labels[stack.back()] > lab) {
        const std::size_t j = stack.back();
        stack.pop_back();
        if (lc.labels[j] != lab + 1) throw std::logic_error("closure: label gap while matching");
        const VertexId b = w.visit[j];
        const HalfEdgeId up = w.corner[j];
        pc.next_cw[up] = pc.next_cw[tail[i]];
        pc.next_cw[tail[i]] = up;
        pc.vertex_of[up] = v;
        tail[i] = up;
        pc.closed[b] = 1;
        lc.corner_label[up] = lc.labels[i];
      }
    }
  }
  // Whatever is left never closes; report in contour order.
  lc.unclosed = stack;
  return lc;
}

}  // namespace

std::optional<std::size_t> successor(const std::vector<std::int32_t>& labels, std::size_t j) {
  const std::size_t L = labels.size() - 1;
  for (std::size_t t = j + 1; t < j + L; ++t) {
    const std::int32_t ext = labels[t % L] + 2 * static_cast<std::int32_t>(t / L);
    if (ext < labels[j]) return t % L;
  }
  return std::nullopt;
}

PartialClosure partial_closure_by_labels(const BlossomingTree& t) { return close_by_labels(t).partial; }

PartialClosure partial_closure_by_local_closures(const BlossomingTree& t) {
  const TreeWalk w = tree_walk(t);
  const auto& tr = t.tree;
  PartialClosure pc;
  pc.next_cw = w.next;
  pc.vertex_of = w.vertex_of;
  pc.closed.assign(tr.size(), 0);
  const std::size_t k = face_degree(t.family) - 1;
  // Face word of the outer face: departing half-edges. A stem shows up as
  // its down half-edge immediately followed by its up half-edge.
  std::list<HalfEdgeId> word;
  for (std::size_t i = 0; i < w.L; ++i) word.push_back(w.next[w.corner[i]]);
  auto owner_is_blossom = [&](HalfEdgeId h) {
    // Down half-edge to a still open blossom.
    if (h & 1) return false;
    const VertexId child = w.vertex_of[h + 1];
    return t.blossom(child) && !pc.closed[child];
  };
  auto cyc_next = [&](std::list<HalfEdgeId>::iterator it) {
    ++it;
    return it == word.end() ? word.begin() : it;
  };
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto it = word.begin(); it != word.end(); ++it) {
      if (!owner_is_blossom(*it)) continue;
      // Count items: a stem occupies two entries.
      std::size_t items = 0;
      for (auto x = word.begin(); x != word.end(); ++x) items += owner_is_blossom(*x) ? 0 : 1;
      // Stems contribute their up half-edge as one item; need k others.
      if (items < k + 1) continue;
      auto up_it = cyc_next(it);
      auto x = cyc_next(up_it);
      std::vector<std::list<HalfEdgeId>::iterator> run;
      bool ok = true;
      for (std::size_t s = 0; s < k; ++s) {
        if (owner_is_blossom(*x) || x == it) {
          ok = false;
          break;
        }
        run.push_back(x);
        x = cyc_next(x);
      }
      if (!ok) continue;
      const HalfEdgeId down = *it;
      const HalfEdgeId up = down + 1;
      const HalfEdgeId last = *run.back();
      const HalfEdgeId arrive = twin(last);
      pc.next_cw[up] = pc.next_cw[arrive];
      pc.next_cw[arrive] = up;
      pc.vertex_of[up] = pc.vertex_of[arrive];
      pc.closed[w.vertex_of[up]] = 1;
      word.erase(up_it);
      for (auto r : run) word.erase(r);
      changed = true;
      break;
    }
  }
  return pc;
}

ClosureResult close(const BlossomingTree& t) {
  if (!is_balanced(t)) throw DomainError("close: tree is not planted at a balanced corner");
  const auto& tr = t.tree;
  const std::size_t N = tr.size();
  LabelClosure lc = close_by_labels(t);
  const auto& w = lc.walk;
  auto& pc = lc.partial;

  ClosureResult r;
  r.family = t.family;
  r.map_vertex.assign(N, kNoVertex);
  for (VertexId v : tr.preorder())
    if (!t.blossom(v)) {
      r.map_vertex[v] = static_cast<VertexId>(r.tree_vertex_ids.size());
      r.tree_vertex_ids.push_back(v);
    }
  const auto n = static_cast<VertexId>(r.tree_vertex_ids.size());
  r.A = n;
  r.B = n + 1;
  r.tree_vertex_ids.push_back(kNoVertex);
  r.tree_vertex_ids.push_back(kNoVertex);

  const std::size_t Ht = 2 * (N - 1);
  const auto ab = static_cast<HalfEdgeId>(Ht), ba = ab + 1;
  std::vector<HalfEdgeId> next(pc.next_cw);
  next.resize(Ht + 2);
  std::vector<VertexId> vof(Ht + 2, kNoVertex);
  r.lambda_star = lc.corner_label;
  r.lambda_star.resize(Ht + 2, 0);
  for (std::size_t h = 0; h < Ht; ++h) vof[h] = r.map_vertex[pc.vertex_of[h]];

  std::vector<HalfEdgeId> a_side, b_side;
  for (std::size_t j : lc.unclosed) {
    const std::int32_t lab = lc.labels[j];
    if (lab == 2)
      a_side.push_back(w.corner[j]);
    else if (lab == 3)
      b_side.push_back(w.corner[j]);
    else
      throw std::logic_error("close: unclosed blossom with label " + std::to_string(lab));
  }
  if (a_side.empty()) throw std::logic_error("close: no blossom attaches to A");
  // A: a_1, ab, a_k, ..., a_2.
  next[a_side.front()] = ab;
  next[ab] = a_side.back();
  for (std::size_t j = 1; j < a_side.size(); ++j) next[a_side[j]] = a_side[j - 1];
  for (HalfEdgeId h : a_side) {
    vof[h] = r.A;
    r.lambda_star[h] = 1;
  }
  r.lambda_star[a_side.front()] = 0;
  r.lambda_star[ab] = 1;
  vof[ab] = r.A;
  // B: b_m, ..., b_1, ba.
  if (b_side.empty()) {
    next[ba] = ba;
  } else {
    next[b_side.front()] = ba;
    next[ba] = b_side.back();
    for (std::size_t j = 1; j < b_side.size(); ++j) next[b_side[j]] = b_side[j - 1];
  }
  for (HalfEdgeId h : b_side) {
    vof[h] = r.B;
    r.lambda_star[h] = 2;
  }
  r.lambda_star[ba] = 1;
  vof[ba] = r.B;

  r.map = PlanarMap(std::move(next), std::move(vof), w.corner[0]);

  r.orientation.bit.assign(Ht / 2 + 1, 1);
  r.inner_tree_edge.assign(Ht / 2 + 1, 0);
  for (VertexId v : tr.preorder()) {
    if (v == tr.root()) continue;
    const auto e = static_cast<std::size_t>(tr.preorder_rank(v) - 1);
    r.orientation.bit[e] = t.blossom(v) ? 0 : 1;
    r.inner_tree_edge[e] = t.blossom(v) ? 0 : 1;
  }

  r.contour_corner = w.corner;
  r.contour_vertex = w.visit;
  r.contour_label.assign(lc.labels.begin(), lc.labels.begin() + static_cast<std::ptrdiff_t>(w.L));
  r.inner_corner_image.assign(w.L, kNoHalfEdge);
  for (std::size_t i = 0; i < w.L; ++i)
    if (!t.blossom(w.visit[i])) r.inner_corner_image[i] = r.map.prev_cw(w.next[w.corner[i]]);

  r.Y.assign(r.map.vertex_count(), std::numeric_limits<std::int32_t>::max());
  for (std::size_t i = 0; i < w.L; ++i) {
    const VertexId mv = r.map_vertex[w.visit[i]];
    if (mv != kNoVertex) r.Y[mv] = std::min(r.Y[mv], lc.labels[i]);
  }
  r.Y[r.A] = 1;
  r.Y[r.B] = 2;
  return r;
}

MarkedClosure close_marked(const BlossomingTree& t, std::size_t inner_corner) {
  MarkedClosure mc{close(t), kNoHalfEdge};
  if (inner_corner >= mc.closure.inner_corner_image.size() || mc.closure.inner_corner_image[inner_corner] == kNoHalfEdge)
    throw PreconditionError("close_marked: not an inner corner");
  mc.marked_corner = mc.closure.inner_corner_image[inner_corner];
  return mc;
}

BlossomingTree open(const PlanarMap& m, const EdgeOrientation& ori, Family f) {
  if (!m.is_simple()) throw DomainError("open: map is not simple");
  if (!m.is_k_angulation(face_degree(f)))
    throw DomainError("open: some face does not have degree " + std::to_string(face_degree(f)));
  const auto rep = check_orientation(m, ori, f);
  if (!rep.ok) throw DomainError("open: orientation: " + rep.message);
  if (!is_minimal(m, ori)) throw DomainError("open: orientation has a counterclockwise cycle");
  const RootFace rf = root_face_vertices(m, f);
  std::int32_t ab_edge = -1;
  {
    const HalfEdgeId h0 = m.first_half_edge(rf.A);
    HalfEdgeId h = h0;
    do {
      if (m.target(h) == rf.B) ab_edge = edge_of(h);
      h = m.next_cw(h);
    } while (h != h0);
  }
  if (ab_edge < 0) throw DomainError("open: A and B are not adjacent");

  const std::size_t V = m.vertex_count();
  std::vector<std::uint8_t> seen_edge(m.edge_count(), 0), visited(V, 0);
  seen_edge[ab_edge] = 1;
  std::vector<std::vector<VertexId>> children(1);
  std::vector<std::uint8_t> blossom{0};
  struct Frame {
    VertexId x;
    VertexId id;
    HalfEdgeId h;
    std::uint32_t left;
  };
  std::vector<Frame> stack;
  const HalfEdgeId hr = m.root_half_edge();
  visited[rf.v] = 1;
  stack.push_back({rf.v, 0, m.next_cw(hr), m.degree(rf.v)});
  std::size_t inner_seen = 1;
  while (!stack.empty()) {
    Frame& fr = stack.back();
    if (fr.left == 0) {
      stack.pop_back();
      continue;
    }
    const HalfEdgeId h = fr.h;
    fr.h = m.next_cw(h);
    --fr.left;
    const std::int32_t e = edge_of(h);
    if (seen_edge[e]) continue;
    seen_edge[e] = 1;
    const auto id = static_cast<VertexId>(blossom.size());
    children[fr.id].push_back(id);
    children.emplace_back();
    if (ori.is_out(h)) {
      blossom.push_back(1);
      continue;
    }
    const VertexId y = m.target(h);
    if (visited[y] || y == rf.A || y == rf.B) throw DomainError("open: tree edges close a cycle");
    visited[y] = 1;
    ++inner_seen;
    blossom.push_back(0);
    const Frame child{y, id, m.next_cw(twin(h)), m.degree(y) - 1};
    stack.push_back(child);
  }
  if (inner_seen != V - 2) throw DomainError("open: opening does not reach every inner vertex");
  BlossomingTree t;
  t.tree = PlantedPlaneTree(children, 0);
  t.is_blossom = std::move(blossom);
  t.family = f;
  try {
    validate(t);
  } catch (const InputError& e) {
    throw DomainError(std::string("open: ") + e.what());
  }
  return t;
}

}  // namespace mapforge
