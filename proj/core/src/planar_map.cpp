#include "mapforge/planar_map.hpp"

#include <algorithm>
#include <deque>
#include <limits>

namespace mapforge {

namespace {

struct Counts {
  std::size_t vertices = 0, vertex_cycles = 0, faces = 0;
};

// Validates the rotation system and counts its cycles.
Counts inspect(const std::vector<HalfEdgeId>& next, const std::vector<VertexId>& tail) {
  const std::size_t H = next.size();
  if (H == 0 || H % 2 != 0) throw InputError("half-edge count must be positive and even, got " + std::to_string(H));
  if (tail.size() != H) throw InputError("vertex_of has " + std::to_string(tail.size()) + " entries, expected " + std::to_string(H));
  if (H > static_cast<std::size_t>(std::numeric_limits<HalfEdgeId>::max()))
    throw InputError("too many half-edges");
  std::vector<std::uint8_t> hit(H, 0);
  VertexId vmax = -1;
  for (std::size_t h = 0; h < H; ++h) {
    const HalfEdgeId n = next[h];
    if (n < 0 || static_cast<std::size_t>(n) >= H)
      throw InputError("next_cw[" + std::to_string(h) + "] = " + std::to_string(n) + " out of range");
    if (hit[n]) throw InputError("next_cw is not a permutation: " + std::to_string(n) + " has two predecessors");
    hit[n] = 1;
    if (tail[h] < 0) throw InputError("vertex_of[" + std::to_string(h) + "] is negative");
    vmax = std::max(vmax, tail[h]);
  }
  Counts c;
  c.vertices = static_cast<std::size_t>(vmax) + 1;
  std::vector<std::uint8_t> present(c.vertices, 0);
  for (std::size_t h = 0; h < H; ++h) {
    if (tail[next[h]] != tail[h])
      throw InputError("next_cw[" + std::to_string(h) + "] leaves a different vertex than half-edge " + std::to_string(h));
    present[tail[h]] = 1;
  }
  for (std::size_t v = 0; v < c.vertices; ++v)
    if (!present[v]) throw InputError("vertex " + std::to_string(v) + " has no half-edges");
  std::fill(hit.begin(), hit.end(), 0);
  for (std::size_t h = 0; h < H; ++h) {
    if (hit[h]) continue;
    ++c.vertex_cycles;
    for (HalfEdgeId x = static_cast<HalfEdgeId>(h); !hit[x]; x = next[x]) hit[x] = 1;
  }
  if (c.vertex_cycles != c.vertices)
    throw InputError("rotation at some vertex splits into several cycles");
  std::fill(hit.begin(), hit.end(), 0);
  for (std::size_t h = 0; h < H; ++h) {
    if (hit[h]) continue;
    ++c.faces;
    for (HalfEdgeId x = static_cast<HalfEdgeId>(h); !hit[x]; x = next[twin(x)]) hit[x] = 1;
  }
  return c;
}

}  // namespace

int genus(const std::vector<HalfEdgeId>& next_cw, const std::vector<VertexId>& vertex_of) {
  const Counts c = inspect(next_cw, vertex_of);
  const long chi = static_cast<long>(c.vertices) - static_cast<long>(next_cw.size() / 2) + static_cast<long>(c.faces);
  return static_cast<int>((2 - chi) / 2);
}

PlanarMap::PlanarMap(std::vector<HalfEdgeId> next_cw, std::vector<VertexId> vertex_of, HalfEdgeId root)
    : next_(std::move(next_cw)), tail_(std::move(vertex_of)), root_(root) {
  const Counts c = inspect(next_, tail_);
  const long chi = static_cast<long>(c.vertices) - static_cast<long>(next_.size() / 2) + static_cast<long>(c.faces);
  if (chi != 2) {
    const int g = static_cast<int>((2 - chi) / 2);
    throw GenusError(g, "map is not planar: V - E + F = " + std::to_string(chi) + ", genus " + std::to_string(g));
  }
  const std::size_t H = next_.size();
  if (root < 0 || static_cast<std::size_t>(root) >= H) throw InputError("root half-edge out of range");
  prev_.assign(H, 0);
  for (std::size_t h = 0; h < H; ++h) prev_[next_[h]] = static_cast<HalfEdgeId>(h);
  first_.assign(c.vertices, kNoHalfEdge);
  degree_.assign(c.vertices, 0);
  for (std::size_t h = 0; h < H; ++h) {
    if (first_[tail_[h]] == kNoHalfEdge) first_[tail_[h]] = static_cast<HalfEdgeId>(h);
    ++degree_[tail_[h]];
  }
  face_.assign(H, -1);
  for (std::size_t h = 0; h < H; ++h) {
    if (face_[h] >= 0) continue;
    const auto f = static_cast<FaceId>(face_first_.size());
    face_first_.push_back(static_cast<HalfEdgeId>(h));
    std::uint32_t size = 0;
    for (HalfEdgeId x = static_cast<HalfEdgeId>(h); face_[x] < 0; x = next_[twin(x)]) {
      face_[x] = f;
      ++size;
    }
    face_size_.push_back(size);
  }
}

PlanarMap PlanarMap::from_rotation(const std::vector<std::vector<HalfEdgeId>>& rotation, HalfEdgeId root) {
  std::size_t H = 0;
  for (const auto& r : rotation) H += r.size();
  std::vector<HalfEdgeId> next(H, kNoHalfEdge);
  std::vector<VertexId> tail(H, kNoVertex);
  for (std::size_t v = 0; v < rotation.size(); ++v) {
    const auto& r = rotation[v];
    for (std::size_t i = 0; i < r.size(); ++i) {
      const HalfEdgeId h = r[i];
      if (h < 0 || static_cast<std::size_t>(h) >= H) throw InputError("half-edge id " + std::to_string(h) + " out of range");
      if (tail[h] != kNoVertex) throw InputError("half-edge " + std::to_string(h) + " listed twice");
      tail[h] = static_cast<VertexId>(v);
      next[h] = r[(i + 1) % r.size()];
    }
  }
  return PlanarMap(std::move(next), std::move(tail), root);
}

PlanarMap PlanarMap::with_root(HalfEdgeId root) const {
  if (root < 0 || static_cast<std::size_t>(root) >= next_.size()) throw PreconditionError("root half-edge out of range");
  PlanarMap m = *this;
  m.root_ = root;
  return m;
}

bool PlanarMap::is_simple() const {
  std::vector<HalfEdgeId> mark(vertex_count(), kNoHalfEdge);
  for (std::size_t v = 0; v < vertex_count(); ++v) {
    const HalfEdgeId h0 = first_[v];
    HalfEdgeId h = h0;
    do {
      const VertexId t = target(h);
      if (t == static_cast<VertexId>(v)) return false;
      if (mark[t] == h0) return false;
      mark[t] = h0;
      h = next_[h];
    } while (h != h0);
  }
  return true;
}

std::vector<std::uint32_t> PlanarMap::face_degrees() const { return face_size_; }

bool PlanarMap::is_k_angulation(unsigned k) const {
  return std::all_of(face_size_.begin(), face_size_.end(), [k](std::uint32_t s) { return s == k; });
}

std::vector<std::uint32_t> outdegrees(const PlanarMap& m, const EdgeOrientation& ori) {
  std::vector<std::uint32_t> d(m.vertex_count(), 0);
  for (std::size_t e = 0; e < m.edge_count(); ++e) ++d[m.vertex_of(ori.out(static_cast<std::int32_t>(e)))];
  return d;
}

RootFace root_face_vertices(const PlanarMap& m, Family f) {
  RootFace r;
  const HalfEdgeId h = m.root_half_edge();
  r.v = m.vertex_of(h);
  r.A = m.target(m.next_cw(h));
  if (f == Family::Triangulation) {
    r.B = m.target(h);
  } else {
    r.B = m.target(m.face_next(m.next_cw(h)));
    r.w = m.target(h);
  }
  return r;
}

std::vector<std::uint32_t> alpha_profile(const PlanarMap& m, Family f) {
  const RootFace r = root_face_vertices(m, f);
  std::vector<std::uint32_t> a(m.vertex_count(), inner_outdegree(f));
  if (f == Family::Triangulation) {
    a[r.v] = 2;
  } else {
    a[r.w] = 2;
    a[r.v] = 1;
  }
  a[r.B] = 1;
  a[r.A] = 0;
  return a;
}

OrientationReport check_orientation(const PlanarMap& m, const EdgeOrientation& ori, Family f) {
  OrientationReport rep;
  if (ori.bit.size() != m.edge_count()) {
    rep.ok = false;
    rep.message = "orientation covers " + std::to_string(ori.bit.size()) + " edges, map has " +
                  std::to_string(m.edge_count());
    return rep;
  }
  rep.outdeg = outdegrees(m, ori);
  const auto alpha = alpha_profile(m, f);
  for (std::size_t v = 0; v < alpha.size(); ++v)
    if (rep.outdeg[v] != alpha[v]) rep.offending.push_back(static_cast<VertexId>(v));
  rep.ok = rep.offending.empty();
  if (!rep.ok)
    rep.message = std::to_string(rep.offending.size()) + " vertices with wrong outdegree (first: vertex " +
                  std::to_string(rep.offending.front()) + " has " + std::to_string(rep.outdeg[rep.offending.front()]) +
                  ", expected " + std::to_string(alpha[rep.offending.front()]) + ")";
  return rep;
}

bool is_minimal(const PlanarMap& m, const EdgeOrientation& ori) {
  // Faces reachable from the root face by crossing edges from left to
  // right. A face left out lies inside a counterclockwise cycle.
  std::vector<std::uint8_t> seen(m.face_count(), 0);
  std::vector<FaceId> queue{m.root_face()};
  seen[m.root_face()] = 1;
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    const HalfEdgeId h0 = m.face_first(queue[qi]);
    HalfEdgeId h = h0;
    do {
      if (ori.is_out(h)) {
        const FaceId g = m.face_of(twin(h));
        if (!seen[g]) {
          seen[g] = 1;
          queue.push_back(g);
        }
      }
      h = m.face_next(h);
    } while (h != h0);
  }
  return queue.size() == m.face_count();
}

EdgeOrientation any_alpha_orientation(const PlanarMap& m, Family f) {
  const auto alpha = alpha_profile(m, f);
  const std::size_t E = m.edge_count();
  std::size_t total = 0;
  for (auto a : alpha) total += a;
  if (total != E) throw DomainError("outdegree profile sums to " + std::to_string(total) + " but map has " + std::to_string(E) + " edges");
  EdgeOrientation ori;
  ori.bit.assign(E, 0);
  // Greedy start: give the edge to the endpoint with more unmet demand.
  std::vector<long> need(alpha.begin(), alpha.end());
  for (std::size_t e = 0; e < E; ++e) {
    const auto h = static_cast<HalfEdgeId>(2 * e);
    const VertexId a = m.vertex_of(h), b = m.target(h);
    const std::uint8_t bit = need[b] > need[a] ? 1 : 0;
    ori.bit[e] = bit;
    --need[bit ? b : a];
  }
  // Repair: reverse directed paths from surplus to deficit vertices. Each
  // phase runs one depth-first search per surplus vertex, sharing the visited
  // marks; a phase without any reversal proves no path exists.
  const std::size_t V = m.vertex_count();
  std::vector<std::uint32_t> stamp(V, 0);
  std::vector<HalfEdgeId> stack, cursor(V);
  for (std::uint32_t phase = 1;; ++phase) {
    bool progress = false;
    for (std::size_t s = 0; s < V; ++s) {
      const auto src = static_cast<VertexId>(s);
      while (need[src] < 0 && stamp[src] != phase) {
        stamp[src] = phase;
        cursor[src] = m.first_half_edge(src);
        stack.clear();
        VertexId at = src;
        bool found = false;
        for (;;) {
          // Advance at's cursor to its next usable out half-edge.
          HalfEdgeId next = kNoHalfEdge;
          while (cursor[at] != kNoHalfEdge) {
            const HalfEdgeId h = cursor[at];
            HalfEdgeId after = m.next_cw(h);
            cursor[at] = after == m.first_half_edge(at) ? kNoHalfEdge : after;
            if (ori.is_out(h) && stamp[m.target(h)] != phase) {
              next = h;
              break;
            }
          }
          if (next == kNoHalfEdge) {
            if (stack.empty()) break;
            at = m.vertex_of(stack.back());
            stack.pop_back();
            continue;
          }
          const VertexId x = m.target(next);
          stamp[x] = phase;
          stack.push_back(next);
          if (need[x] > 0) {
            found = true;
            break;
          }
          cursor[x] = m.first_half_edge(x);
          at = x;
        }
        if (!found) break;
        for (HalfEdgeId h : stack) ori.reverse(edge_of(h));
        --need[m.target(stack.back())];
        ++need[src];
        progress = true;
        // Vertices on the reversed path may be useful again in this phase.
        for (HalfEdgeId h : stack) stamp[m.target(h)] = 0;
        stamp[src] = 0;
      }
    }
    if (std::none_of(need.begin(), need.end(), [](long x) { return x < 0; })) break;
    if (!progress) throw DomainError("map admits no orientation with the required outdegrees");
  }
  return ori;
}

EdgeOrientation minimize(const PlanarMap& m, EdgeOrientation ori) {
  // d(f): fewest right-to-left crossings needed to reach f from the root
  // face. Every boundary of a level set {d > j} is a union of
  // counterclockwise cycles; reversing all of them at once gives the minimum.
  const std::size_t F = m.face_count();
  const auto inf = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> d(F, inf);
  std::deque<FaceId> dq;
  d[m.root_face()] = 0;
  dq.push_back(m.root_face());
  while (!dq.empty()) {
    const FaceId f = dq.front();
    dq.pop_front();
    const HalfEdgeId h0 = m.face_first(f);
    HalfEdgeId h = h0;
    do {
      const FaceId g = m.face_of(twin(h));
      const std::uint32_t w = ori.is_out(h) ? 0 : 1;
      if (d[f] + w < d[g]) {
        d[g] = d[f] + w;
        if (w == 0)
          dq.push_front(g);
        else
          dq.push_back(g);
      }
      h = m.face_next(h);
    } while (h != h0);
  }
  for (std::size_t e = 0; e < m.edge_count(); ++e) {
    const HalfEdgeId h = ori.out(static_cast<std::int32_t>(e));
    if (d[m.face_of(h)] == d[m.face_of(twin(h))] + 1) ori.reverse(static_cast<std::int32_t>(e));
  }
  return ori;
}

EdgeOrientation minimal_orientation(const PlanarMap& m, Family f) {
  if (!m.is_simple()) throw DomainError("minimal_orientation: map is not simple");
  if (!m.is_k_angulation(face_degree(f)))
    throw DomainError("minimal_orientation: some face does not have degree " + std::to_string(face_degree(f)));
  return minimize(m, any_alpha_orientation(m, f));
}

std::vector<std::int32_t> canonical_code(const PlanarMap& m, const EdgeOrientation* ori) {
  const std::size_t H = m.half_edge_count();
  std::vector<std::int32_t> label(H, -1);
  std::vector<HalfEdgeId> order;
  order.reserve(H);
  label[m.root_half_edge()] = 0;
  order.push_back(m.root_half_edge());
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (HalfEdgeId x : {m.next_cw(order[i]), twin(order[i])})
      if (label[x] < 0) {
        label[x] = static_cast<std::int32_t>(order.size());
        order.push_back(x);
      }
  }
  std::vector<std::int32_t> code;
  code.reserve(3 * H + 1);
  code.push_back(static_cast<std::int32_t>(H));
  for (HalfEdgeId h : order) {
    code.push_back(label[m.next_cw(h)]);
    code.push_back(label[twin(h)]);
    if (ori) code.push_back(ori->is_out(h) ? 1 : 0);
  }
  return code;
}

}  // namespace mapforge
