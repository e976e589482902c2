#include "mapforge/verify.hpp"

#include <algorithm>
#include <numeric>

#include "mapforge/closure.hpp"
#include "mapforge/geodesics.hpp"

namespace mapforge {

bool VerifyReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.ok; });
}

const CheckResult* VerifyReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

namespace {

std::vector<VertexId> probe_vertices(std::size_t inner, const VerifyOptions& opt) {
  std::vector<VertexId> all(inner);
  std::iota(all.begin(), all.end(), 0);
  if (inner <= opt.probes) return all;
  Rng rng(opt.seed);
  for (std::size_t i = 0; i < opt.probes; ++i) std::swap(all[i], all[i + rng.below(inner - i)]);
  all.resize(opt.probes);
  std::sort(all.begin(), all.end());
  return all;
}

std::string count_detail(std::size_t bad, std::size_t total, const std::string& what) {
  return std::to_string(bad) + " of " + std::to_string(total) + " " + what;
}

}  // namespace

VerifyReport verify_map(const PlanarMap& m, const std::optional<EdgeOrientation>& given, Family f,
                        const VerifyOptions& opt) {
  VerifyReport rep;
  auto add = [&](std::string name, bool ok, std::string detail) {
    rep.checks.push_back({std::move(name), ok, false, std::move(detail)});
  };
  const unsigned k = face_degree(f);
  const std::size_t V = m.vertex_count(), E = m.edge_count(), F = m.face_count();

  add("simplicity", m.is_simple(), m.is_simple() ? "" : "map has a loop or a multiple edge");

  {
    const std::size_t want_e = f == Family::Triangulation ? 3 * V - 6 : 2 * V - 4;
    std::string why;
    if (static_cast<long>(V) - static_cast<long>(E) + static_cast<long>(F) != 2)
      why = "V - E + F != 2";
    else if (!m.is_k_angulation(k))
      why = "some face does not have degree " + std::to_string(k);
    else if (E != want_e)
      why = "E = " + std::to_string(E) + ", expected " + std::to_string(want_e);
    add("euler", why.empty(), why);
  }

  std::optional<EdgeOrientation> ori = given;
  if (!ori) {
    try {
      ori = minimal_orientation(m, f);
      add("orientation", true, "computed minimal orientation");
    } catch (const DomainError& e) {
      add("orientation", false, e.what());
    }
  } else {
    const auto r = check_orientation(m, *ori, f);
    std::string detail = r.message;
    if (!r.offending.empty()) {
      detail += detail.empty() ? "" : "; ";
      detail += "offending vertices:";
      for (std::size_t i = 0; i < r.offending.size() && i < 10; ++i) detail += " " + std::to_string(r.offending[i]);
    }
    add("orientation", r.ok, detail);
  }

  if (ori) {
    const bool minimal = is_minimal(m, *ori);
    add("minimality", minimal, minimal ? "" : "a directed cycle has the root face on its right");
  } else {
    rep.checks.push_back({"minimality", false, true, "no orientation"});
  }

  const char* rest[] = {"round_trip", "sandwich", "leftmost_identity", "winding_bound", "two_point_bound"};
  if (!rep.ok()) {
    for (const char* name : rest) rep.checks.push_back({name, false, true, "skipped after a structural failure"});
    return rep;
  }

  ClosureResult r;
  try {
    r = close(open(m, *ori, f));
    const bool same = canonical_code(r.map, &r.orientation) == canonical_code(m, &*ori);
    add("round_trip", same, same ? "" : "closing the opened tree gives a different rooted map");
  } catch (const Error& e) {
    add("round_trip", false, e.what());
  }
  if (!rep.ok()) {
    for (std::size_t i = 1; i < std::size(rest); ++i) rep.checks.push_back({rest[i], false, true, "no closure"});
    return rep;
  }

  const auto& M = r.map;
  const auto& O = r.orientation;
  const std::size_t inner = r.inner_count();
  const Adjacency adj(M);
  const auto dA = bfs_distance(adj, r.A);

  {
    const std::vector<std::int32_t> Y(r.Y.begin(), r.Y.begin() + inner), d(dA.begin(), dA.begin() + inner);
    const auto prof = label_distance_profile(Y, d);
    add("sandwich", prof.sandwich_violations == 0,
        count_detail(prof.sandwich_violations, inner, "vertices violate Y/3 <= d(u,A) <= Y-1"));
  }

  {
    const auto len = leftmost_lengths(M, O, r.A, r.B);
    std::size_t checked = 0, bad = 0, literal = 0;
    for (std::size_t h = 0; h < M.half_edge_count(); ++h) {
      const auto he = static_cast<HalfEdgeId>(h);
      if (!O.is_out(he) || M.vertex_of(he) == r.B) continue;
      ++checked;
      const std::int32_t lam = r.lambda_star[M.prev_cw(he)];
      std::int32_t want = len[h];
      if (f == Family::Quadrangulation) {
        // Paths through the root vertex gain 2: its corner label is not a lap value.
        const auto P = leftmost_path(M, O, r.A, r.B, he);
        for (std::size_t i = 1; i < P.vertices.size(); ++i)
          if (P.vertices[i] == M.root_vertex()) want += 2;
      }
      bad += lam != want;
      literal += lam != len[h];
    }
    std::string detail = count_detail(bad, checked, "oriented edges violate the identity");
    if (f == Family::Quadrangulation) detail += "; literal lambda* = |P| fails on " + std::to_string(literal);
    add("leftmost_identity", bad == 0, detail);
  }

  const auto probes = probe_vertices(inner, opt);
  {
    const auto len = leftmost_lengths(M, O, r.A, r.B);
    std::size_t checked = 0, bad = 0, mismatch = 0;
    const int offset = f == Family::Triangulation ? 2 : 1;
    const DualTree dual(M);
    for (VertexId u : probes) {
      const auto Q = geodesic_to(adj, dA, u);
      const HalfEdgeId h0 = M.first_half_edge(u);
      HalfEdgeId h = h0;
      do {
        if (O.is_out(h)) {
          ++checked;
          const auto wd = winding_number(M, O, r.A, r.B, h, Q);
          if (wd.w != winding_by_crossings(M, O, r.A, r.B, h, Q, dual)) ++mismatch;
          if (static_cast<int>(Q.size()) < len[h] + 2 * (wd.w - offset)) ++bad;
        }
        h = M.next_cw(h);
      } while (h != h0);
    }
    add("winding_bound", bad == 0 && mismatch == 0,
        count_detail(bad, checked, "edges violate |Q| >= |P| + 2(w - " + std::to_string(offset) + ")") + "; " +
            std::to_string(mismatch) + " winding counts disagree with dual crossings");
  }

  {
    const TwoPointBound tp(r);
    std::size_t checked = 0, bad = 0;
    for (VertexId u : probes) {
      const auto d = bfs_distance(adj, u);
      for (std::size_t v = 0; v < inner; ++v) {
        ++checked;
        if (tp(u, static_cast<VertexId>(v)) < d[v]) ++bad;
      }
    }
    add("two_point_bound", bad == 0, count_detail(bad, checked, "pairs exceed the two-point bound"));
  }
  return rep;
}

}  // namespace mapforge
