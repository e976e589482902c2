#include "mapforge/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <limits>
#include <nlohmann/json.hpp>
#include <sstream>

#include "mapforge/common.hpp"

namespace mapforge {

using nlohmann::json;

namespace {

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    const std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::string what = e.what();
    // Drop nlohmann's "[json.exception.parse_error.101] " prefix.
    if (const auto p = what.find("] "); p != std::string::npos) what = what.substr(p + 2);
    if (what.rfind("parse error at line", 0) == 0)
      if (const auto p = what.find(": "); p != std::string::npos) what = "parse error: " + what.substr(p + 2);
    throw InputError("line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + what);
  }
}

const json& field(const json& j, const char* key) {
  if (!j.is_object()) throw InputError("expected a JSON object at top level");
  const auto it = j.find(key);
  if (it == j.end()) throw InputError(std::string("missing field \"") + key + "\"");
  return *it;
}

template <class T>
T integer(const json& v, const std::string& what) {
  if (!v.is_number_integer()) throw InputError(what + " must be an integer");
  const auto x = v.get<std::int64_t>();
  if (x < std::numeric_limits<T>::min() || x > std::numeric_limits<T>::max())
    throw InputError(what + " is out of range");
  return static_cast<T>(x);
}

template <class T>
std::vector<T> int_array(const json& j, const char* key) {
  const json& a = field(j, key);
  if (!a.is_array()) throw InputError(std::string("field \"") + key + "\" must be an array");
  std::vector<T> out;
  out.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    out.push_back(integer<T>(a[i], std::string(key) + "[" + std::to_string(i) + "]"));
  return out;
}

std::vector<std::uint8_t> bool_array(const json& j, const char* key) {
  const json& a = field(j, key);
  if (!a.is_array()) throw InputError(std::string("field \"") + key + "\" must be an array");
  std::vector<std::uint8_t> out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_boolean()) {
      out.push_back(a[i].get<bool>() ? 1 : 0);
    } else if (a[i].is_number_integer() && (a[i] == 0 || a[i] == 1)) {
      out.push_back(a[i].get<int>() == 1);
    } else {
      throw InputError(std::string(key) + "[" + std::to_string(i) + "] must be a boolean");
    }
  }
  return out;
}

json tree_json(const PlantedPlaneTree& t) {
  std::vector<VertexId> order(t.size());
  for (std::size_t v = 0; v < t.size(); ++v)
    order[v] = static_cast<VertexId>(static_cast<VertexId>(v) == t.root() ? 0 : t.child_index(static_cast<VertexId>(v)));
  return json{{"parent", t.parents()}, {"child_order", order}, {"root_corner", 0}};
}

PlantedPlaneTree tree_of(const json& j) {
  const auto parent = int_array<VertexId>(j, "parent");
  const auto order = int_array<VertexId>(j, "child_order");
  const auto corner = integer<std::int64_t>(field(j, "root_corner"), "root_corner");
  const std::size_t n = parent.size();
  if (n == 0) throw InputError("parent must not be empty");
  if (order.size() != n)
    throw InputError("child_order has " + std::to_string(order.size()) + " entries, expected " + std::to_string(n));
  VertexId root = kNoVertex;
  std::vector<std::vector<VertexId>> children(n);
  for (std::size_t v = 0; v < n; ++v) {
    if (parent[v] == -1) {
      if (root != kNoVertex) throw InputError("parent has two roots (" + std::to_string(root) + ", " + std::to_string(v) + ")");
      root = static_cast<VertexId>(v);
    } else if (parent[v] < 0 || static_cast<std::size_t>(parent[v]) >= n) {
      throw InputError("parent[" + std::to_string(v) + "] = " + std::to_string(parent[v]) + " out of range");
    }
  }
  if (root == kNoVertex) throw InputError("parent has no root (-1)");
  for (std::size_t v = 0; v < n; ++v)
    if (parent[v] != -1) children[parent[v]].push_back(static_cast<VertexId>(v));
  for (auto& c : children) {
    std::vector<VertexId> sorted(c.size(), kNoVertex);
    for (VertexId v : c) {
      const auto k = order[v];
      if (k < 0 || static_cast<std::size_t>(k) >= c.size() || sorted[k] != kNoVertex)
        throw InputError("child_order[" + std::to_string(v) + "] = " + std::to_string(k) + " is not a valid sibling position");
      sorted[k] = v;
    }
    c = std::move(sorted);
  }
  PlantedPlaneTree t(children, root);
  const std::size_t corners = std::max<std::size_t>(1, t.child_count(root));
  if (corner < 0 || static_cast<std::size_t>(corner) >= corners)
    throw InputError("root_corner " + std::to_string(corner) + " out of range [0, " + std::to_string(corners) + ")");
  return corner == 0 ? t : t.rotate_root(static_cast<std::size_t>(corner));
}

// Canonical numbering: vertices in BFS order from the root vertex; at each
// vertex the half-edges are numbered clockwise from the one it was reached
// by (the root half-edge at the root), each new edge taking the next even id
// for the half-edge seen first.
struct Renumbering {
  std::vector<HalfEdgeId> he;
  std::vector<VertexId> vx;
};

Renumbering renumber(const PlanarMap& m) {
  Renumbering r{std::vector<HalfEdgeId>(m.half_edge_count(), -1), std::vector<VertexId>(m.vertex_count(), kNoVertex)};
  std::vector<HalfEdgeId> entry;  // per new vertex id
  HalfEdgeId next_edge = 0;
  r.vx[m.root_vertex()] = 0;
  entry.push_back(m.root_half_edge());
  for (std::size_t i = 0; i < entry.size(); ++i) {
    const HalfEdgeId h0 = entry[i];
    HalfEdgeId h = h0;
    do {
      if (r.he[h] < 0) {
        r.he[h] = 2 * next_edge;
        r.he[h ^ 1] = 2 * next_edge + 1;
        ++next_edge;
      }
      const VertexId w = m.target(h);
      if (r.vx[w] == kNoVertex) {
        r.vx[w] = static_cast<VertexId>(entry.size());
        entry.push_back(h ^ 1);
      }
      h = m.next_cw(h);
    } while (h != h0);
  }
  return r;
}

json map_json(const PlanarMap& m, const EdgeOrientation* ori, const Renumbering& r) {
  const std::size_t H = m.half_edge_count();
  std::vector<HalfEdgeId> next(H);
  std::vector<VertexId> tail(H);
  for (std::size_t h = 0; h < H; ++h) {
    next[r.he[h]] = r.he[m.next_cw(static_cast<HalfEdgeId>(h))];
    tail[r.he[h]] = r.vx[m.vertex_of(static_cast<HalfEdgeId>(h))];
  }
  json j{{"n_half_edges", H}, {"next_cw", next}, {"vertex_of", tail}, {"root_half_edge", r.he[m.root_half_edge()]}};
  if (ori) {
    std::vector<int> bit(m.edge_count());
    for (std::size_t e = 0; e < m.edge_count(); ++e) {
      const HalfEdgeId out = r.he[ori->out(static_cast<std::int32_t>(e))];
      bit[out >> 1] = out & 1;
    }
    j["orientation"] = bit;
  }
  return j;
}

}  // namespace

std::string tree_to_json(const PlantedPlaneTree& t) { return tree_json(t).dump(); }

PlantedPlaneTree tree_from_json(const std::string& text) { return tree_of(parse(text)); }

std::string blossoming_to_json(const BlossomingTree& t) {
  json j = tree_json(t.tree);
  std::vector<bool> b(t.is_blossom.begin(), t.is_blossom.end());
  j["is_blossom"] = b;
  j["family"] = std::string(family_name(t.family));
  return j.dump();
}

BlossomingTree blossoming_from_json(const std::string& text) {
  const json j = parse(text);
  BlossomingTree t;
  t.tree = tree_of(j);
  t.is_blossom = bool_array(j, "is_blossom");
  const json& fam = field(j, "family");
  if (!fam.is_string()) throw InputError("family must be a string");
  t.family = parse_family(fam.get<std::string>());
  if (t.is_blossom.size() != t.tree.size())
    throw InputError("is_blossom has " + std::to_string(t.is_blossom.size()) + " entries, expected " +
                     std::to_string(t.tree.size()));
  validate(t);
  return t;
}

std::string map_to_json(const PlanarMap& m, const EdgeOrientation* ori) { return map_json(m, ori, renumber(m)).dump(); }

std::string closure_to_json(const ClosureResult& c) {
  const Renumbering r = renumber(c.map);
  json j = map_json(c.map, &c.orientation, r);
  j["family"] = std::string(family_name(c.family));
  std::vector<std::int32_t> lam(c.lambda_star.size());
  for (std::size_t h = 0; h < lam.size(); ++h) lam[r.he[h]] = c.lambda_star[h];
  j["lambda_star"] = lam;
  j["A"] = r.vx[c.A];
  j["B"] = r.vx[c.B];
  // Tree vertices are written as their preorder rank in the balanced tree.
  std::vector<VertexId> rank;
  VertexId next = 0;
  for (VertexId tv : c.contour_vertex) {
    if (static_cast<std::size_t>(tv) >= rank.size()) rank.resize(tv + 1, kNoVertex);
    if (rank[tv] == kNoVertex) rank[tv] = next++;
  }
  std::vector<VertexId> ids(c.map.vertex_count(), kNoVertex);
  for (std::size_t v = 0; v < ids.size(); ++v) {
    const VertexId tv = c.tree_vertex_ids[v];
    ids[r.vx[v]] = tv == kNoVertex ? kNoVertex : rank[tv];
  }
  j["tree_vertex_ids"] = ids;
  return j.dump();
}

MapFile map_from_json(const std::string& text) {
  const json j = parse(text);
  const auto H = integer<std::int64_t>(field(j, "n_half_edges"), "n_half_edges");
  auto next = int_array<HalfEdgeId>(j, "next_cw");
  auto tail = int_array<VertexId>(j, "vertex_of");
  const auto root = integer<HalfEdgeId>(field(j, "root_half_edge"), "root_half_edge");
  if (H < 0 || next.size() != static_cast<std::size_t>(H))
    throw InputError("next_cw has " + std::to_string(next.size()) + " entries but n_half_edges is " + std::to_string(H));
  MapFile f{PlanarMap(std::move(next), std::move(tail), root), {}, {}, {}, kNoVertex, kNoVertex, {}};
  if (j.contains("orientation")) {
    EdgeOrientation o{bool_array(j, "orientation")};
    if (o.bit.size() != f.map.edge_count())
      throw InputError("orientation has " + std::to_string(o.bit.size()) + " entries, expected " +
                       std::to_string(f.map.edge_count()));
    f.orientation = std::move(o);
  }
  if (j.contains("family")) {
    if (!j["family"].is_string()) throw InputError("family must be a string");
    f.family = parse_family(j["family"].get<std::string>());
  }
  if (j.contains("lambda_star")) {
    f.lambda_star = int_array<std::int32_t>(j, "lambda_star");
    if (f.lambda_star.size() != f.map.half_edge_count()) throw InputError("lambda_star must have one entry per corner");
  }
  const auto vertex_field = [&](const char* key) {
    const auto v = integer<VertexId>(field(j, key), key);
    if (v < 0 || static_cast<std::size_t>(v) >= f.map.vertex_count()) throw InputError(std::string(key) + " out of range");
    return v;
  };
  if (j.contains("A")) f.A = vertex_field("A");
  if (j.contains("B")) f.B = vertex_field("B");
  if (j.contains("tree_vertex_ids")) {
    f.tree_vertex_ids = int_array<VertexId>(j, "tree_vertex_ids");
    if (f.tree_vertex_ids.size() != f.map.vertex_count())
      throw InputError("tree_vertex_ids must have one entry per vertex");
  }
  return f;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write " + path);
  out << text << '\n';
  if (!out) throw InputError("write failed for " + path);
}

std::string checksum_hex(const std::string& canonical) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(canonical)));
  return buf;
}

}  // namespace mapforge
