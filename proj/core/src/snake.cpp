#include "mapforge/snake.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/distributions/chi_squared.hpp>

#include "mapforge/geodesics.hpp"

namespace mapforge {

namespace {

double interpolate(const std::vector<std::int32_t>& xs, double t) {
  if (xs.size() == 1) return xs[0];
  const double pos = std::clamp(t, 0.0, 1.0) * static_cast<double>(xs.size() - 1);
  const auto i = static_cast<std::size_t>(std::floor(pos));
  if (i + 1 >= xs.size()) return xs.back();
  const double frac = pos - static_cast<double>(i);
  return xs[i] + frac * (xs[i + 1] - xs[i]);
}

double median(std::vector<double> xs) {
  if (xs.empty()) return 0;
  std::sort(xs.begin(), xs.end());
  const std::size_t m = xs.size() / 2;
  return xs.size() % 2 ? xs[m] : 0.5 * (xs[m - 1] + xs[m]);
}

}  // namespace

double ProcessPair::C_at(double t) const { return interpolate(C, t); }
double ProcessPair::Z_at(double t) const { return interpolate(Z, t); }

ProcessPair processes(const ValidLabelledTree& v) {
  const auto contour = contour_exploration(v.tree);
  const auto X = vertex_labels(v).X;
  ProcessPair p;
  p.C = height_process(v.tree, contour);
  p.Z.reserve(contour.visits.size());
  for (VertexId u : contour.visits) p.Z.push_back(X[u]);
  return p;
}

double contour_scale(Family f, std::size_t n) {
  const double x = static_cast<double>(n);
  return f == Family::Triangulation ? 1.0 / std::sqrt(3 * x) : 3.0 / (4.0 * std::sqrt(x));
}

double label_scale(Family f, std::size_t n) {
  const double x = static_cast<double>(n);
  return f == Family::Triangulation ? std::pow(4 * x / 3, -0.25) : std::pow(3 / (8 * x), 0.25);
}

double distance_scale(Family f, std::size_t n) { return label_scale(f, n); }

ValidLabelledTree sample_valid_labelled_tree(std::size_t n, Family f, Rng& rng) {
  return to_valid_labelling(sample_blossoming_tree(n, f, rng)).labelled;
}

void shuffle_block(std::vector<std::int8_t>& values, Rng& rng) {
  for (std::size_t i = values.size(); i > 1; --i) std::swap(values[i - 1], values[rng.below(i)]);
}

std::vector<std::uint8_t> spanned_mask(const PlantedPlaneTree& tree, const std::vector<VertexId>& R) {
  std::vector<std::uint8_t> mark(tree.size(), 0);
  if (R.empty()) return mark;
  // Paths to the root, then trim the part above the deepest common ancestor.
  std::vector<std::uint32_t> hits(tree.size(), 0);
  std::vector<std::uint8_t> in_r(tree.size(), 0);
  for (VertexId r : R) in_r[r] = 1;
  std::size_t distinct = 0;
  for (VertexId v = 0; v < static_cast<VertexId>(tree.size()); ++v) distinct += in_r[v];
  for (auto it = tree.preorder().rbegin(); it != tree.preorder().rend(); ++it) {
    const VertexId v = *it;
    hits[v] += in_r[v];
    if (tree.parent(v) != kNoVertex) hits[tree.parent(v)] += hits[v];
  }
  VertexId top = tree.root();
  for (;;) {
    if (in_r[top]) break;
    VertexId next = kNoVertex;
    for (VertexId c : tree.children(top))
      if (hits[c] == distinct) next = c;
    if (next == kNoVertex) break;
    top = next;
  }
  for (VertexId v = 0; v < static_cast<VertexId>(tree.size()); ++v)
    if (hits[v] > 0 && tree.depth(v) >= tree.depth(top)) mark[v] = 1;
  return mark;
}

SymmetrizedTree partial_symmetrize(const ValidLabelledTree& v, const std::vector<VertexId>& R, Rng& rng) {
  const auto& tr = v.tree;
  if (std::find(R.begin(), R.end(), tr.root()) == R.end()) throw PreconditionError("partial_symmetrize: R must contain the root");
  SymmetrizedTree out;
  out.spanned = spanned_mask(tr, R);
  out.disp = v.disp;
  std::vector<std::vector<VertexId>> children(tr.size());
  std::vector<std::int8_t> values;
  for (VertexId u = 0; u < static_cast<VertexId>(tr.size()); ++u) {
    const auto ch = tr.children(u);
    values.clear();
    for (VertexId c : ch) values.push_back(v.disp[c]);
    shuffle_block(values, rng);
    if (out.spanned[u]) {
      // Children stay, displacements move.
      children[u].assign(ch.begin(), ch.end());
      for (std::size_t i = 0; i < ch.size(); ++i) out.disp[ch[i]] = values[i];
    } else {
      // Children move with their displacement; equal values keep their order.
      std::array<std::vector<VertexId>, 5> by_value;
      for (VertexId c : ch) by_value[v.disp[c] + 2].push_back(c);
      std::array<std::size_t, 5> used{};
      for (std::int8_t d : values) children[u].push_back(by_value[d + 2][used[d + 2]++]);
    }
  }
  out.tree = PlantedPlaneTree(children, tr.root());
  return out;
}

SymmetrizedTree partial_symmetrize(const ValidLabelledTree& v, const std::vector<VertexId>& R, std::uint64_t seed) {
  Rng rng(seed);
  return partial_symmetrize(v, R, rng);
}

std::int32_t fluctuation(const PlantedPlaneTree& tree, const std::vector<std::int8_t>& disp,
                         const std::vector<std::uint8_t>& spanned) {
  const auto contour = contour_exploration(tree);
  std::vector<std::int32_t> X(tree.size(), 0);
  for (VertexId u : tree.preorder())
    if (u != tree.root()) X[u] = X[tree.parent(u)] + disp[u];
  std::int32_t best = 0;
  std::int32_t next_label = X[tree.root()];
  for (std::size_t j = contour.visits.size(); j-- > 0;) {
    const VertexId r = contour.visits[j];
    if (spanned[r]) next_label = X[r];
    best = std::max(best, std::abs(X[r] - next_label));
  }
  return best;
}

DisplacementLawReport symmetrized_displacement_law_test(Family f, std::size_t n, std::size_t trees, std::uint64_t seed,
                                                        std::size_t max_k, unsigned threads) {
  // Per tree, per (k, index): count, sums for raw and symmetrized values,
  // and symmetrized value counts.
  struct Acc {
    std::vector<double> n, s, ss, rs, rss;
    std::vector<std::array<double, 3>> freq;
  };
  std::size_t slots = max_k * (max_k + 1) / 2;
  auto slot = [](std::size_t k, std::size_t i) { return (k - 1) * k / 2 + i; };
  std::vector<Acc> acc(trees);
  parallel_for(trees, threads, [&](std::size_t t) {
    Rng rng(stream_seed(seed, t));
    const auto v = sample_valid_labelled_tree(n, f, rng);
    const auto sym = partial_symmetrize(v, {v.tree.root()}, rng);
    Acc a{std::vector<double>(slots), std::vector<double>(slots), std::vector<double>(slots),
          std::vector<double>(slots), std::vector<double>(slots), std::vector<std::array<double, 3>>(slots)};
    for (VertexId u = 0; u < static_cast<VertexId>(v.tree.size()); ++u) {
      const std::size_t k = v.tree.child_count(u);
      if (k == 0 || k > max_k) continue;
      for (std::size_t i = 0; i < k; ++i) {
        const double raw = v.disp[v.tree.child(u, i)];
        const double s = sym.disp[sym.tree.child(u, i)];
        const std::size_t q = slot(k, i);
        a.n[q] += 1;
        a.s[q] += s;
        a.ss[q] += s * s;
        a.rs[q] += raw;
        a.rss[q] += raw * raw;
        a.freq[q][static_cast<std::size_t>(s + 1)] += 1;
      }
    }
    acc[t] = std::move(a);
  });
  DisplacementLawReport rep;
  rep.trees = trees;
  const bool tri = f == Family::Triangulation;
  for (std::size_t k = 1; k <= max_k; ++k) {
    for (std::size_t i = 0; i < k; ++i) {
      const std::size_t q = slot(k, i);
      double N = 0, s = 0, ss = 0, rs = 0, rss = 0;
      std::array<double, 3> freq{};
      for (const auto& a : acc) {
        N += a.n[q];
        s += a.s[q];
        ss += a.ss[q];
        rs += a.rs[q];
        rss += a.rss[q];
        for (int b = 0; b < 3; ++b) freq[b] += a.freq[q][b];
      }
      DisplacementLawReport::Coordinate c;
      c.k = k;
      c.index = i;
      c.count = static_cast<std::size_t>(N);
      if (N > 1) {
        c.mean = s / N;
        c.se = std::sqrt(std::max(0.0, ss / N - c.mean * c.mean) / (N - 1));
        c.mean_raw = rs / N;
        c.se_raw = std::sqrt(std::max(0.0, rss / N - c.mean_raw * c.mean_raw) / (N - 1));
        // Uniform on {-1,0,1} (tri) or {-1,1} (quad).
        const double cells = tri ? 3 : 2;
        const double expect = N / cells;
        for (int b = 0; b < 3; ++b) {
          if (!tri && b == 1) continue;
          c.chi2 += (freq[b] - expect) * (freq[b] - expect) / expect;
        }
        const boost::math::chi_squared dist(cells - 1);
        c.p_value = boost::math::cdf(boost::math::complement(dist, c.chi2));
      }
      rep.coordinates.push_back(c);
    }
  }
  return rep;
}

MarkedSample sample_marked_map(std::size_t inner, Family f, Rng& rng) {
  MarkedSample s;
  s.marked = sample_blossoming_tree(inner, f, rng);
  const auto [a, b] = balanced_corners(s.marked);
  const std::size_t pick = rng.below(2) ? b : a;
  s.closure = close(reroot(s.marked, pick));
  s.labelled = to_valid_labelling(s.marked);
  s.X = vertex_labels(s.labelled.labelled).X;
  return s;
}

ClosureResult sample_rooted_map(std::size_t vertices, Family f, Rng& rng) {
  const std::size_t min_n = f == Family::Triangulation ? 3 : 4;
  if (vertices < min_n)
    throw PreconditionError("sample_rooted_map: need at least " + std::to_string(min_n) + " vertices, got " +
                            std::to_string(vertices));
  const auto t = sample_blossoming_tree(vertices - 2, f, rng);
  const auto [a, b] = balanced_corners(t);
  return close(reroot(t, rng.below(2) ? b : a));
}

std::vector<double> two_point_statistics(Family f, std::size_t n, std::size_t samples, std::uint64_t seed,
                                         unsigned threads) {
  const std::size_t min_n = f == Family::Triangulation ? 3 : 4;
  if (n < min_n) throw PreconditionError("two_point_statistics: too few vertices");
  std::vector<double> out(samples);
  const double scale = distance_scale(f, n);
  parallel_for(samples, threads, [&](std::size_t i) {
    Rng rng(stream_seed(seed, i));
    const auto r = sample_rooted_map(n, f, rng);
    const auto inner = r.inner_count();
    const auto U = static_cast<VertexId>(rng.below(inner));
    const auto V = static_cast<VertexId>(rng.below(inner));
    const auto d = bfs_distance(r.map, U);
    out[i] = scale * d[V];
  });
  return out;
}

double ks_statistic(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw PreconditionError("ks_statistic: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double best = 0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    best = std::max(best, std::abs(i / na - j / nb));
  }
  return best;
}

CsReport cs_family_report(Family f, const std::vector<std::size_t>& n_list, std::size_t samples, std::uint64_t seed,
                          unsigned threads, std::size_t pairs_per_map) {
  CsReport rep;
  rep.family = f;
  rep.samples = samples;
  for (std::size_t ni = 0; ni < n_list.size(); ++ni) {
    const std::size_t n = n_list[ni];
    const double bn = label_scale(f, n);
    struct PerMap {
      std::int32_t max_dist_to_R = 0;
      double root_dist = 0, uv_dist = 0;
      std::size_t violations = 0, checked = 0;
      double worst_slack = std::numeric_limits<double>::infinity();
      double lower_gap = 0, label_err = 0, root_min_gap = 0;
    };
    std::vector<PerMap> per(samples);
    parallel_for(samples, threads, [&](std::size_t s) {
      Rng rng(stream_seed(seed + ni, s));
      const auto ms = sample_marked_map(n - 2, f, rng);
      const auto& c = ms.closure;
      const Adjacency adj(c.map);
      const auto& T = ms.labelled.labelled.tree;
      const auto contour = contour_exploration(T);
      const std::size_t m = contour.visits.size();
      auto map_of = [&](VertexId tv) { return c.map_vertex[ms.labelled.original_id[tv]]; };
      std::vector<std::int32_t> Z(m);
      for (std::size_t j = 0; j < m; ++j) Z[j] = ms.X[contour.visits[j]];
      const std::int32_t minZ = *std::min_element(Z.begin(), Z.end());
      PerMap pm;

      const auto dA = bfs_distance(adj, c.A);
      const auto dB = bfs_distance(adj, c.B);
      {
        // Only A and B lie off R; their distance to R is 1 when they have an inner neighbour.
        std::int32_t dAR = std::numeric_limits<std::int32_t>::max(), dBR = dAR;
        for (std::size_t v = 0; v < c.inner_count(); ++v) {
          dAR = std::min(dAR, dA[v]);
          dBR = std::min(dBR, dB[v]);
        }
        pm.max_dist_to_R = std::max(dAR, dBR);
      }
      std::vector<std::int32_t> Yin(c.Y.begin(), c.Y.begin() + static_cast<std::ptrdiff_t>(c.inner_count()));
      std::vector<std::int32_t> dAin(dA.begin(), dA.begin() + static_cast<std::ptrdiff_t>(c.inner_count()));
      pm.label_err = label_distance_profile(Yin, dAin).max_err_scaled;

      const VertexId un = c.map.root_vertex();
      const VertexId marked = map_of(T.root());
      const auto dU = bfs_distance(adj, un);
      pm.root_dist = bn * dU[marked];
      pm.root_min_gap = std::abs(bn * dU[marked] + bn * minZ);
      double gap = 0;
      for (std::size_t j = 0; j < m; ++j) gap = std::max(gap, static_cast<double>(Z[j] - minZ - dU[map_of(contour.visits[j])]));
      pm.lower_gap = bn * gap;

      const auto inner = c.inner_count();
      const auto U = static_cast<VertexId>(rng.below(inner));
      const auto V = static_cast<VertexId>(rng.below(inner));
      pm.uv_dist = bn * bfs_distance(adj, U)[V];

      // 3(i) on random contour pairs: a few sources, many targets each.
      std::vector<std::int32_t> premin(Z), sufmin(Z), around(m);
      for (std::size_t q = 1; q < m; ++q) premin[q] = std::min(premin[q - 1], Z[q]);
      for (std::size_t q = m - 1; q-- > 0;) sufmin[q] = std::min(sufmin[q + 1], Z[q]);
      const std::size_t sources = std::max<std::size_t>(1, static_cast<std::size_t>(std::sqrt(pairs_per_map)));
      const std::size_t targets = (pairs_per_map + sources - 1) / sources;
      for (std::size_t a = 0; a < sources; ++a) {
        const std::size_t i = rng.below(m);
        // around[j] = min of Z between i and j.
        around[i] = Z[i];
        for (std::size_t q = i + 1; q < m; ++q) around[q] = std::min(around[q - 1], Z[q]);
        for (std::size_t q = i; q-- > 0;) around[q] = std::min(around[q + 1], Z[q]);
        const auto du = bfs_distance(adj, map_of(contour.visits[i]));
        for (std::size_t b = 0; b < targets; ++b) {
          const std::size_t j = rng.below(m);
          const std::size_t lo = std::min(i, j), hi = std::max(i, j);
          const std::int32_t inside = around[j];
          const std::int32_t outside = std::min(premin[lo], sufmin[hi]);
          const double bound = Z[i] + Z[j] - 2.0 * std::max(inside, outside) + 18;
          const double d = du[map_of(contour.visits[j])];
          ++pm.checked;
          if (d > bound) ++pm.violations;
          pm.worst_slack = std::min(pm.worst_slack, bound - d);
        }
      }
      per[s] = pm;
    });
    CsReport::Row row;
    row.n = n;
    std::vector<double> root_d, uv_d, lower, lerr, rgap;
    row.upper_worst_slack = std::numeric_limits<double>::infinity();
    for (const auto& pm : per) {
      row.max_dist_to_R = std::max(row.max_dist_to_R, pm.max_dist_to_R);
      row.upper_violations += pm.violations;
      row.upper_checked += pm.checked;
      row.upper_worst_slack = std::min(row.upper_worst_slack, pm.worst_slack);
      root_d.push_back(pm.root_dist);
      uv_d.push_back(pm.uv_dist);
      lower.push_back(pm.lower_gap);
      lerr.push_back(pm.label_err);
      rgap.push_back(pm.root_min_gap);
    }
    if (samples > 0) {
      row.ks_root_vs_uniform = ks_statistic(root_d, uv_d);
      double sum = 0;
      for (double g : rgap) sum += g;
      row.root_to_min_gap_mean = sum / static_cast<double>(samples);
    }
    row.lower_gap_median = median(lower);
    row.label_error_median = median(lerr);
    rep.rows.push_back(row);
  }
  return rep;
}

}  // namespace mapforge
