#pragma once
// Exact decision procedures for the graph properties under study, each with a
// witness or a certificate. Pair enumeration is pruned by 2r-locality: the
// four endpoints of any two crossing edges are pairwise within 2r, so with
// grid cells at least r wide all partners live within two cell rings.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "rgg/errors.hpp"
#include "rgg/exact_mis.hpp"
#include "rgg/geometry.hpp"
#include "rgg/graph.hpp"
#include "rgg/planarity.hpp"

namespace rgg {

// ---------------------------------------------------------------------------
// Properties
// ---------------------------------------------------------------------------

enum class PropertyKind {
  HasEdge,
  ConnectedK,
  CliqueK,
  Plane,
  Planar,
  HasFreeEdge,
  AllEdgesFree,
  IndependentK,
};

struct Property {
  PropertyKind kind = PropertyKind::HasEdge;
  int k = 0;  // meaningful for ConnectedK, CliqueK, IndependentK
};

enum class Monotonicity { Increasing, Decreasing, None };

inline bool property_has_k(PropertyKind kind) {
  return kind == PropertyKind::ConnectedK || kind == PropertyKind::CliqueK ||
         kind == PropertyKind::IndependentK;
}

inline Monotonicity monotonicity(PropertyKind kind) {
  switch (kind) {
    case PropertyKind::HasEdge:
    case PropertyKind::ConnectedK:
    case PropertyKind::CliqueK:
      return Monotonicity::Increasing;
    case PropertyKind::Plane:
    case PropertyKind::Planar:
    case PropertyKind::IndependentK:
      return Monotonicity::Decreasing;
    default:
      return Monotonicity::None;
  }
}

inline const char* property_name(PropertyKind kind) {
  switch (kind) {
    case PropertyKind::HasEdge: return "has-edge";
    case PropertyKind::ConnectedK: return "connected-k";
    case PropertyKind::CliqueK: return "clique-k";
    case PropertyKind::Plane: return "plane";
    case PropertyKind::Planar: return "planar";
    case PropertyKind::HasFreeEdge: return "has-free-edge";
    case PropertyKind::AllEdgesFree: return "all-edges-free";
    case PropertyKind::IndependentK: return "independent-k";
  }
  return "?";
}

inline Property parse_property(const std::string& name, int k) {
  static const std::pair<const char*, PropertyKind> table[] = {
      {"has-edge", PropertyKind::HasEdge},
      {"connected-k", PropertyKind::ConnectedK},
      {"clique-k", PropertyKind::CliqueK},
      {"plane", PropertyKind::Plane},
      {"planar", PropertyKind::Planar},
      {"has-free-edge", PropertyKind::HasFreeEdge},
      {"all-edges-free", PropertyKind::AllEdgesFree},
      {"independent-k", PropertyKind::IndependentK},
  };
  for (const auto& [n, kind] : table)
    if (name == n) {
      if (property_has_k(kind) && k < 1)
        throw Error(std::string("property ") + name + " requires --k");
      return {kind, property_has_k(kind) ? k : 0};
    }
  throw Error("unknown property: " + name);
}

// ---------------------------------------------------------------------------
// Decisions and witnesses
// ---------------------------------------------------------------------------

struct TriStateDecision {
  enum class Kind { Yes, No, Unknown };

  Kind kind = Kind::Unknown;
  std::vector<VertexId> witness;       // Yes: vertex set satisfying the property
  std::string certificate;             // No: description of the certificate
  std::int64_t certificate_value = 0;  // No: the certified bound
  std::int64_t lower = 0;              // Unknown: best found
  std::int64_t upper = 0;              // Unknown: certified bound

  static TriStateDecision yes(std::vector<VertexId> w) {
    TriStateDecision d;
    d.kind = Kind::Yes;
    d.witness = std::move(w);
    return d;
  }
  static TriStateDecision no(std::string cert, std::int64_t value) {
    TriStateDecision d;
    d.kind = Kind::No;
    d.certificate = std::move(cert);
    d.certificate_value = value;
    return d;
  }
  static TriStateDecision unknown(std::int64_t lo, std::int64_t hi) {
    TriStateDecision d;
    d.kind = Kind::Unknown;
    d.lower = lo;
    d.upper = hi;
    return d;
  }
};

struct CrossingPair {
  Edge e1;
  Edge e2;
};

// Four vertices where crown-c-d form a triangle and the edge crown-apex
// crosses cd; exists iff the drawing is non-plane.
struct Anchor {
  VertexId crown = -1;
  VertexId c = -1;
  VertexId d = -1;
  VertexId apex = -1;
};

// ---------------------------------------------------------------------------
// Connectivity and cliques
// ---------------------------------------------------------------------------

inline bool has_connected_k(const RggGraph& g, int k) {
  if (k < 2) throw Error("connected-k requires k >= 2");
  return max_component_size(g) >= k;
}

namespace detail {

// Smallest-last (degeneracy) order via a bucket queue; deterministic.
inline std::vector<VertexId> degeneracy_order(const RggGraph& g) {
  const auto n = static_cast<std::size_t>(g.n());
  std::vector<std::int32_t> deg(n);
  std::int32_t maxdeg = 0;
  for (std::size_t v = 0; v < n; ++v) {
    deg[v] = static_cast<std::int32_t>(g.degree(static_cast<VertexId>(v)));
    maxdeg = std::max(maxdeg, deg[v]);
  }
  std::vector<std::vector<VertexId>> bucket(static_cast<std::size_t>(maxdeg) + 1);
  for (std::size_t v = n; v-- > 0;)
    bucket[deg[v]].push_back(static_cast<VertexId>(v));

  std::vector<bool> removed(n, false);
  std::vector<VertexId> order;
  order.reserve(n);
  std::int32_t cur = 0;
  while (order.size() < n) {
    if (cur > 0 && !bucket[cur - 1].empty()) --cur;
    while (cur <= maxdeg && bucket[cur].empty()) ++cur;
    const VertexId v = bucket[cur].back();
    bucket[cur].pop_back();
    if (removed[v] || deg[v] != cur) continue;  // stale entry
    removed[v] = true;
    order.push_back(v);
    for (VertexId w : g.neighbors(v))
      if (!removed[w]) bucket[--deg[w]].push_back(w);
  }
  return order;
}

inline bool extend_clique(const RggGraph& g, std::vector<VertexId>& cur,
                          const std::vector<VertexId>& cand, int need) {
  if (need == 0) return true;
  if (static_cast<int>(cand.size()) < need) return false;
  for (std::size_t i = 0; i + need <= cand.size(); ++i) {
    const VertexId u = cand[i];
    std::vector<VertexId> next;
    next.reserve(cand.size() - i - 1);
    for (std::size_t j = i + 1; j < cand.size(); ++j)
      if (g.has_edge(u, cand[j])) next.push_back(cand[j]);
    cur.push_back(u);
    if (extend_clique(g, cur, next, need - 1)) return true;
    cur.pop_back();
  }
  return false;
}

}  // namespace detail

// Exhaustive clique search restricted to closed neighborhoods in degeneracy
// order; exact for the constant-k regime (k <= 7), never Unknown.
inline TriStateDecision has_clique_k(const RggGraph& g, int k) {
  if (k < 2) throw Error("clique-k requires k >= 2");
  if (k > 7) throw KTooLarge("clique-k supports k <= 7");
  if (k > g.n())
    return TriStateDecision::no("k exceeds vertex count", g.n());

  if (k == 2) {
    if (g.edges().empty())
      return TriStateDecision::no("graph has no edge", 0);
    return TriStateDecision::yes({g.edges()[0].first, g.edges()[0].second});
  }

  const auto order = detail::degeneracy_order(g);
  std::vector<std::int32_t> pos(static_cast<std::size_t>(g.n()));
  for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = static_cast<std::int32_t>(i);

  for (VertexId v : order) {
    std::vector<VertexId> later;
    for (VertexId w : g.neighbors(v))
      if (pos[w] > pos[v]) later.push_back(w);
    if (static_cast<int>(later.size()) < k - 1) continue;
    std::vector<VertexId> cur{v};
    if (detail::extend_clique(g, cur, later, k - 1)) {
      std::sort(cur.begin(), cur.end());
      return TriStateDecision::yes(std::move(cur));
    }
  }
  return TriStateDecision::no("exhausted degeneracy neighborhoods", 0);
}

// ---------------------------------------------------------------------------
// Crossings, plane, anchors
// ---------------------------------------------------------------------------

namespace detail {

// Candidate partner edges of e=(u,v), canonical and lexicographically after e,
// gathered from the two-ring cell patch around u.
inline void gather_partner_edges(const RggGraph& g, Edge e, std::vector<Edge>& out) {
  out.clear();
  const Point pu = g.points()[e.first];
  const auto& grid = g.grid();
  grid.for_patch(grid.cell_x(pu.x), grid.cell_y(pu.y), 2, [&](VertexId w) {
    for (VertexId z : g.neighbors(w)) {
      Edge f{std::min(w, z), std::max(w, z)};
      if (f > e) out.push_back(f);
    }
  });
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
}

// All partner edges of e (before or after), for interior-intersection scans.
inline void gather_all_partner_edges(const RggGraph& g, Edge e, std::vector<Edge>& out) {
  out.clear();
  const Point pu = g.points()[e.first];
  const auto& grid = g.grid();
  grid.for_patch(grid.cell_x(pu.x), grid.cell_y(pu.y), 2, [&](VertexId w) {
    for (VertexId z : g.neighbors(w)) {
      Edge f{std::min(w, z), std::max(w, z)};
      if (f != e) out.push_back(f);
    }
  });
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
}

}  // namespace detail

inline std::vector<CrossingPair> crossing_pairs(const RggGraph& g, bool stop_at_first) {
  std::vector<CrossingPair> found;
  std::vector<Edge> cand;
  for (const Edge& e : g.edges()) {
    const Segment se = g.edge_segment(e.first, e.second);
    detail::gather_partner_edges(g, e, cand);
    for (const Edge& f : cand) {
      const Segment sf = g.edge_segment(f.first, f.second);
      if (segments_cross(se, sf, g.metric())) {
        found.push_back({e, f});
        if (stop_at_first) return found;
      }
    }
  }
  return found;
}

inline bool is_plane(const RggGraph& g) {
  return crossing_pairs(g, true).empty();
}

inline std::int64_t count_crossings(const RggGraph& g) {
  return static_cast<std::int64_t>(crossing_pairs(g, false).size());
}

// Anchor search independent of the crossing enumeration: triangles (a,c,d)
// plus an incident edge (a,b) crossing cd.
inline std::optional<Anchor> find_anchor(const RggGraph& g) {
  const auto n = static_cast<VertexId>(g.n());
  for (VertexId a = 0; a < n; ++a) {
    const auto na = g.neighbors(a);
    for (std::size_t ci = 0; ci < na.size(); ++ci) {
      for (std::size_t di = ci + 1; di < na.size(); ++di) {
        const VertexId c = na[ci], d = na[di];
        if (!g.has_edge(c, d)) continue;
        const Segment cd = g.edge_segment(c, d);
        for (VertexId b : na) {
          if (b == c || b == d) continue;
          if (segments_cross(g.edge_segment(a, b), cd, g.metric()))
            return Anchor{a, c, d, b};
        }
      }
    }
  }
  return std::nullopt;
}

// Invariants every reported crossing must satisfy.
struct CrossingInvariants {
  bool adjacent_sides = false;  // two adjacent quadrilateral sides are edges
  bool pairwise_2r = false;     // endpoints pairwise within 2r
  bool hub_within_r = false;    // one endpoint within r of the other three

  bool all() const { return adjacent_sides && pairwise_2r && hub_within_r; }
};

inline CrossingInvariants check_crossing_invariants(const RggGraph& g,
                                                    const CrossingPair& cp) {
  const VertexId a = cp.e1.first, b = cp.e1.second;
  const VertexId c = cp.e2.first, d = cp.e2.second;
  const VertexId vs[4] = {a, b, c, d};

  CrossingInvariants inv;
  inv.adjacent_sides = (g.has_edge(a, c) && g.has_edge(a, d)) ||
                       (g.has_edge(b, c) && g.has_edge(b, d)) ||
                       (g.has_edge(c, a) && g.has_edge(c, b)) ||
                       (g.has_edge(d, a) && g.has_edge(d, b));

  const double two_r = 2.0 * g.r();
  inv.pairwise_2r = true;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (g.edge_length(vs[i], vs[j]) > two_r) inv.pairwise_2r = false;

  for (int i = 0; i < 4 && !inv.hub_within_r; ++i) {
    bool ok = true;
    for (int j = 0; j < 4; ++j)
      if (j != i && g.edge_length(vs[i], vs[j]) > g.r()) ok = false;
    inv.hub_within_r = ok;
  }
  return inv;
}

// ---------------------------------------------------------------------------
// Free and long edges
// ---------------------------------------------------------------------------

namespace detail {

inline bool edge_is_free_impl(const RggGraph& g, Edge e, std::vector<Edge>& scratch) {
  const Segment se = g.edge_segment(e.first, e.second);
  gather_all_partner_edges(g, e, scratch);
  for (const Edge& f : scratch)
    if (interior_intersected(se, g.edge_segment(f.first, f.second), g.metric()))
      return false;
  return true;
}

}  // namespace detail

inline bool edge_is_free(const RggGraph& g, Edge e) {
  std::vector<Edge> scratch;
  return detail::edge_is_free_impl(g, e, scratch);
}

inline std::vector<Edge> free_edges(const RggGraph& g) {
  std::vector<Edge> out, scratch;
  for (const Edge& e : g.edges())
    if (detail::edge_is_free_impl(g, e, scratch)) out.push_back(e);
  return out;
}

inline bool has_free_edge(const RggGraph& g) {
  std::vector<Edge> scratch;
  for (const Edge& e : g.edges())
    if (detail::edge_is_free_impl(g, e, scratch)) return true;
  return false;
}

inline bool all_edges_free(const RggGraph& g) {
  std::vector<Edge> scratch;
  for (const Edge& e : g.edges())
    if (!detail::edge_is_free_impl(g, e, scratch)) return false;
  return true;
}

inline double long_edge_cutoff(std::int64_t n) {
  return std::sqrt(8.0 * std::log(static_cast<double>(n)) / static_cast<double>(n));
}

// Edges of length >= sqrt(8 ln n / n), boundary inclusive.
inline std::vector<Edge> long_edges(const RggGraph& g) {
  std::vector<Edge> out;
  if (g.n() < 1) return out;
  const double cutoff = long_edge_cutoff(g.n());
  const double cutoff_sq = cutoff * cutoff;
  for (const Edge& e : g.edges())
    if (distance_sq(g.points()[e.first], g.points()[e.second], g.metric()) >= cutoff_sq)
      out.push_back(e);
  return out;
}

// ---------------------------------------------------------------------------
// Independent sets
// ---------------------------------------------------------------------------

// Non-empty cells of the diagonal-r partition (side r/sqrt(2), nudged down so
// cells are cliques despite rounding). Any independent set has at most one
// point per non-empty cell.
inline std::int64_t clique_cover_cell_count(const RggGraph& g) {
  if (g.n() == 0) return 0;
  double side = g.r() / std::sqrt(2.0);
  while (2.0 * side * side > g.r() * g.r())
    side = std::nextafter(side, 0.0);
  const auto cols = static_cast<std::int64_t>(std::ceil(1.0 / side));
  std::vector<std::int64_t> keys;
  keys.reserve(static_cast<std::size_t>(g.n()));
  for (const Point& p : g.points()) {
    const auto cx = std::min(static_cast<std::int64_t>(p.x / side), cols - 1);
    const auto cy = std::min(static_cast<std::int64_t>(p.y / side), cols - 1);
    keys.push_back(cy * cols + cx);
  }
  std::sort(keys.begin(), keys.end());
  return static_cast<std::int64_t>(
      std::unique(keys.begin(), keys.end()) - keys.begin());
}

// Independent set of size k from the every-second-column-and-row grid. The
// unit square is tiled with ceil(sqrt(k)) periods per axis, each period being
// a selected cell followed by a gap of width r (so selected cells are pairwise
// farther than r apart, with wraparound-safe spacing for the torus). Succeeds
// when at least k selected cells are occupied.
inline std::optional<std::vector<VertexId>> grid_witness_is(const RggGraph& g, int k) {
  if (k < 1) throw Error("independent-k requires k >= 1");
  const double bound = 1.0 / (2.0 * std::sqrt(static_cast<double>(k)));
  if (g.r() > bound)
    throw RadiusTooLargeForGrid("grid witness requires r <= 1/(2*sqrt(k))");
  if (g.n() < k) return std::nullopt;
  if (k == 1) return std::vector<VertexId>{0};

  const auto cols = static_cast<std::int64_t>(
      std::ceil(std::sqrt(static_cast<double>(k))));
  const double period = 1.0 / static_cast<double>(cols);
  const double sel = period - g.r();  // selected-cell width; gap is r

  std::vector<VertexId> first_in_cell(static_cast<std::size_t>(cols * cols), -1);
  const auto n = static_cast<VertexId>(g.n());
  for (VertexId v = 0; v < n; ++v) {
    const Point p = g.points()[v];
    const auto cx = std::min(static_cast<std::int64_t>(p.x * cols), cols - 1);
    const auto cy = std::min(static_cast<std::int64_t>(p.y * cols), cols - 1);
    if (p.x - static_cast<double>(cx) * period >= sel) continue;
    if (p.y - static_cast<double>(cy) * period >= sel) continue;
    auto& slot = first_in_cell[static_cast<std::size_t>(cy * cols + cx)];
    if (slot < 0) slot = v;
  }

  std::vector<VertexId> picked;
  for (VertexId v : first_in_cell) {
    if (v < 0) continue;
    picked.push_back(v);
    if (static_cast<int>(picked.size()) == k) break;
  }
  if (static_cast<int>(picked.size()) < k) return std::nullopt;

  std::sort(picked.begin(), picked.end());
  for (std::size_t i = 0; i < picked.size(); ++i)
    for (std::size_t j = i + 1; j < picked.size(); ++j)
      if (g.has_edge(picked[i], picked[j])) return std::nullopt;  // r-tie
  return picked;
}

namespace detail {

inline std::vector<VertexId> greedy_independent_set(const RggGraph& g) {
  const auto n = static_cast<std::size_t>(g.n());
  std::vector<VertexId> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<VertexId>(i);
  std::sort(order.begin(), order.end(), [&](VertexId a, VertexId b) {
    const auto da = g.degree(a), db = g.degree(b);
    return da != db ? da < db : a < b;
  });
  std::vector<bool> blocked(n, false);
  std::vector<VertexId> out;
  for (VertexId v : order) {
    if (blocked[v]) continue;
    out.push_back(v);
    for (VertexId w : g.neighbors(v)) blocked[w] = true;
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline constexpr std::int64_t kExactMisComponentCap = 50;

}  // namespace detail

// Tri-state independent-set decision. When every component is small the
// answer is exact (per-component branch and bound). Otherwise a Yes witness
// is sought via the grid construction and then greedily, a No certificate via
// the clique-cover bound, and the remaining cases report Unknown bounds.
inline TriStateDecision independent_k(const RggGraph& g, int k) {
  if (k < 1 || k > g.n()) throw Error("independent-k requires 1 <= k <= n");

  const auto comps = components(g);
  bool all_small = true;
  for (const auto& c : comps)
    if (static_cast<std::int64_t>(c.size()) > detail::kExactMisComponentCap) {
      all_small = false;
      break;
    }

  if (all_small) {
    std::vector<VertexId> witness;
    std::int64_t total = 0;
    for (const auto& comp : comps) {
      std::vector<std::uint64_t> adj(comp.size(), 0);
      for (std::size_t i = 0; i < comp.size(); ++i)
        for (std::size_t j = i + 1; j < comp.size(); ++j)
          if (g.has_edge(comp[i], comp[j])) {
            adj[i] |= std::uint64_t{1} << j;
            adj[j] |= std::uint64_t{1} << i;
          }
      const std::uint64_t best = max_independent_set_mask(adj);
      total += std::popcount(best);
      if (static_cast<int>(witness.size()) < k)
        for (std::size_t i = 0; i < comp.size(); ++i)
          if (best >> i & 1) witness.push_back(comp[i]);
    }
    if (total >= k) {
      witness.resize(static_cast<std::size_t>(k));
      std::sort(witness.begin(), witness.end());
      return TriStateDecision::yes(std::move(witness));
    }
    return TriStateDecision::no("exact per-component maximum independent set", total);
  }

  if (g.r() <= 1.0 / (2.0 * std::sqrt(static_cast<double>(k))))
    if (auto w = grid_witness_is(g, k))
      return TriStateDecision::yes(std::move(*w));

  auto greedy = detail::greedy_independent_set(g);
  if (static_cast<int>(greedy.size()) >= k) {
    greedy.resize(static_cast<std::size_t>(k));
    return TriStateDecision::yes(std::move(greedy));
  }

  const std::int64_t cover = clique_cover_cell_count(g);
  if (cover < k)
    return TriStateDecision::no("clique cover by diagonal-r cells", cover);
  return TriStateDecision::unknown(static_cast<std::int64_t>(greedy.size()), cover);
}

// ---------------------------------------------------------------------------
// Occupancy diagnostic
// ---------------------------------------------------------------------------

// Fraction of occupied sub-squares when the unit square is tiled with squares
// of diagonal at most r, each split 3x3. Full occupancy implies a crossing.
inline double nine_subsquare_occupancy(std::span<const Point> points, double r) {
  if (points.empty()) return 0.0;
  const auto big = static_cast<std::int64_t>(std::ceil(std::sqrt(2.0) / r));
  const std::int64_t cells = 3 * big;
  std::vector<std::int64_t> keys;
  keys.reserve(points.size());
  for (const Point& p : points) {
    const auto cx = std::min(static_cast<std::int64_t>(p.x * static_cast<double>(cells)), cells - 1);
    const auto cy = std::min(static_cast<std::int64_t>(p.y * static_cast<double>(cells)), cells - 1);
    keys.push_back(cy * cells + cx);
  }
  std::sort(keys.begin(), keys.end());
  const auto occupied = static_cast<double>(
      std::unique(keys.begin(), keys.end()) - keys.begin());
  return occupied / (static_cast<double>(cells) * static_cast<double>(cells));
}

inline double nine_subsquare_occupancy(const RggGraph& g) {
  return nine_subsquare_occupancy(g.points(), g.r());
}

// ---------------------------------------------------------------------------
// Uniform dispatch
// ---------------------------------------------------------------------------

using EvalResult = std::variant<bool, TriStateDecision>;

inline EvalResult evaluate(const RggGraph& g, Property p) {
  switch (p.kind) {
    case PropertyKind::HasEdge: return !g.edges().empty();
    case PropertyKind::ConnectedK: return has_connected_k(g, p.k);
    case PropertyKind::CliqueK:
      return has_clique_k(g, p.k).kind == TriStateDecision::Kind::Yes;
    case PropertyKind::Plane: return is_plane(g);
    case PropertyKind::Planar: return is_planar(g);
    case PropertyKind::HasFreeEdge: return has_free_edge(g);
    case PropertyKind::AllEdgesFree: return all_edges_free(g);
    case PropertyKind::IndependentK: return independent_k(g, p.k);
  }
  throw Error("unhandled property");
}

}  // namespace rgg
