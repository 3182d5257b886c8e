#pragma once
// Abstract-graph planarity. Each connected component is prefiltered (fewer
// than 5 vertices or at most 8 edges is always planar; e > 3v-6 never is) and
// the remainder go through the Boyer-Myrvold linear-time test, which also
// yields a Kuratowski subgraph when asked for a witness.

#include <algorithm>
#include <vector>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>

#include "rgg/graph.hpp"

namespace rgg {

struct PlanarityResult {
  bool planar = true;
  std::vector<Edge> kuratowski;  // witness edges when non-planar (if requested)
};

namespace detail {

using BoostGraph =
    boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS,
                          boost::property<boost::vertex_index_t, int>,
                          boost::property<boost::edge_index_t, int>>;

inline bool component_planar(const RggGraph& g, const std::vector<VertexId>& comp,
                             bool want_witness, std::vector<Edge>* witness) {
  const std::int64_t v = static_cast<std::int64_t>(comp.size());
  if (v < 5) return true;

  std::vector<std::int32_t> local(static_cast<std::size_t>(g.n()), -1);
  for (std::size_t i = 0; i < comp.size(); ++i)
    local[comp[i]] = static_cast<std::int32_t>(i);

  std::int64_t m = 0;
  for (VertexId u : comp)
    for (VertexId w : g.neighbors(u))
      if (u < w) ++m;
  if (m <= 8) return true;
  if (m > 3 * v - 6 && !want_witness) return false;

  BoostGraph bg(static_cast<std::size_t>(v));
  for (VertexId u : comp)
    for (VertexId w : g.neighbors(u))
      if (u < w) boost::add_edge(local[u], local[w], bg);

  auto edge_index = boost::get(boost::edge_index, bg);
  int next_index = 0;
  for (auto [ei, ee] = boost::edges(bg); ei != ee; ++ei)
    boost::put(edge_index, *ei, next_index++);

  if (!want_witness)
    return boost::boyer_myrvold_planarity_test(bg);

  std::vector<boost::graph_traits<BoostGraph>::edge_descriptor> kur;
  const bool planar = boost::boyer_myrvold_planarity_test(
      boost::boyer_myrvold_params::graph = bg,
      boost::boyer_myrvold_params::kuratowski_subgraph = std::back_inserter(kur));
  if (!planar && witness) {
    for (const auto& e : kur) {
      VertexId a = comp[boost::source(e, bg)];
      VertexId b = comp[boost::target(e, bg)];
      witness->emplace_back(std::min(a, b), std::max(a, b));
    }
    std::sort(witness->begin(), witness->end());
    witness->erase(std::unique(witness->begin(), witness->end()), witness->end());
  }
  return planar;
}

}  // namespace detail

inline PlanarityResult check_planarity(const RggGraph& g, bool want_witness) {
  PlanarityResult res;
  for (const auto& comp : components(g)) {
    if (!detail::component_planar(g, comp, want_witness,
                                  want_witness ? &res.kuratowski : nullptr)) {
      res.planar = false;
      if (!want_witness) return res;
    }
    if (!res.planar && want_witness && !res.kuratowski.empty()) return res;
  }
  return res;
}

inline bool is_planar(const RggGraph& g) { return check_planarity(g, false).planar; }

}  // namespace rgg
