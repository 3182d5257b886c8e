#pragma once
// G(n,r) generation and adjacency construction. Points are bucketed into a
// grid whose cell width is at least r, so every neighbor of a vertex lives in
// the 3x3 cell patch around it (with wraparound under the torus metric).

#include <algorithm>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "rgg/errors.hpp"
#include "rgg/geometry.hpp"
#include "rgg/rng.hpp"

namespace rgg {

using VertexId = std::int32_t;
using Edge = std::pair<VertexId, VertexId>;  // always i < j

struct GraphConfig {
  std::int64_t n = 0;
  double r = 0.0;
  Metric metric = Metric::Square;
  std::uint64_t seed = 0;
};

// Radii up to the unit-square diameter are meaningful under Square; the torus
// lift additionally needs r < 1/4.
inline void validate_radius(double r, Metric metric) {
  if (!(r > 0.0 && r <= 1.4142135623730952)) throw Error("r must lie in (0, sqrt(2)]");
  if (metric == Metric::Torus && !(r < 0.25)) throw TorusRadiusTooLarge();
}

inline void validate(const GraphConfig& c) {
  if (c.n < 1) throw Error("n must be >= 1");
  validate_radius(c.r, c.metric);
}

class GridIndex {
 public:
  GridIndex() = default;

  GridIndex(std::span<const Point> points, double r, Metric metric)
      : metric_(metric) {
    cells_per_side_ = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::floor(1.0 / r)));
    while (cells_per_side_ > 1 && r * static_cast<double>(cells_per_side_) > 1.0)
      --cells_per_side_;
    cell_size_ = 1.0 / static_cast<double>(cells_per_side_);

    std::vector<std::pair<std::int64_t, VertexId>> tagged;
    tagged.reserve(points.size());
    for (std::size_t i = 0; i < points.size(); ++i)
      tagged.emplace_back(cell_key(cell_x(points[i].x), cell_y(points[i].y)),
                          static_cast<VertexId>(i));
    std::sort(tagged.begin(), tagged.end());

    members_.reserve(tagged.size());
    for (std::size_t i = 0; i < tagged.size(); ++i) {
      if (i == 0 || tagged[i].first != tagged[i - 1].first) {
        cell_ids_.push_back(tagged[i].first);
        cell_start_.push_back(static_cast<std::int32_t>(i));
      }
      members_.push_back(tagged[i].second);
    }
    cell_start_.push_back(static_cast<std::int32_t>(tagged.size()));
  }

  std::int64_t cells_per_side() const { return cells_per_side_; }
  double cell_size() const { return cell_size_; }

  std::int64_t cell_x(double x) const {
    auto c = static_cast<std::int64_t>(x * static_cast<double>(cells_per_side_));
    return std::min(c, cells_per_side_ - 1);
  }
  std::int64_t cell_y(double y) const { return cell_x(y); }

  std::span<const VertexId> cell_members(std::int64_t cx, std::int64_t cy) const {
    auto it = std::lower_bound(cell_ids_.begin(), cell_ids_.end(), cell_key(cx, cy));
    if (it == cell_ids_.end() || *it != cell_key(cx, cy)) return {};
    const auto idx = static_cast<std::size_t>(it - cell_ids_.begin());
    return {members_.data() + cell_start_[idx],
            static_cast<std::size_t>(cell_start_[idx + 1] - cell_start_[idx])};
  }

  // Visit vertices in the (2*rings+1)^2 cell patch around (cx, cy), clipped
  // under Square and wrapped under Torus.
  template <typename Fn>
  void for_patch(std::int64_t cx, std::int64_t cy, std::int64_t rings, Fn&& fn) const {
    const std::int64_t m = cells_per_side_;
    for (std::int64_t dy = -rings; dy <= rings; ++dy) {
      std::int64_t ny = cy + dy;
      if (metric_ == Metric::Torus) ny = ((ny % m) + m) % m;
      else if (ny < 0 || ny >= m) continue;
      for (std::int64_t dx = -rings; dx <= rings; ++dx) {
        std::int64_t nx = cx + dx;
        if (metric_ == Metric::Torus) nx = ((nx % m) + m) % m;
        else if (nx < 0 || nx >= m) continue;
        for (VertexId v : cell_members(nx, ny)) fn(v);
      }
    }
  }

 private:
  std::int64_t cell_key(std::int64_t cx, std::int64_t cy) const {
    return cy * cells_per_side_ + cx;
  }

  Metric metric_ = Metric::Square;
  std::int64_t cells_per_side_ = 1;
  double cell_size_ = 1.0;
  std::vector<std::int64_t> cell_ids_;    // sorted occupied cell keys
  std::vector<std::int32_t> cell_start_;  // offsets into members_
  std::vector<VertexId> members_;
};

// Immutable geometric graph: points, edge list (lexicographic), CSR adjacency
// with sorted rows, and the grid used to build them.
class RggGraph {
 public:
  RggGraph(GraphConfig config, std::vector<Point> points)
      : config_(config), points_(std::move(points)),
        grid_(points_, config_.r, config_.metric) {
    build_edges();
  }

  const GraphConfig& config() const { return config_; }
  std::int64_t n() const { return static_cast<std::int64_t>(points_.size()); }
  double r() const { return config_.r; }
  Metric metric() const { return config_.metric; }
  const std::vector<Point>& points() const { return points_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const GridIndex& grid() const { return grid_; }

  std::span<const VertexId> neighbors(VertexId v) const {
    return {adj_.data() + adj_offsets_[v],
            static_cast<std::size_t>(adj_offsets_[v + 1] - adj_offsets_[v])};
  }

  std::int64_t degree(VertexId v) const {
    return adj_offsets_[v + 1] - adj_offsets_[v];
  }

  bool has_edge(VertexId u, VertexId v) const {
    auto row = neighbors(u);
    return std::binary_search(row.begin(), row.end(), v);
  }

  Segment edge_segment(VertexId u, VertexId v) const {
    return make_segment(points_[u], points_[v], config_.metric);
  }

  double edge_length(VertexId u, VertexId v) const {
    return distance(points_[u], points_[v], config_.metric);
  }

 private:
  void build_edges() {
    const double r2 = config_.r * config_.r;
    const auto n = static_cast<VertexId>(points_.size());
    std::vector<VertexId> cand;
    for (VertexId i = 0; i < n; ++i) {
      cand.clear();
      const Point p = points_[i];
      grid_.for_patch(grid_.cell_x(p.x), grid_.cell_y(p.y), 1, [&](VertexId j) {
        if (j > i && distance_sq(p, points_[j], config_.metric) <= r2)
          cand.push_back(j);
      });
      std::sort(cand.begin(), cand.end());
      for (VertexId j : cand) edges_.emplace_back(i, j);
    }

    adj_offsets_.assign(points_.size() + 1, 0);
    for (const auto& [i, j] : edges_) {
      ++adj_offsets_[i + 1];
      ++adj_offsets_[j + 1];
    }
    for (std::size_t v = 1; v < adj_offsets_.size(); ++v)
      adj_offsets_[v] += adj_offsets_[v - 1];
    adj_.resize(2 * edges_.size());
    std::vector<std::int64_t> cursor(adj_offsets_.begin(), adj_offsets_.end() - 1);
    for (const auto& [i, j] : edges_) {
      adj_[cursor[i]++] = j;
      adj_[cursor[j]++] = i;
    }
  }

  GraphConfig config_;
  std::vector<Point> points_;
  GridIndex grid_;
  std::vector<Edge> edges_;
  std::vector<VertexId> adj_;
  std::vector<std::int64_t> adj_offsets_;
};

// Sample n i.i.d. uniform points from the seeded stream and build the graph.
// Identical configs produce bit-identical graphs.
inline RggGraph generate(const GraphConfig& config) {
  validate(config);
  Xoshiro256pp rng(config.seed);
  std::vector<Point> pts(static_cast<std::size_t>(config.n));
  for (auto& p : pts) {
    p.x = rng.uniform01();
    p.y = rng.uniform01();
  }
  return RggGraph(config, std::move(pts));
}

inline RggGraph from_points(std::vector<Point> points, double r, Metric metric) {
  validate_radius(r, metric);
  for (const Point& p : points)
    if (!is_canonical(p)) throw Error("point outside [0,1)^2");
  GraphConfig cfg{static_cast<std::int64_t>(points.size()), r, metric, 0};
  return RggGraph(cfg, std::move(points));
}

namespace detail {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n), size_(n, 1) {
    for (std::size_t i = 0; i < n; ++i) parent_[i] = static_cast<VertexId>(i);
  }

  VertexId find(VertexId v) {
    while (parent_[v] != v) {
      parent_[v] = parent_[parent_[v]];
      v = parent_[v];
    }
    return v;
  }

  void unite(VertexId a, VertexId b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
  }

  std::int64_t component_size(VertexId v) { return size_[find(v)]; }

 private:
  std::vector<VertexId> parent_;
  std::vector<std::int64_t> size_;
};

}  // namespace detail

// Maximal connected vertex sets, each sorted, ordered by smallest member.
inline std::vector<std::vector<VertexId>> components(const RggGraph& g) {
  const auto n = static_cast<std::size_t>(g.n());
  detail::UnionFind uf(n);
  for (const auto& [i, j] : g.edges()) uf.unite(i, j);

  std::vector<std::int32_t> group(n, -1);
  std::vector<std::vector<VertexId>> out;
  for (std::size_t v = 0; v < n; ++v) {
    const VertexId root = uf.find(static_cast<VertexId>(v));
    if (group[root] < 0) {
      group[root] = static_cast<std::int32_t>(out.size());
      out.emplace_back();
    }
    out[group[root]].push_back(static_cast<VertexId>(v));
  }
  return out;  // ascending vertex scan already orders by smallest member
}

inline std::int64_t max_component_size(const RggGraph& g) {
  const auto n = static_cast<std::size_t>(g.n());
  if (n == 0) return 0;
  detail::UnionFind uf(n);
  for (const auto& [i, j] : g.edges()) uf.unite(i, j);
  std::int64_t best = 0;
  for (std::size_t v = 0; v < n; ++v)
    best = std::max(best, uf.component_size(static_cast<VertexId>(v)));
  return best;
}

}  // namespace rgg
