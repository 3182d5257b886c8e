#pragma once
// Exact maximum independent set for small vertex sets (<= 64), used per
// component by the tri-state independent-set decision. Branch and bound over
// bitmask adjacency with degree-0/1 reductions.

#include <bit>
#include <cstdint>
#include <vector>

namespace rgg {

namespace detail {

struct MisSearch {
  const std::vector<std::uint64_t>& adj;  // closed over local vertex ids
  std::uint64_t best_set = 0;
  int best_size = 0;

  void run(std::uint64_t cand, std::uint64_t cur, int cur_size) {
    for (;;) {
      if (cur_size + std::popcount(cand) <= best_size) return;
      if (cand == 0) break;

      // Degree-0 and degree-1 vertices are always safe to take.
      bool reduced = false;
      for (std::uint64_t rest = cand; rest;) {
        const int v = std::countr_zero(rest);
        rest &= rest - 1;
        const std::uint64_t nb = adj[v] & cand;
        if (std::popcount(nb) <= 1) {
          cur |= std::uint64_t{1} << v;
          ++cur_size;
          cand &= ~((std::uint64_t{1} << v) | nb);
          reduced = true;
          break;
        }
      }
      if (reduced) continue;

      // Branch on a maximum-degree vertex.
      int pick = -1, pick_deg = -1;
      for (std::uint64_t rest = cand; rest;) {
        const int v = std::countr_zero(rest);
        rest &= rest - 1;
        const int d = std::popcount(adj[v] & cand);
        if (d > pick_deg) {
          pick_deg = d;
          pick = v;
        }
      }
      const std::uint64_t bit = std::uint64_t{1} << pick;
      run(cand & ~(bit | adj[pick]), cur | bit, cur_size + 1);
      cand &= ~bit;
    }
    if (cur_size > best_size) {
      best_size = cur_size;
      best_set = cur;
    }
  }
};

}  // namespace detail

// adj[v] = neighbor bitmask over local ids 0..n-1 (n <= 64).
inline std::uint64_t max_independent_set_mask(const std::vector<std::uint64_t>& adj) {
  detail::MisSearch s{adj};
  const int n = static_cast<int>(adj.size());
  const std::uint64_t all = n == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
  s.run(all, 0, 0);
  return s.best_set;
}

}  // namespace rgg
