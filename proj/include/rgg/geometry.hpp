#pragma once
// Planar and toroidal primitives: canonical points in [0,1)^2, geodesic
// segment lifts, an exact orientation sign (floating-point filter with an
// error-free expansion fallback), and the crossing / interior-intersection
// predicates built on it.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <span>
#include <utility>
#include <vector>

#include "rgg/errors.hpp"

namespace rgg {

enum class Metric { Square, Torus };

inline const char* metric_name(Metric m) {
  return m == Metric::Square ? "square" : "torus";
}

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

inline bool is_canonical(Point p) {
  return p.x >= 0.0 && p.x < 1.0 && p.y >= 0.0 && p.y < 1.0;
}

// Wrap a real into [0,1).
inline double wrap01(double v) {
  double w = v - std::floor(v);
  if (w >= 1.0) w = 0.0;  // v slightly below an integer can round up
  return w;
}

inline Point wrap01(Point p) { return {wrap01(p.x), wrap01(p.y)}; }

namespace detail {

// Per-axis displacement q - p realizing the torus geodesic, in (-1/2, 1/2].
inline double torus_delta(double from, double to) {
  double d = to - from;
  if (d > 0.5) d -= 1.0;
  else if (d < -0.5) d += 1.0;
  return d;
}

}  // namespace detail

inline double distance_sq(Point p, Point q, Metric m) {
  double dx, dy;
  if (m == Metric::Torus) {
    dx = detail::torus_delta(p.x, q.x);
    dy = detail::torus_delta(p.y, q.y);
  } else {
    dx = q.x - p.x;
    dy = q.y - p.y;
  }
  return dx * dx + dy * dy;
}

inline double distance(Point p, Point q, Metric m) {
  return std::sqrt(distance_sq(p, q, m));
}

// A graph edge as a drawable segment. Under the torus metric `b` is stored
// canonically and (off_x, off_y) is the integer translate whose application
// realizes the geodesic: |a - (b + off)| equals the torus distance.
struct Segment {
  Point a;
  Point b;
  int off_x = 0;
  int off_y = 0;

  Point lifted_b() const { return {b.x + off_x, b.y + off_y}; }
};

inline Segment make_segment(Point a, Point b, Metric m) {
  Segment s{a, b, 0, 0};
  if (m == Metric::Torus) {
    double dx = b.x - a.x;
    double dy = b.y - a.y;
    if (dx > 0.5) s.off_x = -1;
    else if (dx < -0.5) s.off_x = 1;
    if (dy > 0.5) s.off_y = -1;
    else if (dy < -0.5) s.off_y = 1;
  }
  return s;
}

inline double segment_length(const Segment& s) {
  Point b = s.lifted_b();
  double dx = b.x - s.a.x, dy = b.y - s.a.y;
  return std::sqrt(dx * dx + dy * dy);
}

// ---------------------------------------------------------------------------
// Exact orientation sign.
// ---------------------------------------------------------------------------

namespace detail {

inline void two_sum(double a, double b, double& s, double& err) {
  s = a + b;
  double bv = s - a;
  double av = s - bv;
  err = (a - av) + (b - bv);
}

inline void split_double(double a, double& hi, double& lo) {
  constexpr double splitter = 134217729.0;  // 2^27 + 1
  double c = splitter * a;
  hi = c - (c - a);
  lo = a - hi;
}

inline void two_prod(double a, double b, double& p, double& err) {
  p = a * b;
  double ahi, alo, bhi, blo;
  split_double(a, ahi, alo);
  split_double(b, bhi, blo);
  err = ((ahi * bhi - p) + ahi * blo + alo * bhi) + alo * blo;
}

// Nonoverlapping expansion in increasing magnitude order; sign of the sum is
// the sign of the most significant nonzero component.
template <std::size_t N>
class Expansion {
 public:
  void add(double v) {
    std::size_t out = 0;
    double q = v;
    for (std::size_t i = 0; i < size_; ++i) {
      double s, err;
      two_sum(q, comp_[i], s, err);
      if (err != 0.0) comp_[out++] = err;
      q = s;
    }
    comp_[out++] = q;
    size_ = out;
  }

  int sign() const {
    for (std::size_t i = size_; i-- > 0;) {
      if (comp_[i] > 0.0) return 1;
      if (comp_[i] < 0.0) return -1;
    }
    return 0;
  }

 private:
  std::array<double, N> comp_{};
  std::size_t size_ = 0;
};

inline int orient_exact(double ax, double ay, double bx, double by, double cx,
                        double cy) {
  // Sign of ax(by-cy) + bx(cy-ay) + cx(ay-by), expanded into six products.
  const double terms[6][2] = {{ax, by}, {-ax, cy}, {bx, cy},
                              {-bx, ay}, {cx, ay}, {-cx, by}};
  Expansion<16> e;
  for (const auto& t : terms) {
    double p, err;
    two_prod(t[0], t[1], p, err);
    if (err != 0.0) e.add(err);
    if (p != 0.0) e.add(p);
  }
  return e.sign();
}

}  // namespace detail

// Sign of the cross product (b-a) x (c-a): +1 if a,b,c are counterclockwise,
// -1 if clockwise, 0 if collinear. A standard error-bound filter accepts the
// double-precision result; borderline cases fall back to exact expansions, so
// degenerate inputs are decided deterministically.
inline int orient(Point a, Point b, Point c) {
  const double detleft = (a.x - c.x) * (b.y - c.y);
  const double detright = (a.y - c.y) * (b.x - c.x);
  const double det = detleft - detright;

  double detsum;
  if (detleft > 0.0) {
    if (detright <= 0.0) return det > 0.0 ? 1 : (det < 0.0 ? -1 : 0);
    detsum = detleft + detright;
  } else if (detleft < 0.0) {
    if (detright >= 0.0) return det > 0.0 ? 1 : (det < 0.0 ? -1 : 0);
    detsum = -detleft - detright;
  } else {
    return det > 0.0 ? 1 : (det < 0.0 ? -1 : 0);
  }

  constexpr double eps = 1.1102230246251565e-16;  // 2^-53
  constexpr double errbound = (3.0 + 16.0 * eps) * eps;
  if (det >= errbound * detsum || -det >= errbound * detsum)
    return det > 0.0 ? 1 : -1;
  return detail::orient_exact(a.x, a.y, b.x, b.y, c.x, c.y);
}

namespace detail {

// p collinear with segment (a,b) assumed; is p strictly between a and b?
inline bool strictly_between_collinear(Point a, Point b, Point p) {
  if (a.x != b.x) return (a.x < p.x && p.x < b.x) || (b.x < p.x && p.x < a.x);
  return (a.y < p.y && p.y < b.y) || (b.y < p.y && p.y < a.y);
}

struct PlanarPair {
  Point a1, b1;  // first segment, lifted
  Point a2, b2;  // second segment, lifted into the first one's chart
};

// Lift two geodesic segments into one planar chart: each segment's far end is
// unfolded by its stored offset, then the second segment is retranslated so
// that its midpoint lands nearest the first one's midpoint. Valid while both
// segments are shorter than 1/4.
inline PlanarPair lift_pair(const Segment& s1, const Segment& s2, Metric m) {
  PlanarPair p{s1.a, s1.lifted_b(), s2.a, s2.lifted_b()};
  if (m != Metric::Torus) return p;
  const double m1x = 0.5 * (p.a1.x + p.b1.x), m1y = 0.5 * (p.a1.y + p.b1.y);
  const double m2x = 0.5 * (p.a2.x + p.b2.x), m2y = 0.5 * (p.a2.y + p.b2.y);
  double tx = 0.0, ty = 0.0;
  if (m1x - m2x > 0.5) tx = 1.0;
  else if (m1x - m2x < -0.5) tx = -1.0;
  if (m1y - m2y > 0.5) ty = 1.0;
  else if (m1y - m2y < -0.5) ty = -1.0;
  p.a2.x += tx; p.b2.x += tx;
  p.a2.y += ty; p.b2.y += ty;
  return p;
}

inline void require_liftable(const Segment& s, Metric m) {
  if (m == Metric::Torus && segment_length(s) >= 0.25)
    throw TorusRadiusTooLarge("segment too long for unique torus lift");
}

inline bool proper_cross_planar(Point a, Point b, Point c, Point d) {
  const int o1 = orient(a, b, c);
  const int o2 = orient(a, b, d);
  if (o1 * o2 >= 0) return false;
  const int o3 = orient(c, d, a);
  const int o4 = orient(c, d, b);
  return o3 * o4 < 0;
}

// Does (c,d) touch an interior point of (a,b)?
inline bool interior_intersected_planar(Point a, Point b, Point c, Point d) {
  if (proper_cross_planar(a, b, c, d)) return true;
  const int oc = orient(a, b, c);
  const int od = orient(a, b, d);
  if (oc == 0 && strictly_between_collinear(a, b, c)) return true;
  if (od == 0 && strictly_between_collinear(a, b, d)) return true;
  if (oc == 0 && od == 0) {
    // Collinear segments: positive-length 1D overlap reaches into (a,b)'s
    // interior; a shared endpoint alone does not.
    const bool use_x = a.x != b.x;
    double alo = use_x ? std::min(a.x, b.x) : std::min(a.y, b.y);
    double ahi = use_x ? std::max(a.x, b.x) : std::max(a.y, b.y);
    double clo = use_x ? std::min(c.x, d.x) : std::min(c.y, d.y);
    double chi = use_x ? std::max(c.x, d.x) : std::max(c.y, d.y);
    return std::max(alo, clo) < std::min(ahi, chi);
  }
  return false;
}

}  // namespace detail

// True iff the two open segments share a point interior to both. Segments
// meeting only at a shared endpoint, T-junctions, and collinear overlaps are
// not crossings.
inline bool segments_cross(const Segment& s1, const Segment& s2, Metric m) {
  detail::require_liftable(s1, m);
  detail::require_liftable(s2, m);
  const auto p = detail::lift_pair(s1, s2, m);
  return detail::proper_cross_planar(p.a1, p.b1, p.a2, p.b2);
}

// True iff f touches any interior point of e: a proper crossing, an endpoint
// of f inside e's open interior, or a collinear overlap of positive length.
inline bool interior_intersected(const Segment& e, const Segment& f, Metric m) {
  detail::require_liftable(e, m);
  detail::require_liftable(f, m);
  const auto p = detail::lift_pair(e, f, m);
  return detail::interior_intersected_planar(p.a1, p.b1, p.a2, p.b2);
}

// Occupancy of the two open half-disks with diameter uv: (left of u->v,
// right of u->v). Points on the segment's line or on the disk boundary count
// for neither side.
inline std::pair<bool, bool> half_disks_nonempty(Point u, Point v,
                                                 std::span<const Point> others,
                                                 Metric m) {
  const Segment uv = make_segment(u, v, m);
  const Point vl = uv.lifted_b();
  const double cx = 0.5 * (u.x + vl.x), cy = 0.5 * (u.y + vl.y);
  const double diam_sq = distance_sq(u, v, m);

  bool left = false, right = false;
  for (const Point& q : others) {
    double qx = q.x, qy = q.y;
    if (m == Metric::Torus) {
      qx = q.x + (cx - q.x > 0.5 ? 1.0 : (cx - q.x < -0.5 ? -1.0 : 0.0));
      qy = q.y + (cy - q.y > 0.5 ? 1.0 : (cy - q.y < -0.5 ? -1.0 : 0.0));
    }
    const double dx = qx - cx, dy = qy - cy;
    if (4.0 * (dx * dx + dy * dy) >= diam_sq) continue;
    const int side = orient(u, vl, {qx, qy});
    if (side > 0) left = true;
    else if (side < 0) right = true;
    if (left && right) break;
  }
  return {left, right};
}

}  // namespace rgg
