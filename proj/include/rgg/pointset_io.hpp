#pragma once
// Point-set file format, read and written bit-faithfully:
//   rggpts 1 <n> <r> <metric:square|torus>
//   <x> <y>          (n lines, 17 significant digits)

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "rgg/errors.hpp"
#include "rgg/graph.hpp"
#include "rgg/strfmt.hpp"

namespace rgg {

struct PointSet {
  std::vector<Point> points;
  double r = 0.0;
  Metric metric = Metric::Square;
};

inline std::string to_pointset_text(const PointSet& ps) {
  std::ostringstream out;
  out << "rggpts 1 " << ps.points.size() << ' ' << detail::format_g17(ps.r)
      << ' ' << metric_name(ps.metric) << '\n';
  for (const Point& p : ps.points)
    out << detail::format_g17(p.x) << ' ' << detail::format_g17(p.y) << '\n';
  return out.str();
}

inline void write_pointset(const std::string& path, const PointSet& ps) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << to_pointset_text(ps);
  if (!out) throw IoError("write failed: " + path);
}

inline PointSet parse_pointset(std::istream& in, const std::string& origin) {
  std::string magic;
  int version = 0;
  std::size_t n = 0;
  PointSet ps;
  std::string metric;
  if (!(in >> magic >> version >> n >> ps.r >> metric) || magic != "rggpts")
    throw FormatError("bad point-set header in " + origin);
  if (version != 1) throw FormatError("unsupported point-set version in " + origin);
  if (metric == "square") ps.metric = Metric::Square;
  else if (metric == "torus") ps.metric = Metric::Torus;
  else throw FormatError("unknown metric '" + metric + "' in " + origin);

  ps.points.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(in >> ps.points[i].x >> ps.points[i].y))
      throw FormatError("truncated point list in " + origin);
    if (!is_canonical(ps.points[i]))
      throw FormatError("point outside [0,1)^2 in " + origin);
  }
  return ps;
}

inline PointSet read_pointset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open for reading: " + path);
  return parse_pointset(in, path);
}

inline RggGraph load_graph(const std::string& path) {
  PointSet ps = read_pointset(path);
  return from_points(std::move(ps.points), ps.r, ps.metric);
}

}  // namespace rgg
