// Copyright 2026 The Streamdet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <vector>

#include "streamdet/error.hpp"

namespace streamdet {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Tolerances shared across the geometry routines.
inline constexpr double kVertexMergeEps = 1e-9;   // clip vertices closer than this collapse
inline constexpr double kAreaEps = 1e-12;         // intersections below this count as empty
inline constexpr double kExtentFloor = 0.05;      // minimum box extent in meters
inline constexpr double kContainsTol = 1e-6;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(Vec2 a, double s) { return {a.x * s, a.y * s}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::sqrt(a.x * a.x + a.y * a.y); }

// Wraps an angle to [-pi, pi).
inline double normalize_heading(double h) {
  return h - kTwoPi * std::floor(h / kTwoPi + 0.5);
}

// Wraps an angle to [-pi/2, pi/2); headings are only meaningful mod pi.
inline double normalize_heading_mod_pi(double h) {
  return h - kPi * std::floor(h / kPi + 0.5);
}

// A 7-DoF upright box: center, extents, and yaw about +z.
struct OrientedBox {
  double cx = 0.0;
  double cy = 0.0;
  double cz = 0.0;
  double length = 0.0;  // extent along the heading direction
  double width = 0.0;
  double height = 0.0;
  double heading = 0.0;  // radians in [-pi, pi)
};

inline void validate_box(const OrientedBox& b) {
  if (!(b.length > 0.0) || !(b.width > 0.0) || !(b.height > 0.0)) {
    throw InvalidInput("box extents must be positive");
  }
  if (!(b.heading >= -kPi) || !(b.heading < kPi)) {
    throw InvalidInput("box heading must lie in [-pi, pi)");
  }
  if (!std::isfinite(b.cx) || !std::isfinite(b.cy) || !std::isfinite(b.cz)) {
    throw InvalidInput("box center must be finite");
  }
}

// The planar part of a box. Canonical form keeps length >= width and the
// heading along the longer side in [-pi/2, pi/2).
struct Footprint {
  double cx = 0.0;
  double cy = 0.0;
  double length = 0.0;
  double width = 0.0;
  double heading = 0.0;
};

inline Footprint footprint_of(const OrientedBox& b) {
  return {b.cx, b.cy, b.length, b.width, b.heading};
}

inline OrientedBox footprint_to_box(const Footprint& f, double cz, double height) {
  return {f.cx, f.cy, cz, f.length, f.width, height, normalize_heading(f.heading)};
}

inline Footprint canonical_footprint(Footprint f) {
  if (f.width > f.length) {
    std::swap(f.length, f.width);
    f.heading += kPi / 2.0;
  }
  f.heading = normalize_heading_mod_pi(f.heading);
  return f;
}

// Convex polygon with counter-clockwise vertices.
struct ConvexPolygon {
  std::vector<Vec2> vertices;
};

inline ConvexPolygon footprint_to_polygon(const Footprint& f) {
  const double c = std::cos(f.heading);
  const double s = std::sin(f.heading);
  const double hl = f.length / 2.0;
  const double hw = f.width / 2.0;
  // Corner order (+l,-w), (+l,+w), (-l,+w), (-l,-w) is counter-clockwise.
  const double lx[4] = {hl, hl, -hl, -hl};
  const double wy[4] = {-hw, hw, hw, -hw};
  ConvexPolygon p;
  p.vertices.reserve(4);
  for (int i = 0; i < 4; ++i) {
    p.vertices.push_back(
        {f.cx + c * lx[i] - s * wy[i], f.cy + s * lx[i] + c * wy[i]});
  }
  return p;
}

inline ConvexPolygon box_to_polygon(const OrientedBox& b) {
  return footprint_to_polygon(footprint_of(b));
}

// Shoelace area; zero for degenerate polygons.
inline double polygon_area(const ConvexPolygon& p) {
  const auto& v = p.vertices;
  if (v.size() < 3) return 0.0;
  double s = 0.0;
  for (size_t i = 0, j = v.size() - 1; i < v.size(); j = i++) {
    s += cross(v[j], v[i]);
  }
  return std::max(0.0, 0.5 * s);
}

namespace detail {

// Clips a polygon by the half-plane left of the directed line p -> q.
inline std::vector<Vec2> clip_half_plane(const std::vector<Vec2>& poly, Vec2 p, Vec2 q) {
  std::vector<Vec2> out;
  out.reserve(poly.size() + 1);
  const Vec2 d = q - p;
  for (size_t i = 0; i < poly.size(); ++i) {
    const Vec2 cur = poly[i];
    const Vec2 nxt = poly[(i + 1) % poly.size()];
    const double dc = cross(d, cur - p);
    const double dn = cross(d, nxt - p);
    if (dc >= 0.0) {
      out.push_back(cur);
      if (dn < 0.0) out.push_back(cur + (nxt - cur) * (dc / (dc - dn)));
    } else if (dn >= 0.0) {
      out.push_back(cur + (nxt - cur) * (dc / (dc - dn)));
    }
  }
  return out;
}

inline std::vector<Vec2> merge_close_vertices(const std::vector<Vec2>& poly) {
  std::vector<Vec2> out;
  out.reserve(poly.size());
  for (const Vec2& v : poly) {
    if (out.empty() || norm(v - out.back()) > kVertexMergeEps) out.push_back(v);
  }
  while (out.size() > 1 && norm(out.front() - out.back()) <= kVertexMergeEps) {
    out.pop_back();
  }
  return out;
}

}  // namespace detail

// Intersection of two convex polygons via successive half-plane cuts.
// Degenerate results (area below kAreaEps) come back empty, so boxes that
// merely touch along an edge intersect to nothing.
inline ConvexPolygon convex_intersect(const ConvexPolygon& a, const ConvexPolygon& b) {
  if (a.vertices.size() < 3 || b.vertices.size() < 3) return {};
  std::vector<Vec2> poly = a.vertices;
  const auto& clip = b.vertices;
  for (size_t i = 0, j = clip.size() - 1; i < clip.size() && !poly.empty(); j = i++) {
    poly = detail::clip_half_plane(poly, clip[j], clip[i]);
  }
  poly = detail::merge_close_vertices(poly);
  ConvexPolygon result{std::move(poly)};
  if (result.vertices.size() < 3 || polygon_area(result) < kAreaEps) return {};
  return result;
}

inline bool same_footprint_params(const Footprint& a, const Footprint& b) {
  return a.cx == b.cx && a.cy == b.cy && a.length == b.length &&
         a.width == b.width && a.heading == b.heading;
}

inline double footprint_iou(const Footprint& a, const Footprint& b) {
  if (same_footprint_params(a, b)) return 1.0;
  const ConvexPolygon pa = footprint_to_polygon(a);
  const ConvexPolygon pb = footprint_to_polygon(b);
  const double inter = polygon_area(convex_intersect(pa, pb));
  if (inter <= 0.0) return 0.0;
  const double ua = polygon_area(pa) + polygon_area(pb) - inter;
  if (ua <= 0.0) return 0.0;
  return std::clamp(inter / ua, 0.0, 1.0);
}

// Bird's-eye-view IoU of two boxes.
inline double iou_bev(const OrientedBox& a, const OrientedBox& b) {
  return footprint_iou(footprint_of(a), footprint_of(b));
}

// 3-D IoU: BEV intersection area times vertical interval overlap.
inline double iou_3d(const OrientedBox& a, const OrientedBox& b) {
  if (a.cx == b.cx && a.cy == b.cy && a.cz == b.cz && a.length == b.length &&
      a.width == b.width && a.height == b.height && a.heading == b.heading) {
    return 1.0;
  }
  const double zlo = std::max(a.cz - a.height / 2.0, b.cz - b.height / 2.0);
  const double zhi = std::min(a.cz + a.height / 2.0, b.cz + b.height / 2.0);
  const double dz = zhi - zlo;
  if (dz <= 0.0) return 0.0;
  const ConvexPolygon pa = box_to_polygon(a);
  const ConvexPolygon pb = box_to_polygon(b);
  const double inter_area = polygon_area(convex_intersect(pa, pb));
  if (inter_area <= 0.0) return 0.0;
  const double inter = inter_area * dz;
  const double va = a.length * a.width * a.height;
  const double vb = b.length * b.width * b.height;
  const double uv = va + vb - inter;
  if (uv <= 0.0) return 0.0;
  return std::clamp(inter / uv, 0.0, 1.0);
}

// Convex hull (monotone chain). Collinear interior points are excluded, so
// the result is strictly convex; collinear input degenerates to 2 vertices
// and a single repeated point to 1.
inline ConvexPolygon convex_hull(std::vector<Vec2> pts) {
  if (pts.empty()) throw InvalidInput("convex_hull requires at least one point");
  std::sort(pts.begin(), pts.end(), [](const Vec2& a, const Vec2& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const Vec2& a, const Vec2& b) {
                          return a.x == b.x && a.y == b.y;
                        }),
            pts.end());
  const size_t n = pts.size();
  if (n <= 2) return {std::move(pts)};
  std::vector<Vec2> h(2 * n);
  size_t k = 0;
  for (size_t i = 0; i < n; ++i) {  // lower hull
    while (k >= 2 && cross(h[k - 1] - h[k - 2], pts[i] - h[k - 2]) <= 0.0) --k;
    h[k++] = pts[i];
  }
  for (size_t i = n - 1, t = k + 1; i-- > 0;) {  // upper hull
    while (k >= t && cross(h[k - 1] - h[k - 2], pts[i] - h[k - 2]) <= 0.0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return {std::move(h)};
}

// Minimum-area enclosing rectangle of a convex hull. The optimum is aligned
// with some hull edge, so enumerating edges suffices. Extents are floored at
// kExtentFloor and the result is canonical (length >= width, heading along
// the longer side in [-pi/2, pi/2)).
inline Footprint min_area_rect(const ConvexPolygon& hull) {
  const auto& v = hull.vertices;
  if (v.empty()) throw InvalidInput("min_area_rect requires a non-empty hull");
  if (v.size() == 1) {
    return {v[0].x, v[0].y, kExtentFloor, kExtentFloor, 0.0};
  }
  if (v.size() == 2) {
    const Vec2 d = v[1] - v[0];
    Footprint f{(v[0].x + v[1].x) / 2.0, (v[0].y + v[1].y) / 2.0,
                std::max(norm(d), kExtentFloor), kExtentFloor,
                std::atan2(d.y, d.x)};
    return canonical_footprint(f);
  }
  double best_area = std::numeric_limits<double>::infinity();
  Footprint best{};
  for (size_t i = 0, j = v.size() - 1; i < v.size(); j = i++) {
    const Vec2 e = v[i] - v[j];
    const double len = norm(e);
    if (len <= kVertexMergeEps) continue;
    const Vec2 u{e.x / len, e.y / len};
    const Vec2 w{-u.y, u.x};
    double ulo = std::numeric_limits<double>::infinity(), uhi = -ulo;
    double wlo = ulo, whi = -ulo;
    for (const Vec2& p : v) {
      const Vec2 r = p - v[j];
      const double su = dot(r, u);
      const double sw = dot(r, w);
      ulo = std::min(ulo, su);
      uhi = std::max(uhi, su);
      wlo = std::min(wlo, sw);
      whi = std::max(whi, sw);
    }
    const double eu = std::max(uhi - ulo, kExtentFloor);
    const double ew = std::max(whi - wlo, kExtentFloor);
    const double area = eu * ew;
    if (area < best_area) {
      best_area = area;
      const Vec2 center =
          v[j] + u * ((ulo + uhi) / 2.0) + w * ((wlo + whi) / 2.0);
      best = Footprint{center.x, center.y, eu, ew, std::atan2(u.y, u.x)};
    }
  }
  return canonical_footprint(best);
}

inline bool polygon_contains(const ConvexPolygon& poly, Vec2 p, double tol = kContainsTol) {
  const auto& v = poly.vertices;
  if (v.size() < 3) return false;
  for (size_t i = 0, j = v.size() - 1; i < v.size(); j = i++) {
    if (cross(v[i] - v[j], p - v[j]) < -tol) return false;
  }
  return true;
}

inline double point_segment_distance(Vec2 p, Vec2 a, Vec2 b) {
  const Vec2 ab = b - a;
  const double len2 = dot(ab, ab);
  double t = len2 > 0.0 ? dot(p - a, ab) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  const Vec2 c{a.x + ab.x * t, a.y + ab.y * t};
  return norm(p - c);
}

// True when segments ab and cd share at least one point (touching counts).
inline bool segments_intersect(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
  auto orient = [](Vec2 p, Vec2 q, Vec2 r) {
    const double v = cross(q - p, r - p);
    return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0);
  };
  auto on_segment = [](Vec2 p, Vec2 q, Vec2 r) {
    return std::min(p.x, r.x) <= q.x && q.x <= std::max(p.x, r.x) &&
           std::min(p.y, r.y) <= q.y && q.y <= std::max(p.y, r.y);
  };
  const int o1 = orient(a, b, c);
  const int o2 = orient(a, b, d);
  const int o3 = orient(c, d, a);
  const int o4 = orient(c, d, b);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(a, c, b)) return true;
  if (o2 == 0 && on_segment(a, d, b)) return true;
  if (o3 == 0 && on_segment(c, a, d)) return true;
  if (o4 == 0 && on_segment(c, b, d)) return true;
  return false;
}

// Minimum planar distance between two convex polygons; 0 when they overlap
// or touch.
inline double polygon_distance(const ConvexPolygon& a, const ConvexPolygon& b) {
  const auto& va = a.vertices;
  const auto& vb = b.vertices;
  if (va.empty() || vb.empty()) throw InvalidInput("polygon_distance on empty polygon");
  for (size_t i = 0, pi = va.size() - 1; i < va.size(); pi = i++) {
    for (size_t j = 0, pj = vb.size() - 1; j < vb.size(); pj = j++) {
      if (va.size() > 1 && vb.size() > 1 &&
          segments_intersect(va[pi], va[i], vb[pj], vb[j])) {
        return 0.0;
      }
    }
  }
  if (polygon_contains(a, vb[0]) || polygon_contains(b, va[0])) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  for (const Vec2& p : va) {
    for (size_t j = 0, pj = vb.size() - 1; j < vb.size(); pj = j++) {
      best = std::min(best, point_segment_distance(p, vb[pj], vb[j]));
    }
  }
  for (const Vec2& p : vb) {
    for (size_t i = 0, pi = va.size() - 1; i < va.size(); pi = i++) {
      best = std::min(best, point_segment_distance(p, va[pi], va[i]));
    }
  }
  return best;
}

}  // namespace streamdet
