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
#include <cstdint>
#include <limits>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "streamdet/error.hpp"
#include "streamdet/geometry.hpp"
#include "streamdet/scene.hpp"
#include "streamdet/sensor.hpp"

namespace streamdet {

struct Detection {
  OrientedBox box;
  double score = 0.0;
  ObjectClass cls = ObjectClass::kVehicle;
  int slice_index = -1;  // -1 for full-scan detections
};

enum class DetectorMode { kStateless, kCarry };

struct DetectorConfig {
  double eps_m = 0.7;            // single-link clustering distance in x-y
  int min_points = 5;            // clusters below this are not fitted
  double boundary_band_m = 0.3;  // arc length that counts as touching a boundary
  double boundary_band_rad = 0.0075;  // cut band, one column pitch of angle;
                                      // also floors the carry band's arc test
  double score_tau = 20.0;       // score = 1 - exp(-points/tau)

  double pedestrian_max_dim_m = 1.5;  // footprint max dimension for the class split
  // A cluster truncated by a slice cut is called a pedestrian only when it is
  // small enough to be a piece of one; larger fragments are read as truncated
  // vehicles.
  double truncated_pedestrian_max_dim_m = 0.45;

  // Class-prior completion. A LiDAR cluster covers only the faces toward the
  // sensor, and a wedge cluster additionally stops at the slice cut, so raw
  // min-area fits under-estimate extent. Completion stretches deficient boxes
  // up to a class-typical size: away from the sensor for sliver fits, and
  // across an interior slice boundary for clusters that touch one. The latter
  // is what makes detections from adjacent slices overlap on the same object,
  // which stateful NMS then resolves.
  bool class_prior_completion = true;
  double vehicle_length_prior_m = 4.75;
  double vehicle_width_prior_m = 2.0;
  double vehicle_long_face_min_m = 2.6;  // face length that pins the long axis
  double pedestrian_extent_prior_m = 0.7;
  double depth_sliver_ratio = 0.6;  // depth/tangent ratio below which a fit is a sliver
  // Emit the perpendicular completion as a second detection for cut fragments
  // whose reading is ambiguous (no face of vehicle_long_face_min_m).
  bool emit_alt_hypothesis = false;
};

// Which interior wedge boundaries a cluster touches, if any.
struct BoundaryContext {
  bool cut_low = false;
  bool cut_high = false;
  bool carried = false;  // cluster was held at a cut and may join partial views
  double low_azimuth = 0.0;
  double high_azimuth = 0.0;
};

// Clusters carried across a slice boundary, waiting for their continuation.
struct CarryState {
  std::vector<std::vector<Point>> open_clusters;
  int last_index = -1;  // last slice consumed; -1 before the first slice
  int n = 0;            // slice count of the scan in progress
};

// Single-link Euclidean clustering in the x-y plane: points at most eps apart
// are connected. Returns clusters as index lists, ordered by minimum point
// index, members ascending. Grid hashing keeps it near-linear.
inline std::vector<std::vector<int>> cluster_points(const std::vector<Point>& pts,
                                                    double eps) {
  if (!(eps > 0.0)) throw InvalidInput("clustering eps must be positive");
  const int n = int(pts.size());
  std::vector<int> parent(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) parent[size_t(i)] = i;
  auto find = [&](int a) {
    while (parent[size_t(a)] != a) {
      parent[size_t(a)] = parent[size_t(parent[size_t(a)])];
      a = parent[size_t(a)];
    }
    return a;
  };
  auto unite = [&](int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[size_t(std::max(a, b))] = std::min(a, b);
  };

  std::unordered_map<uint64_t, std::vector<int>> grid;
  grid.reserve(size_t(n) * 2);
  const double inv = 1.0 / eps;
  const double eps2 = eps * eps;
  auto cell_key = [](int64_t cx, int64_t cy) {
    return (uint64_t(uint32_t(cx)) << 32) | uint64_t(uint32_t(cy));
  };
  for (int i = 0; i < n; ++i) {
    const int64_t cx = int64_t(std::floor(pts[size_t(i)].x * inv));
    const int64_t cy = int64_t(std::floor(pts[size_t(i)].y * inv));
    for (int64_t ax = cx - 1; ax <= cx + 1; ++ax) {
      for (int64_t ay = cy - 1; ay <= cy + 1; ++ay) {
        auto it = grid.find(cell_key(ax, ay));
        if (it == grid.end()) continue;
        for (int j : it->second) {
          const double ddx = pts[size_t(i)].x - pts[size_t(j)].x;
          const double ddy = pts[size_t(i)].y - pts[size_t(j)].y;
          if (ddx * ddx + ddy * ddy <= eps2) unite(i, j);
        }
      }
    }
    grid[cell_key(cx, cy)].push_back(i);
  }

  std::vector<std::vector<int>> clusters;
  std::unordered_map<int, int> root_to_cluster;
  for (int i = 0; i < n; ++i) {
    const int r = find(i);
    auto it = root_to_cluster.find(r);
    if (it == root_to_cluster.end()) {
      root_to_cluster.emplace(r, int(clusters.size()));
      clusters.push_back({i});
    } else {
      clusters[size_t(it->second)].push_back(i);
    }
  }
  return clusters;
}

inline ObjectClass classify_footprint(const Footprint& f, const DetectorConfig& cfg,
                                      bool truncated = false) {
  const double ped_max = truncated ? cfg.truncated_pedestrian_max_dim_m
                                   : cfg.pedestrian_max_dim_m;
  return std::max(f.length, f.width) <= ped_max ? ObjectClass::kPedestrian
                                                : ObjectClass::kVehicle;
}

namespace detail {

inline double range_xy(const Point& p) { return std::hypot(p.x, p.y); }

// A cluster touches a boundary ray when some point is within the band of it,
// measured as arc length at the point's range with an angular floor so that
// sparse long-range columns still register. Used for carrying clusters across
// slices, where the band must stay near the clustering scale.
inline bool touches_boundary(const std::vector<Point>& pts, double boundary_az,
                             const DetectorConfig& cfg) {
  for (const Point& p : pts) {
    const double gap = std::abs(normalize_heading(p.azimuth - boundary_az));
    if (gap * range_xy(p) <= cfg.boundary_band_m || gap <= cfg.boundary_band_rad) {
      return true;
    }
  }
  return false;
}

// A cluster counts as truncated by a cut only when a point sits within the
// cut's angular band. Column spacing is angular, so the nearest column of a
// truly cut object lies within one pitch of the ray at any range, while an
// arc-length band would sweep in whole nearby objects at close range.
inline bool at_cut(const std::vector<Point>& pts, double cut_az,
                   const DetectorConfig& cfg) {
  for (const Point& p : pts) {
    if (std::abs(normalize_heading(p.azimuth - cut_az)) <= cfg.boundary_band_rad) {
      return true;
    }
  }
  return false;
}

// Oriented bounding rectangle whose sides pass closest to the cluster points.
// A cluster at a cut often shows two partial faces meeting at a corner; the
// minimum-area rectangle brackets such an L shape diagonally, while the
// closest-sides rectangle lands on the faces themselves, so fragments of one
// object agree on orientation across slices.
inline Footprint face_aligned_rect(const std::vector<Vec2>& pts) {
  const ConvexPolygon hull = convex_hull(pts);
  const auto& v = hull.vertices;
  if (v.size() < 3) return min_area_rect(hull);
  std::vector<Vec2> ordered = pts;  // canonical order, result must not depend
  std::sort(ordered.begin(), ordered.end(), [](const Vec2& a, const Vec2& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  double best_cost = std::numeric_limits<double>::infinity();
  Footprint best{};
  bool found = false;
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
      ulo = std::min(ulo, dot(r, u));
      uhi = std::max(uhi, dot(r, u));
      wlo = std::min(wlo, dot(r, w));
      whi = std::max(whi, dot(r, w));
    }
    double cost = 0.0;
    for (const Vec2& p : ordered) {
      const Vec2 r = p - v[j];
      const double su = dot(r, u);
      const double sw = dot(r, w);
      cost += std::min(std::min(su - ulo, uhi - su), std::min(sw - wlo, whi - sw));
    }
    if (!found || cost < best_cost) {
      found = true;
      best_cost = cost;
      const Vec2 center = v[j] + u * ((ulo + uhi) / 2.0) + w * ((wlo + whi) / 2.0);
      best = Footprint{center.x, center.y, std::max(uhi - ulo, kExtentFloor),
                       std::max(whi - wlo, kExtentFloor), std::atan2(u.y, u.x)};
    }
  }
  if (!found) return min_area_rect(hull);
  return canonical_footprint(best);
}

struct Axis {
  Vec2 dir;
  double extent;
  bool is_length;  // refers to footprint.length rather than .width
};

inline void write_axis(Footprint& f, const Axis& a, double new_extent, double shift) {
  if (a.is_length) {
    f.length = new_extent;
  } else {
    f.width = new_extent;
  }
  f.cx += a.dir.x * shift;
  f.cy += a.dir.y * shift;
}

// Grows one axis of the footprint to `prior` if deficient. side > 0 extends
// past the axis-positive end, side < 0 the other end, side == 0 both equally.
inline void extend_axis(Footprint& f, const Axis& a, double prior, int side) {
  const double d = prior - a.extent;
  if (d <= 0.0) return;
  write_axis(f, a, prior, side == 0 ? 0.0 : double(side) * d / 2.0);
}

inline Footprint complete_footprint(Footprint f, ObjectClass cls,
                                    const BoundaryContext& ctx,
                                    const DetectorConfig& cfg,
                                    bool swap_priors = false) {
  const double cr = std::hypot(f.cx, f.cy);
  if (cr < 1e-9) return f;
  const Vec2 radial{f.cx / cr, f.cy / cr};
  const Vec2 u{std::cos(f.heading), std::sin(f.heading)};
  const Vec2 v{-u.y, u.x};
  Axis au{u, f.length, true};
  Axis av{v, f.width, false};
  // The axis more aligned with the line of sight is the depth axis; the other
  // runs tangentially, the direction a slice cut truncates.
  const bool u_is_depth = std::abs(dot(u, radial)) >= std::abs(dot(v, radial));
  Axis depth = u_is_depth ? au : av;
  Axis tangent = u_is_depth ? av : au;

  const bool ped = cls == ObjectClass::kPedestrian;
  if (ctx.cut_low || ctx.cut_high) {
    // Boundary completion: one axis is read as the object's long axis and
    // grown to the length prior, the other to the width prior. A face at
    // least vehicle_long_face_min_m long can only be a vehicle's side, which
    // pins the reading; shorter fragments default to reading the tangential
    // axis as the side, and swap_priors selects the perpendicular reading.
    Axis a = tangent, b = depth;
    if (std::max(au.extent, av.extent) >= cfg.vehicle_long_face_min_m) {
      a = au.extent >= av.extent ? au : av;
      b = au.extent >= av.extent ? av : au;
    }
    if (swap_priors) std::swap(a, b);
    double prior_a = cfg.vehicle_length_prior_m;
    double prior_b = cfg.vehicle_width_prior_m;
    if (ped) prior_a = prior_b = cfg.pedestrian_extent_prior_m;

    // Growth direction per axis. A cut hides geometry across the cut ray while
    // occlusion hides it behind the visible faces, so a radial-leaning axis
    // grows away from the sensor and a tangential-leaning one grows back
    // across the cut. The visible far end anchors the box in both cases.
    const auto growth_side = [&](const Axis& ax) {
      const Vec2 tang{-radial.y, radial.x};
      if (std::abs(dot(ax.dir, radial)) >= std::abs(dot(ax.dir, tang))) {
        return dot(ax.dir, radial) >= 0.0 ? 1 : -1;
      }
      if (ctx.cut_low && ctx.cut_high) return 0;
      const Vec2 pos{f.cx + ax.dir.x * ax.extent / 2.0,
                     f.cy + ax.dir.y * ax.extent / 2.0};
      const Vec2 neg{f.cx - ax.dir.x * ax.extent / 2.0,
                     f.cy - ax.dir.y * ax.extent / 2.0};
      const double cut_az = ctx.cut_low ? ctx.low_azimuth : ctx.high_azimuth;
      const double dpos = std::abs(normalize_heading(std::atan2(pos.y, pos.x) - cut_az));
      const double dneg = std::abs(normalize_heading(std::atan2(neg.y, neg.x) - cut_az));
      return dpos <= dneg ? 1 : -1;  // grow the end nearer the cut
    };
    extend_axis(f, a, prior_a, growth_side(a));
    extend_axis(f, b, prior_b, growth_side(b));
  } else if (depth.extent < cfg.depth_sliver_ratio * tangent.extent) {
    // Sliver fit of an unbroken cluster: only the near face(s) were seen, so
    // the body continues away from the sensor.
    double prior_d;
    if (ped) {
      prior_d = cfg.pedestrian_extent_prior_m;
    } else {
      prior_d = tangent.extent >= cfg.vehicle_long_face_min_m
                    ? cfg.vehicle_width_prior_m
                    : cfg.vehicle_length_prior_m;
    }
    extend_axis(f, depth, prior_d, dot(depth.dir, radial) >= 0.0 ? 1 : -1);
  }
  return canonical_footprint(f);
}

}  // namespace detail

// Fits an upright box to a cluster: min-area rectangle of the planar convex
// hull for the footprint (extents floored), z center and height from the
// cluster's z extent, score saturating in the point count. Returns nothing
// for clusters below min_points. With completion enabled, clusters involved
// with a cut are refit to their face orientation before the priors apply.
inline std::optional<Detection> fit_box(const std::vector<Point>& cluster,
                                        ObjectClass cls, const DetectorConfig& cfg,
                                        const BoundaryContext& ctx = {}) {
  if (int(cluster.size()) < cfg.min_points) return std::nullopt;
  std::vector<Vec2> xy;
  xy.reserve(cluster.size());
  double zlo = cluster.front().z, zhi = cluster.front().z;
  for (const Point& p : cluster) {
    xy.push_back({p.x, p.y});
    zlo = std::min(zlo, p.z);
    zhi = std::max(zhi, p.z);
  }
  const bool at_cut = ctx.cut_low || ctx.cut_high || ctx.carried;
  Footprint rect = cfg.class_prior_completion && at_cut
                       ? detail::face_aligned_rect(xy)
                       : min_area_rect(convex_hull(std::move(xy)));
  if (cfg.class_prior_completion) {
    rect = detail::complete_footprint(rect, cls, ctx, cfg);
  }
  Detection det;
  det.box = footprint_to_box(rect, (zlo + zhi) / 2.0, std::max(zhi - zlo, kExtentFloor));
  det.score = 1.0 - std::exp(-double(cluster.size()) / cfg.score_tau);
  det.cls = cls;
  return det;
}

namespace detail {

// Second completion hypothesis for an ambiguous cut fragment. A fragment with
// no face of vehicle_long_face_min_m could be a piece of a vehicle's side or
// of its end, and the two readings complete along perpendicular axes.
// Emitting both lets cross-slice suppression keep whichever reading the
// neighboring fragment agrees with.
inline std::optional<Detection> alt_cut_hypothesis(
    const std::vector<Point>& cluster, ObjectClass cls,
    const DetectorConfig& cfg, const BoundaryContext& ctx) {
  if (!cfg.class_prior_completion || cls != ObjectClass::kVehicle) {
    return std::nullopt;
  }
  if (!ctx.cut_low && !ctx.cut_high) return std::nullopt;
  if (int(cluster.size()) < cfg.min_points) return std::nullopt;
  std::vector<Vec2> xy;
  xy.reserve(cluster.size());
  double zlo = cluster.front().z, zhi = cluster.front().z;
  for (const Point& p : cluster) {
    xy.push_back({p.x, p.y});
    zlo = std::min(zlo, p.z);
    zhi = std::max(zhi, p.z);
  }
  const Footprint pre = face_aligned_rect(xy);
  if (std::max(pre.length, pre.width) >= cfg.vehicle_long_face_min_m) {
    return std::nullopt;  // a full-length face pins the reading
  }
  const Footprint rect = complete_footprint(pre, cls, ctx, cfg, true);
  Detection det;
  det.box = footprint_to_box(rect, (zlo + zhi) / 2.0,
                             std::max(zhi - zlo, kExtentFloor));
  det.score = 1.0 - std::exp(-double(cluster.size()) / cfg.score_tau);
  det.cls = cls;
  return det;
}

inline void check_slice_order(const Wedge& wedge, const CarryState& state) {
  const int n = wedge.spec.n;
  const int index = wedge.spec.index;
  if (n < 1 || index < 0 || index >= n) throw InvalidInput("bad slice spec");
  if (state.last_index < 0) {
    if (index != 0) {
      throw ContractViolation("slice sequence must start at 0");
    }
  } else {
    if (state.n != n) throw ContractViolation("slice count changed mid-scan");
    if (index != state.last_index + 1) {
      throw ContractViolation("slices must be presented in order");
    }
  }
}

inline double min_cluster_gap_sq(const std::vector<Point>& a,
                                 const std::vector<Point>& b) {
  double best = std::numeric_limits<double>::infinity();
  for (const Point& p : a) {
    for (const Point& q : b) {
      const double dx = p.x - q.x;
      const double dy = p.y - q.y;
      best = std::min(best, dx * dx + dy * dy);
    }
  }
  return best;
}

}  // namespace detail

// Processes one wedge of the scan. Stateless mode clusters and fits only this
// wedge's points (boundary completion marks clusters that touch an interior
// cut). Carry mode instead holds clusters that touch the upcoming boundary
// and merges them with their continuation in the next slice, emitting each
// object once with its merged points; the final slice flushes. Slices must
// arrive in order 0..n-1 with the state threaded through.
inline std::pair<std::vector<Detection>, CarryState> detect_slice(
    const Wedge& wedge, CarryState state, const DetectorConfig& cfg,
    DetectorMode mode) {
  detail::check_slice_order(wedge, state);
  const int n = wedge.spec.n;
  const int index = wedge.spec.index;
  const auto [low_az, high_az] = wedge_bounds(n, index);
  const bool interior_low = index > 0;
  const bool interior_high = index < n - 1;

  const auto groups = cluster_points(wedge.points, cfg.eps_m);
  std::vector<std::vector<Point>> clusters;
  clusters.reserve(groups.size());
  for (const auto& g : groups) {
    std::vector<Point> c;
    c.reserve(g.size());
    for (int i : g) c.push_back(wedge.points[size_t(i)]);
    clusters.push_back(std::move(c));
  }

  std::vector<Detection> out;
  CarryState next;
  next.last_index = index;
  next.n = n;

  if (mode == DetectorMode::kStateless) {
    for (const auto& c : clusters) {
      if (int(c.size()) < cfg.min_points) continue;
      BoundaryContext ctx;
      ctx.low_azimuth = low_az;
      ctx.high_azimuth = high_az;
      ctx.cut_low = interior_low && detail::at_cut(c, low_az, cfg);
      ctx.cut_high = interior_high && detail::at_cut(c, high_az, cfg);
      std::vector<Vec2> xy;
      xy.reserve(c.size());
      for (const Point& p : c) xy.push_back({p.x, p.y});
      const bool truncated = ctx.cut_low || ctx.cut_high;
      const Footprint pre = cfg.class_prior_completion && truncated
                                ? detail::face_aligned_rect(xy)
                                : min_area_rect(convex_hull(std::move(xy)));
      const ObjectClass cls = classify_footprint(pre, cfg, truncated);
      if (auto det = fit_box(c, cls, cfg, ctx)) {
        det->slice_index = index;
        out.push_back(*det);
        if (cfg.emit_alt_hypothesis) {
          if (auto alt = detail::alt_cut_hypothesis(c, cls, cfg, ctx)) {
            alt->slice_index = index;
            out.push_back(*alt);
          }
        }
      }
    }
    next.open_clusters = std::move(state.open_clusters);  // passes through unchanged
    return {std::move(out), std::move(next)};
  }

  // Carry mode. An empty wedge brings no evidence either way, so carried
  // clusters stay open unless this is the final slice (which always flushes).
  if (wedge.points.empty() && interior_high) {
    next.open_clusters = std::move(state.open_clusters);
    return {std::move(out), std::move(next)};
  }

  // Merge carried clusters with new clusters that touch the shared boundary
  // and come within clustering distance.
  const size_t n_carried = state.open_clusters.size();
  std::vector<std::vector<Point>> pool = std::move(state.open_clusters);
  std::vector<bool> new_touches_low(clusters.size(), false);
  for (size_t j = 0; j < clusters.size(); ++j) {
    if (interior_low) {
      new_touches_low[j] = detail::touches_boundary(clusters[j], low_az, cfg);
    }
    pool.push_back(std::move(clusters[j]));
  }
  std::vector<int> owner(pool.size());
  for (size_t i = 0; i < pool.size(); ++i) owner[i] = int(i);
  auto find = [&](int a) {
    while (owner[size_t(a)] != a) {
      owner[size_t(a)] = owner[size_t(owner[size_t(a)])];
      a = owner[size_t(a)];
    }
    return a;
  };
  const double eps2 = cfg.eps_m * cfg.eps_m;
  for (size_t i = 0; i < n_carried; ++i) {
    for (size_t j = n_carried; j < pool.size(); ++j) {
      if (!new_touches_low[j - n_carried]) continue;
      if (detail::min_cluster_gap_sq(pool[i], pool[j]) <= eps2) {
        const int a = find(int(i));
        const int b = find(int(j));
        if (a != b) owner[size_t(std::max(a, b))] = std::min(a, b);
      }
    }
  }
  std::vector<std::vector<Point>> merged;
  std::vector<char> from_carry;
  std::unordered_map<int, int> root_to_merged;
  for (size_t i = 0; i < pool.size(); ++i) {
    const int r = find(int(i));
    auto it = root_to_merged.find(r);
    if (it == root_to_merged.end()) {
      root_to_merged.emplace(r, int(merged.size()));
      merged.push_back(std::move(pool[i]));
      from_carry.push_back(i < n_carried ? 1 : 0);
    } else {
      auto& dst = merged[size_t(it->second)];
      dst.insert(dst.end(), pool[i].begin(), pool[i].end());
      if (i < n_carried) from_carry[size_t(it->second)] = 1;
    }
  }

  for (size_t m = 0; m < merged.size(); ++m) {
    auto& c = merged[m];
    if (interior_high && detail::touches_boundary(c, high_az, cfg)) {
      next.open_clusters.push_back(std::move(c));  // wait for the continuation
      continue;
    }
    if (int(c.size()) < cfg.min_points) continue;
    BoundaryContext ctx;
    ctx.low_azimuth = low_az;
    ctx.high_azimuth = high_az;
    ctx.carried = from_carry[m] != 0;
    std::vector<Vec2> xy;
    xy.reserve(c.size());
    for (const Point& p : c) xy.push_back({p.x, p.y});
    const Footprint pre = cfg.class_prior_completion && ctx.carried
                              ? detail::face_aligned_rect(xy)
                              : min_area_rect(convex_hull(std::move(xy)));
    const ObjectClass cls = classify_footprint(pre, cfg);
    if (auto det = fit_box(c, cls, cfg, ctx)) {
      det->slice_index = index;
      out.push_back(*det);
    }
  }
  return {std::move(out), std::move(next)};
}

// Whole-scan detection: identical to the n=1 sliced pipeline except that
// detections are labeled with slice_index -1.
inline std::vector<Detection> detect_full(const std::vector<Point>& points,
                                          const DetectorConfig& cfg) {
  const auto wedges = slice_points(points, 1);
  auto [dets, state] = detect_slice(wedges[0], CarryState{}, cfg, DetectorMode::kStateless);
  for (Detection& d : dets) d.slice_index = -1;
  return dets;
}

}  // namespace streamdet
