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

#ifndef STREAMDET_TESTS_ORACLES_HPP_
#define STREAMDET_TESTS_ORACLES_HPP_

// Independent reference implementations the tests check the library against.
// Everything here favors the most literal formulation over speed, and where
// possible uses a different algorithm than the library (face planes instead
// of slabs, quadratic scans instead of grids, rationals instead of doubles).

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <vector>

#include "streamdet/streamdet.hpp"

namespace oracles {

using streamdet::Detection;
using streamdet::ObjectClass;
using streamdet::ObjectTruth;
using streamdet::OrientedBox;
using streamdet::Point;
using streamdet::Rng;
using streamdet::ScoredLabel;
using streamdet::Vec2;

// Rotate the axis-aligned corners by the heading, then translate.
inline std::array<Vec2, 4> box_corners(const OrientedBox& b) {
  const double c = std::cos(b.heading);
  const double s = std::sin(b.heading);
  const double hl = b.length / 2.0;
  const double hw = b.width / 2.0;
  const std::array<Vec2, 4> local{{{hl, hw}, {-hl, hw}, {-hl, -hw}, {hl, -hw}}};
  std::array<Vec2, 4> out;
  for (size_t i = 0; i < 4; ++i) {
    out[i] = {b.cx + c * local[i].x - s * local[i].y,
              b.cy + s * local[i].x + c * local[i].y};
  }
  return out;
}

// Point-in-footprint by inverse transform into the box frame.
inline bool point_in_box_bev(Vec2 p, const OrientedBox& b) {
  const double c = std::cos(b.heading);
  const double s = std::sin(b.heading);
  const double dx = p.x - b.cx;
  const double dy = p.y - b.cy;
  const double u = c * dx + s * dy;
  const double v = -s * dx + c * dy;
  return std::abs(u) <= b.length / 2.0 && std::abs(v) <= b.width / 2.0;
}

// Stratified Monte Carlo BEV IoU: one jittered sample per cell of a
// grid x grid lattice over the pair's common bounding box. Stratification
// confines sampling error to boundary cells, so grid=1000 (1e6 samples) is
// accurate to roughly 1e-5 instead of the 1e-3 of independent sampling.
inline double mc_iou_bev(const OrientedBox& a, const OrientedBox& b,
                         uint64_t seed, int grid = 1000) {
  double xlo = std::numeric_limits<double>::infinity();
  double xhi = -xlo;
  double ylo = xlo;
  double yhi = -xlo;
  for (const OrientedBox* box : {&a, &b}) {
    for (const Vec2& v : box_corners(*box)) {
      xlo = std::min(xlo, v.x);
      xhi = std::max(xhi, v.x);
      ylo = std::min(ylo, v.y);
      yhi = std::max(yhi, v.y);
    }
  }
  Rng rng(seed);
  const double dx = (xhi - xlo) / grid;
  const double dy = (yhi - ylo) / grid;
  int64_t inter = 0;
  int64_t uni = 0;
  for (int i = 0; i < grid; ++i) {
    for (int j = 0; j < grid; ++j) {
      const double x = xlo + (i + rng.next_double()) * dx;
      const double y = ylo + (j + rng.next_double()) * dy;
      const bool ina = point_in_box_bev({x, y}, a);
      const bool inb = point_in_box_bev({x, y}, b);
      inter += ina && inb ? 1 : 0;
      uni += ina || inb ? 1 : 0;
    }
  }
  return uni == 0 ? 0.0 : double(inter) / double(uni);
}

// Quadratic single-link clustering: BFS over the full distance matrix.
inline std::vector<std::vector<int>> bf_clusters(const std::vector<Point>& pts,
                                                 double eps) {
  const int n = int(pts.size());
  const double eps2 = eps * eps;
  std::vector<bool> seen(size_t(n), false);
  std::vector<std::vector<int>> out;
  for (int i = 0; i < n; ++i) {
    if (seen[size_t(i)]) continue;
    std::vector<int> comp{i};
    seen[size_t(i)] = true;
    for (size_t q = 0; q < comp.size(); ++q) {
      const Point& p = pts[size_t(comp[q])];
      for (int j = 0; j < n; ++j) {
        if (seen[size_t(j)]) continue;
        const double ddx = p.x - pts[size_t(j)].x;
        const double ddy = p.y - pts[size_t(j)].y;
        if (ddx * ddx + ddy * ddy <= eps2) {
          seen[size_t(j)] = true;
          comp.push_back(j);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

inline std::vector<int> score_order(const std::vector<Detection>& dets) {
  std::vector<int> order(dets.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (dets[size_t(a)].score != dets[size_t(b)].score) {
      return dets[size_t(a)].score > dets[size_t(b)].score;
    }
    return a < b;
  });
  return order;
}

// Literal greedy NMS over indices.
inline std::vector<int> bf_greedy_nms(const std::vector<Detection>& dets,
                                      double thr) {
  std::vector<int> kept;
  for (int i : score_order(dets)) {
    bool ok = true;
    for (int k : kept) {
      if (dets[size_t(k)].cls == dets[size_t(i)].cls &&
          streamdet::iou_bev(dets[size_t(k)].box, dets[size_t(i)].box) > thr) {
        ok = false;
        break;
      }
    }
    if (ok) kept.push_back(i);
  }
  return kept;
}

struct BfMatch {
  std::vector<bool> det_tp;
  std::vector<int> det_truth;  // -1 for FP
  std::vector<bool> truth_matched;
};

// Literal greedy matching: descending score, best-IoU unmatched same-class
// truth, TP iff that IoU meets the class threshold.
inline BfMatch bf_match(const std::vector<Detection>& dets,
                        const std::vector<ObjectTruth>& truths,
                        const streamdet::ClassThresholds& thr) {
  BfMatch m;
  m.det_tp.assign(dets.size(), false);
  m.det_truth.assign(dets.size(), -1);
  m.truth_matched.assign(truths.size(), false);
  for (int i : score_order(dets)) {
    int best = -1;
    double best_iou = 0.0;
    for (size_t t = 0; t < truths.size(); ++t) {
      if (m.truth_matched[t] || truths[t].cls != dets[size_t(i)].cls) continue;
      const double o = streamdet::iou_bev(dets[size_t(i)].box, truths[t].box);
      if (o > best_iou) {
        best_iou = o;
        best = int(t);
      }
    }
    if (best >= 0 && best_iou >= thr.of(dets[size_t(i)].cls)) {
      m.det_tp[size_t(i)] = true;
      m.det_truth[size_t(i)] = best;
      m.truth_matched[size_t(best)] = true;
    }
  }
  return m;
}

// Exact rationals for the AP oracle. Instances stay tiny (a handful of
// detections and truths), so int64 never comes close to overflow.
struct Rat {
  long long num = 0;
  long long den = 1;
};

inline Rat rat(long long n, long long d) {
  if (d < 0) {
    n = -n;
    d = -d;
  }
  const long long g = std::gcd(n < 0 ? -n : n, d);
  return g != 0 ? Rat{n / g, d / g} : Rat{0, 1};
}

inline Rat radd(Rat a, Rat b) { return rat(a.num * b.den + b.num * a.den, a.den * b.den); }
inline Rat rsub(Rat a, Rat b) { return rat(a.num * b.den - b.num * a.den, a.den * b.den); }
inline Rat rmul(Rat a, Rat b) { return rat(a.num * b.num, a.den * b.den); }
inline bool rless(Rat a, Rat b) { return a.num * b.den < b.num * a.den; }

// All-point interpolated AP in exact arithmetic, converted to double at the
// very end. Small instances only.
inline double bf_average_precision(std::vector<ScoredLabel> samples, int truths) {
  std::sort(samples.begin(), samples.end(), [](const ScoredLabel& a, const ScoredLabel& b) {
    if (a.score != b.score) return a.score > b.score;
    if (a.scan_id != b.scan_id) return a.scan_id < b.scan_id;
    return a.det_index < b.det_index;
  });
  const int m = int(samples.size());
  if (m == 0) return 0.0;
  std::vector<Rat> prec(static_cast<size_t>(m));
  std::vector<Rat> rec(static_cast<size_t>(m));
  long long tp = 0;
  for (int i = 0; i < m; ++i) {
    if (samples[size_t(i)].tp) tp += 1;
    prec[size_t(i)] = rat(tp, i + 1);
    rec[size_t(i)] = rat(tp, truths);
  }
  for (int i = m - 2; i >= 0; --i) {
    if (rless(prec[size_t(i)], prec[size_t(i + 1)])) prec[size_t(i)] = prec[size_t(i + 1)];
  }
  Rat ap{0, 1};
  Rat prev{0, 1};
  for (int i = 0; i < m; ++i) {
    ap = radd(ap, rmul(rsub(rec[size_t(i)], prev), prec[size_t(i)]));
    prev = rec[size_t(i)];
  }
  return double(ap.num) / double(ap.den);
}

// Ray-box intersection by intersecting the six face planes and keeping the
// nearest point inside its face rectangle (the library uses slabs).
inline double bf_ray_box_hit(double dx, double dy, double dz, const OrientedBox& b) {
  const double c = std::cos(b.heading);
  const double s = std::sin(b.heading);
  const double o[3] = {c * -b.cx + s * -b.cy, -s * -b.cx + c * -b.cy, -b.cz};
  const double d[3] = {c * dx + s * dy, -s * dx + c * dy, dz};
  const double half[3] = {b.length / 2.0, b.width / 2.0, b.height / 2.0};
  double best = std::numeric_limits<double>::infinity();
  for (int a = 0; a < 3; ++a) {
    if (std::abs(d[a]) < 1e-15) continue;
    for (int sgn : {-1, 1}) {
      const double t = (sgn * half[a] - o[a]) / d[a];
      if (t <= 1e-9 || t >= best) continue;
      bool inside = true;
      for (int k = 0; k < 3; ++k) {
        if (k != a && std::abs(o[k] + t * d[k]) > half[k] + 1e-9) {
          inside = false;
          break;
        }
      }
      if (inside) best = t;
    }
  }
  return best;
}

// Subtended angle from the corner azimuths relative to the center bearing
// (the library instead complements the largest gap between sorted azimuths).
inline double bf_subtended_deg(const OrientedBox& b) {
  const double az_c = std::atan2(b.cy, b.cx);
  double lo = 0.0;
  double hi = 0.0;
  for (const Vec2& v : box_corners(b)) {
    const double d = streamdet::normalize_heading(std::atan2(v.y, v.x) - az_c);
    lo = std::min(lo, d);
    hi = std::max(hi, d);
  }
  return (hi - lo) * 180.0 / streamdet::kPi;
}

// --------------------------------------------------------------------------
// Random instance builders.

inline OrientedBox random_box(Rng& rng) {
  OrientedBox b;
  b.cx = rng.uniform(-15.0, 15.0);
  b.cy = rng.uniform(-15.0, 15.0);
  b.cz = rng.uniform(-2.0, 2.0);
  b.length = rng.uniform(0.3, 6.0);
  b.width = rng.uniform(0.3, 3.0);
  b.height = rng.uniform(0.5, 2.5);
  b.heading = rng.uniform(-streamdet::kPi, streamdet::kPi);
  return b;
}

// A second box positioned so the pair overlaps reasonably often.
inline OrientedBox random_box_near(Rng& rng, const OrientedBox& a) {
  OrientedBox b = a;
  b.cx += rng.uniform(-3.0, 3.0);
  b.cy += rng.uniform(-3.0, 3.0);
  b.cz += rng.uniform(-0.5, 0.5);
  b.length = rng.uniform(0.3, 6.0);
  b.width = rng.uniform(0.3, 3.0);
  b.height = rng.uniform(0.5, 2.5);
  b.heading = rng.uniform(-streamdet::kPi, streamdet::kPi);
  return b;
}

inline Detection make_det(double cx, double cy, double l, double w, double heading,
                          double score, ObjectClass cls = ObjectClass::kVehicle,
                          int slice = -1) {
  Detection d;
  d.box = OrientedBox{cx, cy, 0.0, l, w, 1.5, streamdet::normalize_heading(heading)};
  d.score = score;
  d.cls = cls;
  d.slice_index = slice;
  return d;
}

inline ObjectTruth make_truth(int id, double cx, double cy, double l, double w,
                              double heading, ObjectClass cls = ObjectClass::kVehicle) {
  ObjectTruth t;
  t.id = id;
  t.cls = cls;
  t.box = OrientedBox{cx, cy, 0.0, l, w, 1.5, streamdet::normalize_heading(heading)};
  return t;
}

inline Point make_point(double x, double y, double z = 0.0, int col = -1) {
  Point p;
  p.x = x;
  p.y = y;
  p.z = z;
  p.intensity = 0.5;
  p.azimuth = streamdet::wrap_azimuth(std::atan2(y, x));
  p.col = col;
  return p;
}

// Dense points on the perimeter of a rectangle footprint, alternating between
// two heights so the fitted box gets a z extent.
inline std::vector<Point> rect_perimeter_points(double cx, double cy, double l,
                                                double w, double heading, double step,
                                                double z0 = 0.0, double z1 = 1.5) {
  const double c = std::cos(heading);
  const double s = std::sin(heading);
  std::vector<Vec2> local;
  const double hl = l / 2.0;
  const double hw = w / 2.0;
  for (double u = -hl; u < hl; u += step) {
    local.push_back({u, -hw});
    local.push_back({u, hw});
  }
  for (double v = -hw; v < hw; v += step) {
    local.push_back({-hl, v});
    local.push_back({hl, v});
  }
  local.push_back({hl, hw});
  local.push_back({hl, -hw});
  local.push_back({-hl, hw});
  std::vector<Point> pts;
  pts.reserve(local.size());
  for (size_t i = 0; i < local.size(); ++i) {
    const Vec2& q = local[i];
    pts.push_back(make_point(cx + c * q.x - s * q.y, cy + s * q.x + c * q.y,
                             i % 2 == 0 ? z0 : z1));
  }
  return pts;
}

inline bool same_box(const OrientedBox& a, const OrientedBox& b) {
  return a.cx == b.cx && a.cy == b.cy && a.cz == b.cz && a.length == b.length &&
         a.width == b.width && a.height == b.height && a.heading == b.heading;
}

// Bitwise equality of detection lists; slice_index is provenance metadata and
// only compared on request.
inline bool same_detections(const std::vector<Detection>& a,
                            const std::vector<Detection>& b,
                            bool check_slice = false) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].cls != b[i].cls || a[i].score != b[i].score) return false;
    if (!same_box(a[i].box, b[i].box)) return false;
    if (check_slice && a[i].slice_index != b[i].slice_index) return false;
  }
  return true;
}

}  // namespace oracles

#endif  // STREAMDET_TESTS_ORACLES_HPP_
