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
#include <numeric>
#include <string>
#include <vector>

#include "streamdet/error.hpp"
#include "streamdet/geometry.hpp"
#include "streamdet/rng.hpp"
#include "streamdet/sensor.hpp"

namespace streamdet {

enum class ObjectClass { kVehicle, kPedestrian };

inline const char* to_string(ObjectClass c) {
  return c == ObjectClass::kVehicle ? "vehicle" : "pedestrian";
}

inline ObjectClass object_class_from_string(const std::string& s) {
  if (s == "vehicle") return ObjectClass::kVehicle;
  if (s == "pedestrian") return ObjectClass::kPedestrian;
  throw InvalidInput("unknown object class: " + s);
}

struct ObjectTruth {
  int id = 0;
  ObjectClass cls = ObjectClass::kVehicle;
  OrientedBox box;
};

struct Scene {
  uint64_t seed = 0;
  double bounds_m = 75.0;
  std::vector<ObjectTruth> objects;
};

struct LidarParams {
  int rows = 32;
  int cols = 1024;
  double inclination_min_rad = -15.0 * kPi / 180.0;
  double inclination_max_rad = 5.0 * kPi / 180.0;
  double max_range_m = 75.0;
  double range_noise_sigma_m = 0.02;
};

inline std::vector<double> lidar_inclinations(const LidarParams& p) {
  if (p.rows < 1) throw InvalidInput("lidar needs at least one row");
  std::vector<double> inc(size_t(p.rows));
  if (p.rows == 1) {
    inc[0] = p.inclination_min_rad;
    return inc;
  }
  for (int r = 0; r < p.rows; ++r) {
    inc[r] = p.inclination_min_rad + (p.inclination_max_rad - p.inclination_min_rad) *
                                         double(r) / double(p.rows - 1);
  }
  return inc;
}

// Sampling ranges for object dimensions, in meters.
inline constexpr double kVehicleLengthRange[2] = {3.5, 6.0};
inline constexpr double kVehicleWidthRange[2] = {1.6, 2.4};
inline constexpr double kVehicleHeightRange[2] = {1.4, 1.9};
inline constexpr double kPedestrianSideRange[2] = {0.4, 1.2};
inline constexpr double kPedestrianHeightRange[2] = {1.5, 1.9};

struct RangeStratum {
  double lo = 0.0;
  double hi = 0.0;
};

struct SceneConfig {
  int vehicles = 20;
  int pedestrians = 20;
  double range_min_m = 17.0;
  double range_max_m = 55.0;
  // Optional per-class range strata, cycled over the objects of that class.
  // Empty means the single [range_min_m, range_max_m] band.
  std::vector<RangeStratum> vehicle_strata;
  std::vector<RangeStratum> pedestrian_strata;
  double ground_z_m = -2.0;      // sensor sits at z = 0
  double min_separation_m = 1.0;  // gap between footprints, keeps clusters apart
  bool stratified_azimuth = true;
  double bounds_m = 75.0;
  int max_attempts = 1000;
};

namespace detail {

inline double footprint_radius(const OrientedBox& b) {
  return 0.5 * std::hypot(b.length, b.width);
}

}  // namespace detail

// Places objects by rejection sampling. Azimuth slots are shuffled and
// jittered so shadows overlap less; separation requires every pair of
// footprints to be at least min_separation_m apart, which implies IoU 0 and
// keeps distinct objects from fusing into one cluster.
inline Scene generate_scene(const SceneConfig& cfg, uint64_t seed) {
  if (cfg.vehicles < 0 || cfg.pedestrians < 0) {
    throw InvalidInput("object counts must be non-negative");
  }
  if (cfg.range_min_m < 2.0) {
    throw InvalidInput("placement range must start at >= 2 m");
  }
  Scene scene;
  scene.seed = seed;
  scene.bounds_m = cfg.bounds_m;
  const int total = cfg.vehicles + cfg.pedestrians;
  if (total == 0) return scene;

  Rng rng(derive_seed(seed, 0x5ce9e));
  std::vector<int> slots(static_cast<size_t>(total));
  std::iota(slots.begin(), slots.end(), 0);
  for (int i = total - 1; i > 0; --i) {
    std::swap(slots[size_t(i)], slots[size_t(rng.uniform_int(0, i))]);
  }
  const double slot_width = kTwoPi / double(total);
  std::vector<ConvexPolygon> placed_polys;
  placed_polys.reserve(size_t(total));

  for (int i = 0; i < total; ++i) {
    const bool is_vehicle = i < cfg.vehicles;
    const auto& strata = is_vehicle ? cfg.vehicle_strata : cfg.pedestrian_strata;
    const int class_index = is_vehicle ? i : i - cfg.vehicles;
    RangeStratum band{cfg.range_min_m, cfg.range_max_m};
    if (!strata.empty()) band = strata[size_t(class_index) % strata.size()];

    bool placed = false;
    for (int attempt = 0; attempt < cfg.max_attempts && !placed; ++attempt) {
      double az;
      if (cfg.stratified_azimuth) {
        az = wrap_azimuth((slots[size_t(i)] + 0.5) * slot_width +
                          rng.uniform(-0.45, 0.45) * slot_width);
      } else {
        az = rng.uniform(0.0, kTwoPi);
      }
      const double range = rng.uniform(band.lo, band.hi);
      const double heading = rng.uniform(-kPi, kPi);

      OrientedBox box;
      if (is_vehicle) {
        box.length = rng.uniform(kVehicleLengthRange[0], kVehicleLengthRange[1]);
        box.width = rng.uniform(kVehicleWidthRange[0], kVehicleWidthRange[1]);
        box.height = rng.uniform(kVehicleHeightRange[0], kVehicleHeightRange[1]);
      } else {
        const double a = rng.uniform(kPedestrianSideRange[0], kPedestrianSideRange[1]);
        const double b = rng.uniform(kPedestrianSideRange[0], kPedestrianSideRange[1]);
        box.length = std::max(a, b);
        box.width = std::min(a, b);
        box.height = rng.uniform(kPedestrianHeightRange[0], kPedestrianHeightRange[1]);
      }
      box.cx = range * std::cos(az);
      box.cy = range * std::sin(az);
      box.cz = cfg.ground_z_m + box.height / 2.0;
      box.heading = normalize_heading(heading);

      if (range < 2.0 || range > cfg.bounds_m) continue;
      // Keep the whole footprint clear of the sensor.
      if (range - detail::footprint_radius(box) < 1.0) continue;
      const ConvexPolygon poly = footprint_to_polygon(footprint_of(box));
      bool clear = true;
      for (const ConvexPolygon& other : placed_polys) {
        if (polygon_distance(poly, other) < cfg.min_separation_m) {
          clear = false;
          break;
        }
      }
      if (!clear) continue;

      scene.objects.push_back(ObjectTruth{
          i, is_vehicle ? ObjectClass::kVehicle : ObjectClass::kPedestrian, box});
      placed_polys.push_back(poly);
      placed = true;
    }
    if (!placed) {
      throw PlacementError("could not place object " + std::to_string(i) + " after " +
                           std::to_string(cfg.max_attempts) + " attempts");
    }
  }
  return scene;
}

// Nearest positive ray-box intersection parameter (meters along a unit ray
// from the origin), or +inf on a miss. Slab method in the box frame. Rays
// starting inside a box are treated as misses; scene placement keeps the
// sensor outside every box.
inline double ray_box_hit(double dx, double dy, double dz, const OrientedBox& b) {
  const double ch = std::cos(b.heading);
  const double sh = std::sin(b.heading);
  // Rotate world by -heading so the box is axis-aligned at the origin.
  const double ox = ch * -b.cx + sh * -b.cy;
  const double oy = -sh * -b.cx + ch * -b.cy;
  const double oz = -b.cz;
  const double rx = ch * dx + sh * dy;
  const double ry = -sh * dx + ch * dy;
  const double rz = dz;
  const double o[3] = {ox, oy, oz};
  const double d[3] = {rx, ry, rz};
  const double half[3] = {b.length / 2.0, b.width / 2.0, b.height / 2.0};
  double tlo = -std::numeric_limits<double>::infinity();
  double thi = std::numeric_limits<double>::infinity();
  for (int a = 0; a < 3; ++a) {
    if (std::abs(d[a]) < 1e-12) {
      if (std::abs(o[a]) > half[a]) return std::numeric_limits<double>::infinity();
      continue;
    }
    double t1 = (-half[a] - o[a]) / d[a];
    double t2 = (half[a] - o[a]) / d[a];
    if (t1 > t2) std::swap(t1, t2);
    tlo = std::max(tlo, t1);
    thi = std::min(thi, t2);
  }
  if (thi < tlo || tlo <= 1e-9) return std::numeric_limits<double>::infinity();
  return tlo;
}

// Casts one ray per cell, keeps the nearest hit within max range, and adds
// Gaussian range noise (result clamped to >= 0.1 m). Noise is a pure function
// of (seed, cell), so the image is identical regardless of traversal order.
inline RangeImage simulate_scan(const Scene& scene, const LidarParams& lidar,
                                uint64_t seed) {
  if (lidar.cols < 1) throw InvalidInput("lidar needs at least one column");
  RangeImage img;
  img.rows = lidar.rows;
  img.cols = lidar.cols;
  img.inclinations = lidar_inclinations(lidar);
  img.ranges.assign(size_t(lidar.rows) * lidar.cols, 0.0f);
  img.intensities.assign(size_t(lidar.rows) * lidar.cols, 0.0f);
  const uint64_t noise_seed = derive_seed(seed, 0x401e5);

  for (int r = 0; r < lidar.rows; ++r) {
    const double inc = img.inclinations[size_t(r)];
    const double ci = std::cos(inc);
    const double si = std::sin(inc);
    for (int c = 0; c < lidar.cols; ++c) {
      const double az = img.azimuth_of_col(c);
      const double dx = ci * std::cos(az);
      const double dy = ci * std::sin(az);
      double best = std::numeric_limits<double>::infinity();
      for (const ObjectTruth& obj : scene.objects) {
        best = std::min(best, ray_box_hit(dx, dy, si, obj.box));
      }
      if (best > lidar.max_range_m) continue;
      const size_t cell = size_t(r) * lidar.cols + c;
      double t = best + lidar.range_noise_sigma_m * cell_gaussian(noise_seed, cell);
      t = std::max(t, 0.1);
      img.ranges[cell] = float(t);
      img.intensities[cell] = float(std::clamp(1.0 - t / lidar.max_range_m, 0.0, 1.0));
    }
  }
  return img;
}

// Angle (degrees) of the smallest azimuth interval covering the footprint
// corners, as seen from the sensor.
inline double subtended_angle_deg(const ObjectTruth& obj) {
  if (std::hypot(obj.box.cx, obj.box.cy) < 1e-9) {
    throw InvalidInput("subtended angle undefined for an object at the origin");
  }
  const ConvexPolygon poly = box_to_polygon(obj.box);
  if (polygon_contains(poly, Vec2{0.0, 0.0})) return 360.0;
  std::vector<double> az;
  az.reserve(poly.vertices.size());
  for (const Vec2& v : poly.vertices) az.push_back(wrap_azimuth(std::atan2(v.y, v.x)));
  std::sort(az.begin(), az.end());
  double max_gap = az.front() + kTwoPi - az.back();
  for (size_t i = 1; i < az.size(); ++i) max_gap = std::max(max_gap, az[i] - az[i - 1]);
  return (kTwoPi - max_gap) * 180.0 / kPi;
}

}  // namespace streamdet
