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

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "streamdet/error.hpp"
#include "streamdet/geometry.hpp"

namespace streamdet {

// A full revolution of range returns. Cell (r, c) holds the range along the
// ray at inclination[r] and the azimuth of column c; range <= 0 means no
// return. Columns sweep azimuth, and column c covers [2*pi*c/cols,
// 2*pi*(c+1)/cols) with its ray cast along the left bin edge.
struct RangeImage {
  int rows = 0;
  int cols = 0;
  std::vector<double> inclinations;  // radians, strictly increasing, size rows
  std::vector<float> ranges;         // row-major, size rows*cols
  std::vector<float> intensities;    // row-major, in [0, 1]

  // Column c covers [2*pi*c/cols, 2*pi*(c+1)/cols); its ray sits at the left
  // edge, so azimuths land exactly on slice boundaries when n divides cols.
  double azimuth_of_col(int c) const { return kTwoPi * c / cols; }
  float range_at(int r, int c) const { return ranges[size_t(r) * cols + c]; }
  float intensity_at(int r, int c) const { return intensities[size_t(r) * cols + c]; }
};

inline void validate_range_image(const RangeImage& img) {
  if (img.rows <= 0 || img.cols <= 0) {
    throw InvalidInput("range image must have positive dimensions");
  }
  if (img.inclinations.size() != size_t(img.rows)) {
    throw InvalidInput("range image needs one inclination per row");
  }
  for (size_t i = 1; i < img.inclinations.size(); ++i) {
    if (!(img.inclinations[i] > img.inclinations[i - 1])) {
      throw InvalidInput("inclinations must be strictly increasing");
    }
  }
  const size_t n = size_t(img.rows) * img.cols;
  if (img.ranges.size() != n || img.intensities.size() != n) {
    throw InvalidInput("range image buffers must be rows*cols");
  }
}

struct Point {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  double intensity = 0.0;
  double azimuth = 0.0;  // [0, 2*pi)
  int col = -1;          // source column, -1 if not from a range image
};

inline double wrap_azimuth(double a) {
  a = std::fmod(a, kTwoPi);
  if (a < 0.0) a += kTwoPi;
  if (a >= kTwoPi) a = 0.0;
  return a;
}

// Converts returns to Cartesian points in column-then-row order, which is the
// order an azimuth-sweeping sensor streams them. No-return cells are skipped.
inline std::vector<Point> range_image_to_points(const RangeImage& img) {
  validate_range_image(img);
  std::vector<Point> pts;
  pts.reserve(size_t(img.rows) * img.cols / 4);
  for (int c = 0; c < img.cols; ++c) {
    const double az = img.azimuth_of_col(c);
    const double ca = std::cos(az);
    const double sa = std::sin(az);
    for (int r = 0; r < img.rows; ++r) {
      const double t = img.range_at(r, c);
      if (t <= 0.0) continue;
      const double inc = img.inclinations[r];
      const double ci = std::cos(inc);
      pts.push_back(Point{t * ci * ca, t * ci * sa, t * std::sin(inc),
                          double(img.intensity_at(r, c)), az, c});
    }
  }
  return pts;
}

struct SliceSpec {
  int n = 1;      // total slices in the revolution
  int index = 0;  // which slice this is
};

struct Wedge {
  SliceSpec spec;
  std::vector<Point> points;
};

// Azimuth interval [lo, hi) of slice `index` out of n.
inline std::pair<double, double> wedge_bounds(int n, int index) {
  if (n < 1) throw InvalidInput("slice count must be >= 1");
  if (index < 0 || index >= n) throw InvalidInput("slice index out of range");
  return {kTwoPi * index / n, kTwoPi * (index + 1) / n};
}

inline int wedge_index_of(double azimuth, int n) {
  int idx = int(std::floor(azimuth * n / kTwoPi));
  if (idx < 0) idx = 0;
  if (idx >= n) idx = n - 1;  // guards azimuth == 2*pi after rounding
  return idx;
}

// Partitions points into n equal angular wedges. Every point lands in exactly
// one wedge and relative order is preserved, so slicing with n=1 is the
// identity on the point stream.
inline std::vector<Wedge> slice_points(const std::vector<Point>& points, int n) {
  if (n < 1) throw InvalidInput("slice count must be >= 1");
  std::vector<Wedge> wedges;
  wedges.resize(size_t(n));
  for (int i = 0; i < n; ++i) wedges[size_t(i)].spec = SliceSpec{n, i};
  for (const Point& p : points) {
    wedges[size_t(wedge_index_of(p.azimuth, n))].points.push_back(p);
  }
  return wedges;
}

}  // namespace streamdet
