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
#include <deque>
#include <numeric>
#include <utility>
#include <vector>

#include "streamdet/detector.hpp"
#include "streamdet/error.hpp"
#include "streamdet/geometry.hpp"

namespace streamdet {

struct NmsConfig {
  double iou_threshold = 0.5;
  int window_k = 0;  // how many past slices of survivors to hold
};

// Survivors of the last window_k slices, oldest first.
struct NmsState {
  std::deque<std::vector<Detection>> window;
  int last_slice = -1;
};

// Greedy NMS: visit detections by descending score (ties by input position),
// drop any that overlaps an already kept detection of the same class with
// BEV IoU above the threshold. Output is in acceptance order.
inline std::vector<Detection> nms_greedy(const std::vector<Detection>& dets,
                                         double iou_threshold) {
  std::vector<int> order(dets.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return dets[size_t(a)].score > dets[size_t(b)].score;
  });
  std::vector<Detection> kept;
  for (int i : order) {
    const Detection& d = dets[size_t(i)];
    bool suppressed = false;
    for (const Detection& k : kept) {
      if (k.cls == d.cls && iou_bev(k.box, d.box) > iou_threshold) {
        suppressed = true;
        break;
      }
    }
    if (!suppressed) kept.push_back(d);
  }
  return kept;
}

// NMS over the concatenated detections of a whole scan.
inline std::vector<Detection> global_nms(const std::vector<Detection>& dets,
                                         double iou_threshold) {
  return nms_greedy(dets, iou_threshold);
}

// Stateful NMS step for one slice: greedy NMS within the slice, then drop any
// survivor that overlaps a detection remembered from the last window_k
// slices. Earlier slices win regardless of score. The post-filter survivors
// are pushed into the window and the oldest slices evicted. Slices must be
// fed consecutively from 0 with the state threaded through; window_k == 0
// reduces to plain per-slice NMS.
inline std::pair<std::vector<Detection>, NmsState> stateful_nms(
    const std::vector<Detection>& slice_dets, int slice_index, NmsState state,
    const NmsConfig& cfg) {
  if (cfg.window_k < 0) throw InvalidInput("window_k must be non-negative");
  if (slice_index != state.last_slice + 1) {
    throw ContractViolation("stateful NMS requires consecutive slices from 0");
  }
  for (const Detection& d : slice_dets) {
    if (d.slice_index != slice_index) {
      throw ContractViolation("detection labeled with a different slice");
    }
  }
  std::vector<Detection> kept;
  for (const Detection& d : nms_greedy(slice_dets, cfg.iou_threshold)) {
    bool suppressed = false;
    for (const auto& past : state.window) {
      for (const Detection& k : past) {
        if (k.cls == d.cls && iou_bev(k.box, d.box) > cfg.iou_threshold) {
          suppressed = true;
          break;
        }
      }
      if (suppressed) break;
    }
    if (!suppressed) kept.push_back(d);
  }
  state.window.push_back(kept);
  while (int(state.window.size()) > cfg.window_k) state.window.pop_front();
  state.last_slice = slice_index;
  return {std::move(kept), std::move(state)};
}

}  // namespace streamdet
