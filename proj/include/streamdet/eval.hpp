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
#include <array>
#include <cmath>
#include <numeric>
#include <optional>
#include <tuple>
#include <vector>

#include "streamdet/detector.hpp"
#include "streamdet/error.hpp"
#include "streamdet/geometry.hpp"
#include "streamdet/scene.hpp"

namespace streamdet {

struct ClassThresholds {
  double vehicle = 0.7;
  double pedestrian = 0.5;
  double of(ObjectClass c) const {
    return c == ObjectClass::kVehicle ? vehicle : pedestrian;
  }
};

// Subtended-angle bins in degrees: [0,5), [5,15), [15,25), [25,35), [35,inf).
inline constexpr int kNumAngleBins = 5;
inline constexpr std::array<double, kNumAngleBins> kAngleBinLow{0.0, 5.0, 15.0, 25.0,
                                                                35.0};

inline int angle_bin_of(double angle_deg) {
  for (int b = kNumAngleBins - 1; b >= 0; --b) {
    if (angle_deg >= kAngleBinLow[size_t(b)]) return b;
  }
  return 0;
}

struct DetectionLabel {
  bool tp = false;
  int truth_index = -1;  // index into the truths vector, -1 for FP
};

struct MatchResult {
  std::vector<DetectionLabel> labels;  // one per detection, input order
  std::vector<bool> truth_matched;     // one per truth
};

// Greedy IoU matching: detections in descending score order (ties by input
// position) claim their best-IoU unmatched same-class truth when the BEV IoU
// meets the class threshold. One truth matches at most one detection.
inline MatchResult match_detections(const std::vector<Detection>& dets,
                                    const std::vector<ObjectTruth>& truths,
                                    const ClassThresholds& thr = {}) {
  std::vector<int> order(dets.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return dets[size_t(a)].score > dets[size_t(b)].score;
  });
  MatchResult res;
  res.labels.resize(dets.size());
  res.truth_matched.assign(truths.size(), false);
  for (int i : order) {
    const Detection& d = dets[size_t(i)];
    int best = -1;
    double best_iou = 0.0;
    for (size_t t = 0; t < truths.size(); ++t) {
      if (res.truth_matched[t] || truths[t].cls != d.cls) continue;
      const double iou = iou_bev(d.box, truths[t].box);
      if (iou > best_iou) {
        best_iou = iou;
        best = int(t);
      }
    }
    if (best >= 0 && best_iou >= thr.of(d.cls)) {
      res.labels[size_t(i)] = {true, best};
      res.truth_matched[size_t(best)] = true;
    }
  }
  return res;
}

// One scored, matched detection pooled across scans. scan_id and det_index
// only break score ties so that pooled ordering is deterministic.
struct ScoredLabel {
  double score = 0.0;
  bool tp = false;
  int bin = -1;  // matched truth's angle bin; -1 for FP
  int scan_id = 0;
  int det_index = 0;
};

// All-point interpolated AP: area under the precision envelope over recall.
inline double average_precision(std::vector<ScoredLabel> samples, int num_truths) {
  if (num_truths <= 0) throw UndefinedMetric("AP undefined with zero ground truths");
  std::sort(samples.begin(), samples.end(), [](const ScoredLabel& a, const ScoredLabel& b) {
    return std::tie(b.score, a.scan_id, a.det_index) <
           std::tie(a.score, b.scan_id, b.det_index);
  });
  const int m = int(samples.size());
  std::vector<double> precision(static_cast<size_t>(m));
  std::vector<double> recall(static_cast<size_t>(m));
  int tp = 0;
  for (int i = 0; i < m; ++i) {
    tp += samples[size_t(i)].tp ? 1 : 0;
    precision[size_t(i)] = double(tp) / double(i + 1);
    recall[size_t(i)] = double(tp) / double(num_truths);
  }
  for (int i = m - 2; i >= 0; --i) {
    precision[size_t(i)] = std::max(precision[size_t(i)], precision[size_t(i + 1)]);
  }
  double ap = 0.0;
  double prev_recall = 0.0;
  for (int i = 0; i < m; ++i) {
    if (recall[size_t(i)] > prev_recall) {
      ap += (recall[size_t(i)] - prev_recall) * precision[size_t(i)];
      prev_recall = recall[size_t(i)];
    }
  }
  return ap;
}

struct ClassEval {
  int truths = 0;
  int tp = 0;
  int fp = 0;
  int fn = 0;
  std::optional<double> ap;
  std::array<int, kNumAngleBins> bin_truths{};
  std::array<std::optional<double>, kNumAngleBins> bin_ap;
};

struct EvalReport {
  ClassEval vehicle;
  ClassEval pedestrian;
  std::optional<double> map;  // unweighted mean over classes with >= 1 truth

  const ClassEval& of(ObjectClass c) const {
    return c == ObjectClass::kVehicle ? vehicle : pedestrian;
  }
};

// Accumulates matched detections over many scans and evaluates them as one
// pooled dataset. Detections of each scan are matched only against that
// scan's truths. FPs count against every angle bin; TPs belong to their
// matched truth's bin.
class PooledEval {
 public:
  explicit PooledEval(ClassThresholds thr = {}) : thr_(thr) {}

  void add_scan(int scan_id, const std::vector<Detection>& dets,
                const std::vector<ObjectTruth>& truths) {
    const MatchResult match = match_detections(dets, truths, thr_);
    std::vector<int> truth_bin(truths.size());
    for (size_t t = 0; t < truths.size(); ++t) {
      truth_bin[t] = angle_bin_of(subtended_angle_deg(truths[t]));
      Acc& acc = of(truths[t].cls);
      acc.truths += 1;
      acc.bin_truths[size_t(truth_bin[t])] += 1;
      if (!match.truth_matched[t]) acc.fn += 1;
    }
    for (size_t i = 0; i < dets.size(); ++i) {
      Acc& acc = of(dets[i].cls);
      const DetectionLabel& lab = match.labels[i];
      ScoredLabel s;
      s.score = dets[i].score;
      s.tp = lab.tp;
      s.bin = lab.tp ? truth_bin[size_t(lab.truth_index)] : -1;
      s.scan_id = scan_id;
      s.det_index = int(i);
      acc.samples.push_back(s);
      (lab.tp ? acc.tp : acc.fp) += 1;
    }
  }

  EvalReport report() const {
    EvalReport rep;
    rep.vehicle = eval_class(vehicle_);
    rep.pedestrian = eval_class(pedestrian_);
    double sum = 0.0;
    int cnt = 0;
    for (const ClassEval* ce : {&rep.vehicle, &rep.pedestrian}) {
      if (ce->ap.has_value()) {
        sum += *ce->ap;
        cnt += 1;
      }
    }
    if (cnt > 0) rep.map = sum / double(cnt);
    return rep;
  }

 private:
  struct Acc {
    int truths = 0;
    int tp = 0;
    int fp = 0;
    int fn = 0;
    std::array<int, kNumAngleBins> bin_truths{};
    std::vector<ScoredLabel> samples;
  };

  Acc& of(ObjectClass c) { return c == ObjectClass::kVehicle ? vehicle_ : pedestrian_; }

  static ClassEval eval_class(const Acc& acc) {
    ClassEval ce;
    ce.truths = acc.truths;
    ce.tp = acc.tp;
    ce.fp = acc.fp;
    ce.fn = acc.fn;
    ce.bin_truths = acc.bin_truths;
    if (acc.truths > 0) ce.ap = average_precision(acc.samples, acc.truths);
    for (int b = 0; b < kNumAngleBins; ++b) {
      if (acc.bin_truths[size_t(b)] == 0) continue;  // not applicable
      std::vector<ScoredLabel> bin_samples;
      for (const ScoredLabel& s : acc.samples) {
        if ((s.tp && s.bin == b) || !s.tp) bin_samples.push_back(s);
      }
      ce.bin_ap[size_t(b)] =
          average_precision(std::move(bin_samples), acc.bin_truths[size_t(b)]);
    }
    return ce;
  }

  ClassThresholds thr_;
  Acc vehicle_;
  Acc pedestrian_;
};

// Single-scan convenience wrapper.
inline EvalReport evaluate_scan(const std::vector<Detection>& dets,
                                const std::vector<ObjectTruth>& truths,
                                const ClassThresholds& thr = {}) {
  PooledEval pool(thr);
  pool.add_scan(0, dets, truths);
  return pool.report();
}

}  // namespace streamdet
