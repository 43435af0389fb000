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

#include <algorithm>
#include <cmath>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "streamdet/streamdet.hpp"

using namespace streamdet;

namespace {

// Random detections over a few overlap hotspots so suppression actually fires.
std::vector<Detection> random_dets(Rng& rng, int count, int slice = -1) {
  std::vector<Detection> dets;
  for (int i = 0; i < count; ++i) {
    const int hotspot = rng.uniform_int(0, 3);
    const double hx = -10.0 + 7.0 * hotspot;
    const ObjectClass cls =
        rng.next_double() < 0.7 ? ObjectClass::kVehicle : ObjectClass::kPedestrian;
    dets.push_back(oracles::make_det(hx + rng.uniform(-1.5, 1.5),
                                     10.0 + rng.uniform(-1.5, 1.5), 4.0, 2.0,
                                     rng.uniform(-0.3, 0.3),
                                     rng.uniform(0.1, 1.0), cls, slice));
  }
  return dets;
}

std::vector<Detection> pick(const std::vector<Detection>& dets,
                            const std::vector<int>& idx) {
  std::vector<Detection> out;
  for (int i : idx) out.push_back(dets[size_t(i)]);
  return out;
}

// Splits detections into n slices by label, runs the stateful filter over the
// whole scan, and concatenates the survivors.
std::vector<Detection> run_stateful(const std::vector<Detection>& all, int n,
                                    const NmsConfig& cfg) {
  std::vector<Detection> out;
  NmsState state;
  for (int s = 0; s < n; ++s) {
    std::vector<Detection> slice;
    for (const Detection& d : all) {
      if (d.slice_index == s) slice.push_back(d);
    }
    auto [kept, next] = stateful_nms(slice, s, std::move(state), cfg);
    out.insert(out.end(), kept.begin(), kept.end());
    state = std::move(next);
  }
  return out;
}

}  // namespace

TEST_CASE("greedy nms examples") {
  const auto single = nms_greedy({oracles::make_det(0, 10, 4, 2, 0, 0.9)}, 0.5);
  REQUIRE(single.size() == 1);

  // A near-duplicate pair keeps only the higher score.
  std::vector<Detection> pair;
  pair.push_back(oracles::make_det(0.0, 10.0, 4, 2, 0, 0.7));
  pair.push_back(oracles::make_det(0.2, 10.0, 4, 2, 0, 0.9));
  const auto kept = nms_greedy(pair, 0.5);
  REQUIRE(kept.size() == 1);
  REQUIRE(kept[0].score == 0.9);

  // Equal scores break ties by input position.
  pair[0].score = pair[1].score = 0.8;
  const auto tied = nms_greedy(pair, 0.5);
  REQUIRE(tied.size() == 1);
  REQUIRE(tied[0].box.cx == 0.0);

  // Different classes never suppress each other.
  std::vector<Detection> mixed;
  mixed.push_back(oracles::make_det(0, 10, 1.4, 1.4, 0, 0.9, ObjectClass::kVehicle));
  mixed.push_back(
      oracles::make_det(0, 10, 1.4, 1.4, 0, 0.7, ObjectClass::kPedestrian));
  REQUIRE(nms_greedy(mixed, 0.5).size() == 2);

  REQUIRE(nms_greedy({}, 0.5).empty());
}

TEST_CASE("greedy nms matches brute force") {
  Rng rng(301);
  for (int it = 0; it < 40; ++it) {
    const auto dets = random_dets(rng, rng.uniform_int(0, 25));
    const double thr = rng.uniform(0.2, 0.7);
    const auto lib = nms_greedy(dets, thr);
    const auto expect = pick(dets, oracles::bf_greedy_nms(dets, thr));
    REQUIRE(oracles::same_detections(lib, expect));
  }
}

TEST_CASE("global nms is greedy nms") {
  Rng rng(302);
  const auto dets = random_dets(rng, 30);
  REQUIRE(oracles::same_detections(global_nms(dets, 0.5), nms_greedy(dets, 0.5)));
}

TEST_CASE("stateful nms with window zero is per-slice greedy") {
  Rng rng(303);
  for (int it = 0; it < 20; ++it) {
    const int n = 8;
    std::vector<Detection> all;
    for (int s = 0; s < n; ++s) {
      const auto slice = random_dets(rng, rng.uniform_int(0, 6), s);
      all.insert(all.end(), slice.begin(), slice.end());
    }
    NmsConfig cfg;
    cfg.window_k = 0;
    const auto stateful = run_stateful(all, n, cfg);
    std::vector<Detection> expect;
    for (int s = 0; s < n; ++s) {
      std::vector<Detection> slice;
      for (const Detection& d : all) {
        if (d.slice_index == s) slice.push_back(d);
      }
      const auto kept = nms_greedy(slice, cfg.iou_threshold);
      expect.insert(expect.end(), kept.begin(), kept.end());
    }
    REQUIRE(oracles::same_detections(stateful, expect, true));
  }
}

TEST_CASE("stateful nms suppresses across slices") {
  // B overlaps A from the previous slice; the earlier slice wins even though
  // B scores lower than A here and would survive alone.
  const Detection a = oracles::make_det(0.0, 10.0, 4, 2, 0, 0.9, ObjectClass::kVehicle, 0);
  const Detection b = oracles::make_det(0.3, 10.0, 4, 2, 0, 0.7, ObjectClass::kVehicle, 1);
  const Detection c = oracles::make_det(20.0, -5.0, 4, 2, 0, 0.4, ObjectClass::kVehicle, 1);
  NmsConfig cfg;
  cfg.window_k = 1;

  NmsState state;
  auto [k0, s0] = stateful_nms({a}, 0, std::move(state), cfg);
  REQUIRE(k0.size() == 1);
  auto [k1, s1] = stateful_nms({b, c}, 1, std::move(s0), cfg);
  REQUIRE(k1.size() == 1);
  REQUIRE(k1[0].box.cx == 20.0);  // b suppressed, the far box survives
}

TEST_CASE("stateful nms evicts outside the window") {
  // With window_k = 1 a duplicate two slices later is out of reach.
  const Detection a = oracles::make_det(0.0, 10.0, 4, 2, 0, 0.9, ObjectClass::kVehicle, 0);
  Detection b = a;
  b.slice_index = 2;
  b.score = 0.5;
  NmsConfig cfg;
  cfg.window_k = 1;

  NmsState state;
  auto [k0, s0] = stateful_nms({a}, 0, std::move(state), cfg);
  REQUIRE(k0.size() == 1);
  auto [k1, s1] = stateful_nms({}, 1, std::move(s0), cfg);
  REQUIRE(k1.empty());
  auto [k2, s2] = stateful_nms({b}, 2, std::move(s1), cfg);
  REQUIRE(k2.size() == 1);

  // With window_k = 2 the same duplicate is still remembered and dropped.
  NmsConfig wide = cfg;
  wide.window_k = 2;
  auto [w0, t0] = stateful_nms({a}, 0, NmsState{}, wide);
  auto [w1, t1] = stateful_nms({}, 1, std::move(t0), wide);
  REQUIRE(w0.size() == 1);
  REQUIRE(w1.empty());
  auto [w2, t2] = stateful_nms({b}, 2, std::move(t1), wide);
  REQUIRE(w2.empty());
}

TEST_CASE("stateful nms contract errors") {
  NmsConfig cfg;
  cfg.window_k = 1;
  NmsState fresh;
  REQUIRE_THROWS_AS(stateful_nms({}, 1, fresh, cfg), ContractViolation);

  auto [k0, s0] = stateful_nms({}, 0, NmsState{}, cfg);
  REQUIRE(k0.empty());
  REQUIRE_THROWS_AS(stateful_nms({}, 2, s0, cfg), ContractViolation);

  const Detection mislabeled =
      oracles::make_det(0, 10, 4, 2, 0, 0.9, ObjectClass::kVehicle, 3);
  REQUIRE_THROWS_AS(stateful_nms({mislabeled}, 1, s0, cfg), ContractViolation);

  NmsConfig bad;
  bad.window_k = -1;
  REQUIRE_THROWS_AS(stateful_nms({}, 0, NmsState{}, bad), InvalidInput);
}

TEST_CASE("stateful nms output invariants") {
  Rng rng(304);
  for (int it = 0; it < 10; ++it) {
    const int n = 6;
    std::vector<Detection> all;
    for (int s = 0; s < n; ++s) {
      const auto slice = random_dets(rng, rng.uniform_int(0, 8), s);
      all.insert(all.end(), slice.begin(), slice.end());
    }
    NmsConfig cfg;
    cfg.window_k = rng.uniform_int(0, 3);
    const auto kept = run_stateful(all, n, cfg);

    // Survivors are a subset of the input.
    for (const Detection& d : kept) {
      const bool found = std::any_of(all.begin(), all.end(), [&](const Detection& x) {
        return oracles::same_box(x.box, d.box) && x.score == d.score &&
               x.slice_index == d.slice_index;
      });
      REQUIRE(found);
    }
    // No two survivors within window_k slices of each other overlap.
    for (size_t i = 0; i < kept.size(); ++i) {
      for (size_t j = i + 1; j < kept.size(); ++j) {
        if (kept[i].cls != kept[j].cls) continue;
        const int gap = std::abs(kept[i].slice_index - kept[j].slice_index);
        if (gap > cfg.window_k) continue;
        REQUIRE(iou_bev(kept[i].box, kept[j].box) <= cfg.iou_threshold);
      }
    }
  }
}

TEST_CASE("stateful nms recovers the global result on ordered inputs") {
  // When scores fall with slice index and overlaps only happen between
  // adjacent slices, a window of one slice sees everything global NMS sees.
  Rng rng(305);
  int checked = 0;
  int attempts = 0;
  while (checked < 50 && ++attempts < 5000) {
    const int n = 6;
    std::vector<Detection> all;
    for (int s = 0; s < n; ++s) {
      const int count = rng.uniform_int(0, 4);
      for (int i = 0; i < count; ++i) {
        Detection d = oracles::make_det(
            -12.0 + 24.0 * rng.next_double(), 8.0 + 4.0 * rng.next_double(), 4.0,
            2.0, rng.uniform(-0.3, 0.3),
            // score band (n - s .. n - s + 1) keeps earlier slices higher
            double(n - s) + rng.next_double(), ObjectClass::kVehicle, s);
        all.push_back(d);
      }
    }
    // Keep only instances where overlapping pairs sit in adjacent slices.
    bool usable = true;
    for (size_t i = 0; i < all.size() && usable; ++i) {
      for (size_t j = i + 1; j < all.size(); ++j) {
        if (std::abs(all[i].slice_index - all[j].slice_index) > 1 &&
            iou_bev(all[i].box, all[j].box) > 0.5) {
          usable = false;
          break;
        }
      }
    }
    if (!usable) continue;
    checked += 1;

    NmsConfig cfg;
    cfg.window_k = 1;
    auto stateful = run_stateful(all, n, cfg);
    auto global = global_nms(all, cfg.iou_threshold);
    auto key = [](const Detection& d) {
      return std::make_tuple(d.score, d.box.cx, d.box.cy);
    };
    std::sort(stateful.begin(), stateful.end(),
              [&](const Detection& x, const Detection& y) { return key(x) < key(y); });
    std::sort(global.begin(), global.end(),
              [&](const Detection& x, const Detection& y) { return key(x) < key(y); });
    REQUIRE(oracles::same_detections(stateful, global, true));
  }
  REQUIRE(checked == 50);

  // A chain A-B-C where only neighbors overlap keeps the ends either way.
  const Detection a = oracles::make_det(0.0, 10.0, 4, 2, 0, 3.0, ObjectClass::kVehicle, 0);
  const Detection b = oracles::make_det(1.0, 10.0, 4, 2, 0, 2.0, ObjectClass::kVehicle, 1);
  const Detection c = oracles::make_det(2.0, 10.0, 4, 2, 0, 1.0, ObjectClass::kVehicle, 2);
  REQUIRE(iou_bev(a.box, b.box) > 0.5);
  REQUIRE(iou_bev(b.box, c.box) > 0.5);
  REQUIRE(iou_bev(a.box, c.box) < 0.5);
  NmsConfig cfg;
  cfg.window_k = 1;
  const auto kept = run_stateful({a, b, c}, 3, cfg);
  REQUIRE(kept.size() == 2);
  REQUIRE(kept[0].box.cx == 0.0);
  REQUIRE(kept[1].box.cx == 2.0);
  const auto gkept = global_nms({a, b, c}, 0.5);
  REQUIRE(gkept.size() == 2);
  REQUIRE(gkept[0].box.cx == 0.0);
  REQUIRE(gkept[1].box.cx == 2.0);
}
