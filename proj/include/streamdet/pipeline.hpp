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

#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "streamdet/detector.hpp"
#include "streamdet/error.hpp"
#include "streamdet/eval.hpp"
#include "streamdet/io.hpp"
#include "streamdet/latency.hpp"
#include "streamdet/nms.hpp"
#include "streamdet/scene.hpp"
#include "streamdet/sensor.hpp"

namespace streamdet {

enum class NmsTreatment { kStatefulWindow, kGlobalConcat };

// A named experiment configuration: which detector consumes the slices and
// how their detections are suppressed.
struct Variant {
  std::string name;
  bool full_scan = false;  // baseline: whole-scan detection, n forced to 1
  DetectorMode detector_mode = DetectorMode::kStateless;
  NmsTreatment nms_treatment = NmsTreatment::kStatefulWindow;
  bool force_window_zero = false;  // localized: suppression within a slice only
  bool with_state_flops = false;   // carry models a recurrent head's extra compute
};

inline const std::vector<std::string>& variant_names() {
  static const std::vector<std::string> names = {
      "baseline", "localized", "localized+statefulNMS", "localized+statefulNMS+carry"};
  return names;
}

inline Variant make_variant(const std::string& name) {
  Variant v;
  v.name = name;
  if (name == "baseline") {
    v.full_scan = true;
    v.nms_treatment = NmsTreatment::kGlobalConcat;
    return v;
  }
  if (name == "localized") {
    v.force_window_zero = true;
    return v;
  }
  if (name == "localized+statefulNMS") return v;
  if (name == "localized+statefulNMS+carry") {
    v.detector_mode = DetectorMode::kCarry;
    v.with_state_flops = true;
    return v;
  }
  throw InvalidInput("unknown variant: " + name);
}

// Runs one scan through a variant's detector and NMS, slices in index order.
inline std::vector<Detection> run_detection(const std::vector<Point>& points, int n,
                                            const Variant& v, const DetectorConfig& dcfg,
                                            const NmsConfig& ncfg) {
  if (v.full_scan) {
    return global_nms(detect_full(points, dcfg), ncfg.iou_threshold);
  }
  const auto wedges = slice_points(points, n);
  NmsConfig eff = ncfg;
  if (v.force_window_zero) eff.window_k = 0;
  CarryState carry;
  NmsState nms_state;
  std::vector<Detection> out;
  std::vector<Detection> concatenated;
  for (int i = 0; i < n; ++i) {
    auto [raw, next_carry] =
        detect_slice(wedges[size_t(i)], std::move(carry), dcfg, v.detector_mode);
    carry = std::move(next_carry);
    if (v.nms_treatment == NmsTreatment::kGlobalConcat) {
      concatenated.insert(concatenated.end(), raw.begin(), raw.end());
    } else {
      auto [kept, next_state] = stateful_nms(raw, i, std::move(nms_state), eff);
      nms_state = std::move(next_state);
      out.insert(out.end(), kept.begin(), kept.end());
    }
  }
  if (v.nms_treatment == NmsTreatment::kGlobalConcat) {
    return global_nms(concatenated, eff.iou_threshold);
  }
  return out;
}

struct RunResult {
  std::vector<Detection> detections;
  EvalReport eval;
};

inline RunResult run_variant(const std::vector<Point>& points,
                             const std::vector<ObjectTruth>& truths, const Variant& v,
                             int n, const DetectorConfig& dcfg, const NmsConfig& ncfg,
                             const ClassThresholds& thr = {}) {
  RunResult res;
  res.detections = run_detection(points, n, v, dcfg, ncfg);
  res.eval = evaluate_scan(res.detections, truths, thr);
  return res;
}

// ---------------------------------------------------------------------------
// Sweeps.

struct SweepConfig {
  int scenes_per_seed = 10;
  std::vector<uint64_t> seeds{1, 2, 3, 4, 5};
  std::vector<int> slice_counts{4, 8, 16, 32, 64};
  std::vector<std::string> variants = variant_names();
  NmsConfig nms{0.5, 1};
  ClassThresholds thresholds;
  SceneConfig scene;
  LidarParams lidar;
  DetectorConfig detector;
  LatencyModel latency;
};

// The stock benchmark: 5 seeds x 10 scenes of 20 vehicles + 20 pedestrians.
inline SweepConfig default_benchmark_config() { return SweepConfig{}; }

// A close-range, vehicles-only benchmark at n=32 that makes slice-boundary
// straddling common and populates every subtended-angle bin. Close objects
// span several slices, so the suppression window must cover a whole scan.
inline SweepConfig boundary_benchmark_config() {
  SweepConfig c;
  c.scenes_per_seed = 30;
  c.seeds = {1};
  c.slice_counts = {32};
  c.variants = variant_names();
  c.nms.window_k = 31;
  c.scene.vehicles = 12;
  c.scene.pedestrians = 0;
  c.scene.range_min_m = 4.5;
  c.scene.range_max_m = 70.0;
  c.scene.vehicle_strata = {{4.5, 8.0},   {8.0, 11.2},  {8.0, 11.2},  {11.2, 18.7},
                            {11.2, 18.7}, {11.2, 18.7}, {18.7, 40.0}, {18.7, 40.0},
                            {18.7, 40.0}, {40.0, 70.0}, {40.0, 70.0}, {40.0, 70.0}};
  return c;
}

inline NmsConfig nms_config_from_json(const json& j) {
  NmsConfig c{0.5, 1};
  c.iou_threshold = detail::get_or<double>(j, "iou_threshold", c.iou_threshold);
  c.window_k = detail::get_or<int>(j, "window_k", c.window_k);
  return c;
}

inline SweepConfig sweep_config_from_json(const json& j) {
  SweepConfig c;
  c.scenes_per_seed = detail::get_or<int>(j, "scenes_per_seed", c.scenes_per_seed);
  c.seeds = detail::get_or<std::vector<uint64_t>>(j, "seeds", c.seeds);
  c.slice_counts = detail::get_or<std::vector<int>>(j, "slice_counts", c.slice_counts);
  c.variants = detail::get_or<std::vector<std::string>>(j, "variants", c.variants);
  if (j.contains("nms")) c.nms = nms_config_from_json(j.at("nms"));
  if (j.contains("thresholds")) {
    const json& t = j.at("thresholds");
    c.thresholds.vehicle = detail::get_or<double>(t, "vehicle", c.thresholds.vehicle);
    c.thresholds.pedestrian =
        detail::get_or<double>(t, "pedestrian", c.thresholds.pedestrian);
  }
  if (j.contains("scene")) c.scene = scene_config_from_json(j.at("scene"));
  if (j.contains("lidar")) c.lidar = lidar_params_from_json(j.at("lidar"));
  if (j.contains("detector")) c.detector = detector_config_from_json(j.at("detector"));
  if (j.contains("latency")) c.latency = latency_model_from_json(j.at("latency"));
  if (c.scenes_per_seed < 0) throw InvalidInput("scenes_per_seed must be >= 0");
  if (c.seeds.empty()) throw InvalidInput("sweep needs at least one seed");
  for (int n : c.slice_counts) {
    if (n < 1) throw InvalidInput("slice counts must be >= 1");
  }
  for (const std::string& name : c.variants) make_variant(name);
  return c;
}

// One sweep cell: a (variant, n, seed) evaluated over that seed's scenes.
struct CellResult {
  std::string variant;
  int n = 1;
  uint64_t seed = 0;
  std::string status = "ok";  // "ok" or "failed: <reason>"
  int scans = 0;
  EvalReport eval;
  LatencyRow latency;

  bool ok() const { return status == "ok"; }
};

struct ExperimentReport {
  std::vector<CellResult> cells;       // one per (variant, n, seed)
  std::vector<CellResult> aggregates;  // one per (variant, n), means across seeds
};

namespace detail {

inline std::string cell_filename(const std::string& variant, int n, uint64_t seed) {
  return "cell_" + variant + "_n" + std::to_string(n) + "_s" + std::to_string(seed) +
         ".json";
}

inline json cell_to_json(const CellResult& c) {
  json j;
  j["variant"] = c.variant;
  j["n"] = c.n;
  j["seed"] = c.seed;
  j["status"] = c.status;
  j["scans"] = c.scans;
  if (c.ok()) j["eval"] = eval_report_to_json(c.eval);
  json lat;
  lat["worst_case_ms"] = c.latency.worst_case_ms;
  lat["expected_ms"] = c.latency.expected_ms;
  lat["flops_fraction"] = c.latency.flops_fraction;
  lat["speedup"] = c.latency.speedup;
  j["latency"] = lat;
  return j;
}

inline CellResult cell_from_json(const json& j) {
  CellResult c;
  c.variant = get_or<std::string>(j, "variant", "");
  c.n = get_or<int>(j, "n", 1);
  c.seed = get_or<uint64_t>(j, "seed", 0);
  c.status = get_or<std::string>(j, "status", "failed: unreadable cell");
  c.scans = get_or<int>(j, "scans", 0);
  if (c.ok() && j.contains("eval")) c.eval = eval_report_from_json(j.at("eval"));
  if (j.contains("latency")) {
    const json& lat = j.at("latency");
    c.latency.n = c.n;
    c.latency.worst_case_ms = get_or<double>(lat, "worst_case_ms", 0.0);
    c.latency.expected_ms = get_or<double>(lat, "expected_ms", 0.0);
    c.latency.flops_fraction = get_or<double>(lat, "flops_fraction", 0.0);
    c.latency.speedup = get_or<double>(lat, "speedup", 1.0);
  }
  return c;
}

inline std::string sanitize_csv_field(std::string s) {
  for (char& ch : s) {
    if (ch == ',' || ch == '\n' || ch == '\r') ch = ';';
  }
  return s;
}

inline std::string report_csv_header() {
  return "variant,n,seed,status,scans,vehicle_truths,vehicle_ap,pedestrian_truths,"
         "pedestrian_ap,map,tp,fp,fn,worst_case_ms,expected_ms,flops_fraction,speedup\n";
}

inline std::string report_csv_row(const CellResult& c, const std::string& seed_field) {
  std::string out;
  out += c.variant;
  out += ',';
  out += std::to_string(c.n);
  out += ',';
  out += seed_field;
  out += ',';
  out += sanitize_csv_field(c.status);
  out += ',';
  out += std::to_string(c.scans);
  out += ',';
  out += std::to_string(c.eval.vehicle.truths);
  out += ',';
  out += format_optional(c.eval.vehicle.ap);
  out += ',';
  out += std::to_string(c.eval.pedestrian.truths);
  out += ',';
  out += format_optional(c.eval.pedestrian.ap);
  out += ',';
  out += format_optional(c.eval.map);
  out += ',';
  out += std::to_string(c.eval.vehicle.tp + c.eval.pedestrian.tp);
  out += ',';
  out += std::to_string(c.eval.vehicle.fp + c.eval.pedestrian.fp);
  out += ',';
  out += std::to_string(c.eval.vehicle.fn + c.eval.pedestrian.fn);
  out += ',';
  out += format_double(c.latency.worst_case_ms);
  out += ',';
  out += format_double(c.latency.expected_ms);
  out += ',';
  out += format_double(c.latency.flops_fraction);
  out += ',';
  out += format_double(c.latency.speedup);
  out += '\n';
  return out;
}

inline std::optional<double> mean_of(const std::vector<std::optional<double>>& values) {
  double sum = 0.0;
  int cnt = 0;
  for (const auto& v : values) {
    if (v.has_value()) {
      sum += *v;
      cnt += 1;
    }
  }
  if (cnt == 0) return std::nullopt;
  return sum / double(cnt);
}

inline ClassEval aggregate_class(const std::vector<const ClassEval*>& parts) {
  ClassEval agg;
  std::vector<std::optional<double>> aps;
  std::array<std::vector<std::optional<double>>, kNumAngleBins> bin_aps;
  for (const ClassEval* ce : parts) {
    agg.truths += ce->truths;
    agg.tp += ce->tp;
    agg.fp += ce->fp;
    agg.fn += ce->fn;
    aps.push_back(ce->ap);
    for (int b = 0; b < kNumAngleBins; ++b) {
      agg.bin_truths[size_t(b)] += ce->bin_truths[size_t(b)];
      bin_aps[size_t(b)].push_back(ce->bin_ap[size_t(b)]);
    }
  }
  agg.ap = mean_of(aps);
  for (int b = 0; b < kNumAngleBins; ++b) {
    agg.bin_ap[size_t(b)] = mean_of(bin_aps[size_t(b)]);
  }
  return agg;
}

}  // namespace detail

// Scenes and scans for one seed, shared by every (variant, n) cell.
struct SeedData {
  std::vector<Scene> scenes;
  std::vector<std::vector<Point>> points;
};

inline SeedData build_seed_data(const SweepConfig& cfg, uint64_t seed) {
  SeedData data;
  data.scenes.reserve(size_t(cfg.scenes_per_seed));
  data.points.reserve(size_t(cfg.scenes_per_seed));
  for (int s = 0; s < cfg.scenes_per_seed; ++s) {
    const uint64_t scene_seed = derive_seed(seed, uint64_t(s));
    Scene scene = generate_scene(cfg.scene, scene_seed);
    const RangeImage img = simulate_scan(scene, cfg.lidar, scene_seed);
    data.points.push_back(range_image_to_points(img));
    data.scenes.push_back(std::move(scene));
  }
  return data;
}

inline CellResult compute_cell(const SweepConfig& cfg, const Variant& v, int n,
                               uint64_t seed, const SeedData& data) {
  CellResult cell;
  cell.variant = v.name;
  cell.n = n;
  cell.seed = seed;
  cell.scans = cfg.scenes_per_seed;
  cell.latency.n = n;
  cell.latency.worst_case_ms = worst_case_latency(cfg.latency, n);
  cell.latency.expected_ms = expected_latency(cfg.latency, n);
  cell.latency.flops_fraction = peak_flops_fraction(cfg.latency, n, v.with_state_flops);
  cell.latency.speedup = worst_case_latency(cfg.latency, 1) / cell.latency.worst_case_ms;
  try {
    PooledEval pool(cfg.thresholds);
    for (int s = 0; s < cfg.scenes_per_seed; ++s) {
      const std::vector<Detection> dets =
          run_detection(data.points[size_t(s)], n, v, cfg.detector, cfg.nms);
      pool.add_scan(s, dets, data.scenes[size_t(s)].objects);
    }
    cell.eval = pool.report();
  } catch (const Error& e) {
    cell.status = std::string("failed: ") + e.what();
  }
  return cell;
}

// Full factorial over (variant, n, seed). Each finished cell is stored as a
// JSON file in out_dir; rerunning skips cells whose file already exists, so
// an interrupted sweep resumes where it stopped. Failed cells are recorded
// with their reason and do not abort the sweep. Writes report.csv (one row
// per cell plus per-(variant, n) rows of means across seeds, seed column
// "all") and bins.csv (per-bin APs of the aggregate rows).
inline ExperimentReport sweep(const SweepConfig& cfg,
                              const std::filesystem::path& out_dir) {
  if (cfg.seeds.empty()) throw InvalidInput("sweep needs at least one seed");
  for (int n : cfg.slice_counts) {
    if (n < 1) throw InvalidInput("slice counts must be >= 1");
  }
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create output directory: " + out_dir.string());

  std::map<uint64_t, SeedData> cache;
  auto seed_data = [&](uint64_t seed) -> const SeedData& {
    auto it = cache.find(seed);
    if (it == cache.end()) it = cache.emplace(seed, build_seed_data(cfg, seed)).first;
    return it->second;
  };

  ExperimentReport rep;
  for (const std::string& name : cfg.variants) {
    const Variant v = make_variant(name);
    const std::vector<int> ns = v.full_scan ? std::vector<int>{1} : cfg.slice_counts;
    for (int n : ns) {
      for (uint64_t seed : cfg.seeds) {
        const std::filesystem::path cell_path =
            out_dir / detail::cell_filename(name, n, seed);
        CellResult cell;
        if (std::filesystem::exists(cell_path)) {
          cell = detail::cell_from_json(parse_json_file(cell_path));
        } else {
          CellResult computed;
          try {
            computed = compute_cell(cfg, v, n, seed, seed_data(seed));
          } catch (const Error& e) {
            computed.variant = name;
            computed.n = n;
            computed.seed = seed;
            computed.status = std::string("failed: ") + e.what();
          }
          write_text_file(cell_path, detail::cell_to_json(computed).dump(2) + "\n");
          cell = std::move(computed);
        }
        rep.cells.push_back(std::move(cell));
      }
      // Aggregate across seeds for this (variant, n).
      std::vector<const CellResult*> group;
      for (const CellResult& c : rep.cells) {
        if (c.variant == name && c.n == n) group.push_back(&c);
      }
      CellResult agg;
      agg.variant = name;
      agg.n = n;
      int failed = 0;
      std::vector<const ClassEval*> veh, ped;
      std::vector<std::optional<double>> maps;
      for (const CellResult* c : group) {
        if (!c->ok()) {
          failed += 1;
          continue;
        }
        agg.scans += c->scans;
        veh.push_back(&c->eval.vehicle);
        ped.push_back(&c->eval.pedestrian);
        maps.push_back(c->eval.map);
      }
      agg.status = failed == 0 ? "ok"
                               : "failed: " + std::to_string(failed) + " of " +
                                     std::to_string(group.size()) + " cells failed";
      agg.eval.vehicle = detail::aggregate_class(veh);
      agg.eval.pedestrian = detail::aggregate_class(ped);
      agg.eval.map = detail::mean_of(maps);
      agg.latency = group.empty() ? LatencyRow{} : group.front()->latency;
      rep.aggregates.push_back(std::move(agg));
    }
  }

  std::string report_csv = detail::report_csv_header();
  for (const CellResult& c : rep.cells) {
    report_csv += detail::report_csv_row(c, std::to_string(c.seed));
  }
  for (const CellResult& c : rep.aggregates) {
    report_csv += detail::report_csv_row(c, "all");
  }
  write_text_file(out_dir / "report.csv", report_csv);

  std::string bins_csv = bins_csv_header();
  for (const CellResult& c : rep.aggregates) {
    bins_csv += bins_csv_rows(c.variant, c.n, c.eval);
  }
  write_text_file(out_dir / "bins.csv", bins_csv);
  return rep;
}

}  // namespace streamdet
