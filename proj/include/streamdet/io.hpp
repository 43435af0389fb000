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

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "streamdet/detector.hpp"
#include "streamdet/error.hpp"
#include "streamdet/eval.hpp"
#include "streamdet/latency.hpp"
#include "streamdet/scene.hpp"
#include "streamdet/sensor.hpp"

namespace streamdet {

static_assert(std::endian::native == std::endian::little,
              "file formats are little-endian; big-endian hosts are unsupported");

using json = nlohmann::json;

// Fixed-format float printing so repeated runs emit byte-identical text.
inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return std::string(buf);
}

inline std::string format_optional(const std::optional<double>& v) {
  return v.has_value() ? format_double(*v) : std::string();
}

inline void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  out << text;
  if (!out) throw IoError("write failed: " + path.string());
}

inline std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("read failed: " + path.string());
  return ss.str();
}

inline json parse_json_file(const std::filesystem::path& path) {
  try {
    return json::parse(read_text_file(path));
  } catch (const json::parse_error& e) {
    throw IoError("invalid JSON in " + path.string() + ": " + e.what());
  }
}

namespace detail {

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("config field '") + key + "': " + e.what());
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Point cloud: headerless little-endian float32 records of (x, y, z, intensity).

inline void write_point_cloud_bin(const std::filesystem::path& path,
                                  const std::vector<Point>& points) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  for (const Point& p : points) {
    const float rec[4] = {float(p.x), float(p.y), float(p.z), float(p.intensity)};
    out.write(reinterpret_cast<const char*>(rec), sizeof rec);
  }
  if (!out) throw IoError("write failed: " + path.string());
}

inline std::vector<Point> read_point_cloud_bin(const std::filesystem::path& path) {
  const std::string raw = read_text_file(path);
  if (raw.size() % 16 != 0) {
    throw IoError("point cloud size not a multiple of 16 bytes: " + path.string());
  }
  std::vector<Point> points;
  points.reserve(raw.size() / 16);
  for (size_t off = 0; off < raw.size(); off += 16) {
    float rec[4];
    std::memcpy(rec, raw.data() + off, sizeof rec);
    Point p;
    p.x = rec[0];
    p.y = rec[1];
    p.z = rec[2];
    p.intensity = rec[3];
    p.azimuth = wrap_azimuth(std::atan2(p.y, p.x));
    points.push_back(p);
  }
  return points;
}

// ---------------------------------------------------------------------------
// Range image: a JSON header {rows, cols, inclinations, data} next to a binary
// file of row-major float32 ranges followed by row-major float32 intensities.

inline void write_range_image(const std::filesystem::path& json_path,
                              const RangeImage& img) {
  validate_range_image(img);
  std::filesystem::path bin_path = json_path;
  bin_path.replace_extension(".bin");
  json header;
  header["rows"] = img.rows;
  header["cols"] = img.cols;
  header["inclinations"] = img.inclinations;
  header["data"] = bin_path.filename().string();
  write_text_file(json_path, header.dump(2) + "\n");

  std::ofstream out(bin_path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + bin_path.string());
  auto write_plane = [&](const std::vector<float>& plane) {
    out.write(reinterpret_cast<const char*>(plane.data()),
              std::streamsize(plane.size() * sizeof(float)));
  };
  write_plane(img.ranges);
  write_plane(img.intensities);
  if (!out) throw IoError("write failed: " + bin_path.string());
}

inline RangeImage read_range_image(const std::filesystem::path& json_path) {
  const json header = parse_json_file(json_path);
  RangeImage img;
  img.rows = detail::get_or<int>(header, "rows", 0);
  img.cols = detail::get_or<int>(header, "cols", 0);
  img.inclinations = detail::get_or<std::vector<double>>(header, "inclinations", {});
  const std::string data = detail::get_or<std::string>(header, "data", "");
  if (data.empty()) throw IoError("range image header missing 'data': " + json_path.string());
  const std::filesystem::path bin_path = json_path.parent_path() / data;
  const std::string raw = read_text_file(bin_path);
  const size_t cells = size_t(img.rows) * size_t(img.cols);
  if (raw.size() != cells * 2 * sizeof(float)) {
    throw IoError("range image data size mismatch: " + bin_path.string());
  }
  img.ranges.resize(cells);
  img.intensities.resize(cells);
  std::memcpy(img.ranges.data(), raw.data(), cells * sizeof(float));
  std::memcpy(img.intensities.data(), raw.data() + cells * sizeof(float),
              cells * sizeof(float));
  validate_range_image(img);
  return img;
}

// ---------------------------------------------------------------------------
// Scene files: a JSON array of ground-truth objects.

inline json truth_to_json(const ObjectTruth& t) {
  json j;
  j["id"] = t.id;
  j["class"] = to_string(t.cls);
  j["cx"] = t.box.cx;
  j["cy"] = t.box.cy;
  j["cz"] = t.box.cz;
  j["length"] = t.box.length;
  j["width"] = t.box.width;
  j["height"] = t.box.height;
  j["heading"] = t.box.heading;
  return j;
}

inline ObjectTruth truth_from_json(const json& j) {
  ObjectTruth t;
  t.id = detail::get_or<int>(j, "id", 0);
  t.cls = object_class_from_string(detail::get_or<std::string>(j, "class", ""));
  t.box.cx = detail::get_or<double>(j, "cx", 0.0);
  t.box.cy = detail::get_or<double>(j, "cy", 0.0);
  t.box.cz = detail::get_or<double>(j, "cz", 0.0);
  t.box.length = detail::get_or<double>(j, "length", 0.0);
  t.box.width = detail::get_or<double>(j, "width", 0.0);
  t.box.height = detail::get_or<double>(j, "height", 0.0);
  t.box.heading = detail::get_or<double>(j, "heading", 0.0);
  validate_box(t.box);
  return t;
}

inline void write_scene(const std::filesystem::path& path,
                        const std::vector<ObjectTruth>& objects) {
  json arr = json::array();
  for (const ObjectTruth& t : objects) arr.push_back(truth_to_json(t));
  write_text_file(path, arr.dump(2) + "\n");
}

inline std::vector<ObjectTruth> read_scene(const std::filesystem::path& path) {
  const json arr = parse_json_file(path);
  if (!arr.is_array()) throw IoError("scene file must be a JSON array: " + path.string());
  std::vector<ObjectTruth> objects;
  objects.reserve(arr.size());
  for (const json& j : arr) objects.push_back(truth_from_json(j));
  return objects;
}

// ---------------------------------------------------------------------------
// Detections: JSON lines, one object per detection.

inline json detection_to_json(int scan_id, const Detection& d) {
  json j;
  j["scan_id"] = scan_id;
  j["slice"] = d.slice_index;
  j["class"] = to_string(d.cls);
  j["score"] = d.score;
  j["cx"] = d.box.cx;
  j["cy"] = d.box.cy;
  j["cz"] = d.box.cz;
  j["l"] = d.box.length;
  j["w"] = d.box.width;
  j["h"] = d.box.height;
  j["heading"] = d.box.heading;
  return j;
}

inline std::string detections_to_jsonl(int scan_id, const std::vector<Detection>& dets) {
  std::string out;
  for (const Detection& d : dets) {
    out += detection_to_json(scan_id, d).dump();
    out += '\n';
  }
  return out;
}

struct DetRow {
  int scan_id = 0;
  Detection det;
};

inline std::vector<DetRow> read_detections_jsonl(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open: " + path.string());
  std::vector<DetRow> rows;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw IoError("invalid JSON line " + std::to_string(lineno) + " in " +
                    path.string() + ": " + e.what());
    }
    DetRow row;
    row.scan_id = detail::get_or<int>(j, "scan_id", 0);
    row.det.slice_index = detail::get_or<int>(j, "slice", -1);
    row.det.cls = object_class_from_string(detail::get_or<std::string>(j, "class", ""));
    row.det.score = detail::get_or<double>(j, "score", 0.0);
    row.det.box.cx = detail::get_or<double>(j, "cx", 0.0);
    row.det.box.cy = detail::get_or<double>(j, "cy", 0.0);
    row.det.box.cz = detail::get_or<double>(j, "cz", 0.0);
    row.det.box.length = detail::get_or<double>(j, "l", 0.0);
    row.det.box.width = detail::get_or<double>(j, "w", 0.0);
    row.det.box.height = detail::get_or<double>(j, "h", 0.0);
    row.det.box.heading = detail::get_or<double>(j, "heading", 0.0);
    rows.push_back(row);
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Evaluation reports.

inline const char* angle_bin_name(int b) {
  static const char* names[kNumAngleBins] = {"0-5", "5-15", "15-25", "25-35", ">=35"};
  return names[b];
}

inline json class_eval_to_json(const ClassEval& ce) {
  json j;
  j["truths"] = ce.truths;
  j["tp"] = ce.tp;
  j["fp"] = ce.fp;
  j["fn"] = ce.fn;
  j["ap"] = ce.ap.has_value() ? json(*ce.ap) : json(nullptr);
  json bins = json::array();
  for (int b = 0; b < kNumAngleBins; ++b) {
    json jb;
    jb["bin"] = angle_bin_name(b);
    jb["truths"] = ce.bin_truths[size_t(b)];
    jb["ap"] = ce.bin_ap[size_t(b)].has_value() ? json(*ce.bin_ap[size_t(b)]) : json(nullptr);
    bins.push_back(jb);
  }
  j["bins"] = bins;
  return j;
}

inline json eval_report_to_json(const EvalReport& rep) {
  json j;
  j["map"] = rep.map.has_value() ? json(*rep.map) : json(nullptr);
  j["vehicle"] = class_eval_to_json(rep.vehicle);
  j["pedestrian"] = class_eval_to_json(rep.pedestrian);
  return j;
}

inline ClassEval class_eval_from_json(const json& j) {
  ClassEval ce;
  ce.truths = detail::get_or<int>(j, "truths", 0);
  ce.tp = detail::get_or<int>(j, "tp", 0);
  ce.fp = detail::get_or<int>(j, "fp", 0);
  ce.fn = detail::get_or<int>(j, "fn", 0);
  if (j.contains("ap") && !j.at("ap").is_null()) ce.ap = j.at("ap").get<double>();
  const json& bins = j.at("bins");
  if (!bins.is_array() || int(bins.size()) != kNumAngleBins) {
    throw IoError("class eval needs exactly " + std::to_string(kNumAngleBins) + " bins");
  }
  for (int b = 0; b < kNumAngleBins; ++b) {
    const json& jb = bins[size_t(b)];
    ce.bin_truths[size_t(b)] = detail::get_or<int>(jb, "truths", 0);
    if (jb.contains("ap") && !jb.at("ap").is_null()) {
      ce.bin_ap[size_t(b)] = jb.at("ap").get<double>();
    }
  }
  return ce;
}

inline EvalReport eval_report_from_json(const json& j) {
  EvalReport rep;
  if (j.contains("map") && !j.at("map").is_null()) rep.map = j.at("map").get<double>();
  rep.vehicle = class_eval_from_json(j.at("vehicle"));
  rep.pedestrian = class_eval_from_json(j.at("pedestrian"));
  return rep;
}

inline std::string bins_csv_header() { return "variant,n,class,bin,truths,ap\n"; }

inline std::string bins_csv_rows(const std::string& variant, int n,
                                 const EvalReport& rep) {
  std::string out;
  for (ObjectClass cls : {ObjectClass::kVehicle, ObjectClass::kPedestrian}) {
    const ClassEval& ce = rep.of(cls);
    for (int b = 0; b < kNumAngleBins; ++b) {
      out += variant;
      out += ',';
      out += std::to_string(n);
      out += ',';
      out += to_string(cls);
      out += ',';
      out += angle_bin_name(b);
      out += ',';
      out += std::to_string(ce.bin_truths[size_t(b)]);
      out += ',';
      out += format_optional(ce.bin_ap[size_t(b)]);
      out += '\n';
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Latency reports.

inline std::string latency_csv(const LatencyReport& rep) {
  std::string out = "n,worst_case_ms,expected_ms,flops_fraction,speedup\n";
  for (const LatencyRow& r : rep.rows) {
    out += std::to_string(r.n);
    out += ',';
    out += format_double(r.worst_case_ms);
    out += ',';
    out += format_double(r.expected_ms);
    out += ',';
    out += format_double(r.flops_fraction);
    out += ',';
    out += format_double(r.speedup);
    out += '\n';
  }
  return out;
}

inline json latency_report_to_json(const LatencyReport& rep) {
  json rows = json::array();
  for (const LatencyRow& r : rep.rows) {
    json j;
    j["n"] = r.n;
    j["worst_case_ms"] = r.worst_case_ms;
    j["expected_ms"] = r.expected_ms;
    j["flops_fraction"] = r.flops_fraction;
    j["speedup"] = r.speedup;
    rows.push_back(j);
  }
  return json{{"rows", rows}};
}

// ---------------------------------------------------------------------------
// Config parsing. Every field is optional and falls back to the compiled-in
// default, so {} is a valid config.

inline LidarParams lidar_params_from_json(const json& j) {
  LidarParams p;
  p.rows = detail::get_or<int>(j, "rows", p.rows);
  p.cols = detail::get_or<int>(j, "cols", p.cols);
  p.inclination_min_rad = detail::get_or<double>(j, "inclination_min_deg",
                                                 p.inclination_min_rad * 180.0 / kPi) *
                          kPi / 180.0;
  p.inclination_max_rad = detail::get_or<double>(j, "inclination_max_deg",
                                                 p.inclination_max_rad * 180.0 / kPi) *
                          kPi / 180.0;
  p.max_range_m = detail::get_or<double>(j, "max_range_m", p.max_range_m);
  p.range_noise_sigma_m =
      detail::get_or<double>(j, "range_noise_sigma_m", p.range_noise_sigma_m);
  return p;
}

inline std::vector<RangeStratum> strata_from_json(const json& j, const char* key,
                                                  std::vector<RangeStratum> fallback) {
  if (!j.contains(key)) return fallback;
  const json& arr = j.at(key);
  if (!arr.is_array()) throw InvalidInput(std::string(key) + " must be an array");
  std::vector<RangeStratum> out;
  for (const json& e : arr) {
    if (!e.is_array() || e.size() != 2) {
      throw InvalidInput(std::string(key) + " entries must be [lo, hi]");
    }
    out.push_back({e[0].get<double>(), e[1].get<double>()});
  }
  return out;
}

inline SceneConfig scene_config_from_json(const json& j) {
  SceneConfig c;
  c.vehicles = detail::get_or<int>(j, "vehicles", c.vehicles);
  c.pedestrians = detail::get_or<int>(j, "pedestrians", c.pedestrians);
  c.range_min_m = detail::get_or<double>(j, "range_min_m", c.range_min_m);
  c.range_max_m = detail::get_or<double>(j, "range_max_m", c.range_max_m);
  c.vehicle_strata = strata_from_json(j, "vehicle_strata", c.vehicle_strata);
  c.pedestrian_strata = strata_from_json(j, "pedestrian_strata", c.pedestrian_strata);
  c.ground_z_m = detail::get_or<double>(j, "ground_z_m", c.ground_z_m);
  c.min_separation_m = detail::get_or<double>(j, "min_separation_m", c.min_separation_m);
  c.stratified_azimuth = detail::get_or<bool>(j, "stratified_azimuth", c.stratified_azimuth);
  c.bounds_m = detail::get_or<double>(j, "bounds_m", c.bounds_m);
  c.max_attempts = detail::get_or<int>(j, "max_attempts", c.max_attempts);
  return c;
}

inline DetectorConfig detector_config_from_json(const json& j) {
  DetectorConfig c;
  c.eps_m = detail::get_or<double>(j, "eps_m", c.eps_m);
  c.min_points = detail::get_or<int>(j, "min_points", c.min_points);
  c.boundary_band_m = detail::get_or<double>(j, "boundary_band_m", c.boundary_band_m);
  c.boundary_band_rad =
      detail::get_or<double>(j, "boundary_band_rad", c.boundary_band_rad);
  c.score_tau = detail::get_or<double>(j, "score_tau", c.score_tau);
  c.pedestrian_max_dim_m =
      detail::get_or<double>(j, "pedestrian_max_dim_m", c.pedestrian_max_dim_m);
  c.truncated_pedestrian_max_dim_m = detail::get_or<double>(
      j, "truncated_pedestrian_max_dim_m", c.truncated_pedestrian_max_dim_m);
  c.class_prior_completion =
      detail::get_or<bool>(j, "class_prior_completion", c.class_prior_completion);
  c.vehicle_length_prior_m =
      detail::get_or<double>(j, "vehicle_length_prior_m", c.vehicle_length_prior_m);
  c.vehicle_width_prior_m =
      detail::get_or<double>(j, "vehicle_width_prior_m", c.vehicle_width_prior_m);
  c.vehicle_long_face_min_m =
      detail::get_or<double>(j, "vehicle_long_face_min_m", c.vehicle_long_face_min_m);
  c.pedestrian_extent_prior_m =
      detail::get_or<double>(j, "pedestrian_extent_prior_m", c.pedestrian_extent_prior_m);
  c.depth_sliver_ratio =
      detail::get_or<double>(j, "depth_sliver_ratio", c.depth_sliver_ratio);
  return c;
}

inline LatencyModel latency_model_from_json(const json& j) {
  LatencyModel m;
  m.scan_period_ms = detail::get_or<double>(j, "scan_period_ms", m.scan_period_ms);
  m.full_inference_ms = detail::get_or<double>(j, "full_inference_ms", m.full_inference_ms);
  m.per_slice_overhead_ms =
      detail::get_or<double>(j, "per_slice_overhead_ms", m.per_slice_overhead_ms);
  m.rnn_flops_fraction =
      detail::get_or<double>(j, "rnn_flops_fraction", m.rnn_flops_fraction);
  return m;
}

}  // namespace streamdet
