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

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "streamdet/streamdet.hpp"

namespace {

namespace fs = std::filesystem;
using namespace streamdet;

std::string indexed_name(const char* stem, int index, const char* ext) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s_%03d%s", stem, index, ext);
  return std::string(buf);
}

void do_gen(const std::string& config_path, const std::string& out_dir, uint64_t seed) {
  const SweepConfig cfg = sweep_config_from_json(parse_json_file(config_path));
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create output directory: " + out_dir);
  for (int s = 0; s < cfg.scenes_per_seed; ++s) {
    const uint64_t scene_seed = derive_seed(seed, uint64_t(s));
    const Scene scene = generate_scene(cfg.scene, scene_seed);
    const RangeImage img = simulate_scan(scene, cfg.lidar, scene_seed);
    const fs::path out(out_dir);
    write_scene(out / indexed_name("scene", s, ".json"), scene.objects);
    write_range_image(out / indexed_name("scan", s, ".json"), img);
    write_point_cloud_bin(out / indexed_name("cloud", s, ".bin"),
                          range_image_to_points(img));
  }
  std::cout << "wrote " << cfg.scenes_per_seed << " scenes (scene/scan/cloud files) to "
            << out_dir << "\n";
}

std::string ap_or_na(const std::optional<double>& v) {
  return v.has_value() ? format_double(*v) : std::string("n/a");
}

void do_run(const std::string& scan_path, const std::string& truth_path,
            const std::string& variant_name, int slices, int window, double iou,
            const std::string& out_dir) {
  std::vector<Point> points;
  if (fs::path(scan_path).extension() == ".json") {
    points = range_image_to_points(read_range_image(scan_path));
  } else {
    points = read_point_cloud_bin(scan_path);
  }
  const std::vector<ObjectTruth> truths = read_scene(truth_path);
  const Variant variant = make_variant(variant_name);
  NmsConfig ncfg;
  ncfg.iou_threshold = iou;
  ncfg.window_k = window;
  const RunResult result =
      run_variant(points, truths, variant, slices, DetectorConfig{}, ncfg);

  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create output directory: " + out_dir);
  const fs::path out(out_dir);
  write_text_file(out / "detections.jsonl", detections_to_jsonl(0, result.detections));
  write_text_file(out / "eval.json", eval_report_to_json(result.eval).dump(2) + "\n");
  std::cout << "detections: " << result.detections.size() << "\n"
            << "vehicle AP: " << ap_or_na(result.eval.vehicle.ap) << "\n"
            << "pedestrian AP: " << ap_or_na(result.eval.pedestrian.ap) << "\n"
            << "mAP: " << ap_or_na(result.eval.map) << "\n";
}

void do_sweep(const std::string& config_path, const std::string& out_dir) {
  const SweepConfig cfg = sweep_config_from_json(parse_json_file(config_path));
  const ExperimentReport rep = sweep(cfg, out_dir);
  int failed = 0;
  for (const CellResult& c : rep.cells) {
    if (!c.ok()) failed += 1;
  }
  std::cout << rep.cells.size() << " cells (" << failed << " failed), report at "
            << (fs::path(out_dir) / "report.csv").string() << "\n";
  for (const CellResult& c : rep.aggregates) {
    std::cout << c.variant << " n=" << c.n << " mAP=" << ap_or_na(c.eval.map) << "\n";
  }
}

void do_latency(double scan_period, double full_infer, double overhead,
                const std::vector<int>& ns, const std::string& out_path) {
  LatencyModel model;
  model.scan_period_ms = scan_period;
  model.full_inference_ms = full_infer;
  model.per_slice_overhead_ms = overhead;
  const LatencyReport rep = latency_report(model, ns);
  if (!out_path.empty()) {
    if (fs::path(out_path).extension() == ".json") {
      write_text_file(out_path, latency_report_to_json(rep).dump(2) + "\n");
    } else {
      write_text_file(out_path, latency_csv(rep));
    }
  }
  std::cout << latency_csv(rep);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"streaming wedge-sliced detection pipeline"};
  app.require_subcommand(1);

  std::string gen_config, gen_out;
  uint64_t gen_seed = 1;
  CLI::App* gen = app.add_subcommand("gen", "generate scenes and simulated scans");
  gen->add_option("--config", gen_config, "sweep/scene config JSON")->required();
  gen->add_option("--out", gen_out, "output directory")->required();
  gen->add_option("--seed", gen_seed, "scene seed");

  std::string run_scan, run_truth, run_variant_name, run_out;
  int run_slices = 1;
  int run_window = 1;
  double run_iou = 0.5;
  CLI::App* run = app.add_subcommand("run", "run one variant on one scan");
  run->add_option("--scan", run_scan, "range image .json or point cloud .bin")
      ->required();
  run->add_option("--truth", run_truth, "scene truth JSON")->required();
  run->add_option("--variant", run_variant_name, "variant name")->required();
  run->add_option("--slices", run_slices, "slice count n")->required();
  run->add_option("--nms-window", run_window, "stateful NMS window k");
  run->add_option("--iou", run_iou, "NMS IoU threshold");
  run->add_option("--out", run_out, "output directory")->required();

  std::string sweep_config, sweep_out;
  CLI::App* sw = app.add_subcommand("sweep", "full factorial experiment sweep");
  sw->add_option("--config", sweep_config, "sweep config JSON")->required();
  sw->add_option("--out", sweep_out, "output directory")->required();

  double lat_period = 100.0, lat_infer = 16.0, lat_overhead = 2.5;
  std::vector<int> lat_ns;
  std::string lat_out;
  CLI::App* lat = app.add_subcommand("latency", "analytic latency/compute model");
  lat->add_option("--scan-period-ms", lat_period, "rotation period");
  lat->add_option("--full-infer-ms", lat_infer, "whole-scan inference time");
  lat->add_option("--overhead-ms", lat_overhead, "per-slice overhead");
  lat->add_option("--slices", lat_ns, "comma-separated slice counts")
      ->delimiter(',')
      ->required();
  lat->add_option("--out", lat_out, "output .csv or .json file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (gen->parsed()) {
      do_gen(gen_config, gen_out, gen_seed);
    } else if (run->parsed()) {
      do_run(run_scan, run_truth, run_variant_name, run_slices, run_window, run_iou,
             run_out);
    } else if (sw->parsed()) {
      do_sweep(sweep_config, sweep_out);
    } else if (lat->parsed()) {
      do_latency(lat_period, lat_infer, lat_overhead, lat_ns, lat_out);
    }
  } catch (const ContractViolation& e) {
    std::cerr << "contract violation: " << e.what() << "\n";
    return 1;
  } catch (const PlacementError& e) {
    std::cerr << "placement error: " << e.what() << "\n";
    return 1;
  } catch (const UndefinedMetric& e) {
    std::cerr << "undefined metric: " << e.what() << "\n";
    return 1;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return 2;
  } catch (const InvalidInput& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
