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

#include <vector>

#include "streamdet/error.hpp"

namespace streamdet {

// Analytic pipelining model. Slicing a rotation into n wedges lets inference
// start when a wedge completes instead of waiting out the full period, so
// latency from first measurement to detection shrinks by roughly 1/n, plus a
// fixed per-slice overhead once the pipeline is actually sliced.
struct LatencyModel {
  double scan_period_ms = 100.0;     // one full rotation at 10 Hz
  double full_inference_ms = 16.0;   // whole-scan model inference time
  double per_slice_overhead_ms = 2.5;
  double rnn_flops_fraction = 0.02;  // extra peak compute of a stateful model
};

inline void validate_latency_model(const LatencyModel& m) {
  if (!(m.scan_period_ms > 0.0)) throw InvalidInput("scan_period_ms must be > 0");
  if (m.full_inference_ms < 0.0 || m.per_slice_overhead_ms < 0.0 ||
      m.rnn_flops_fraction < 0.0) {
    throw InvalidInput("latency model parameters must be non-negative");
  }
}

// Time from the first measurement of an object at the start of a slice to the
// end of that slice's inference.
inline double worst_case_latency(const LatencyModel& m, int n) {
  validate_latency_model(m);
  if (n < 1) throw InvalidInput("slice count must be >= 1");
  const double overhead = n > 1 ? m.per_slice_overhead_ms : 0.0;
  return (m.scan_period_ms + m.full_inference_ms) / n + overhead;
}

// Expectation over a measurement uniformly distributed within its slice.
inline double expected_latency(const LatencyModel& m, int n) {
  validate_latency_model(m);
  if (n < 1) throw InvalidInput("slice count must be >= 1");
  const double overhead = n > 1 ? m.per_slice_overhead_ms : 0.0;
  return m.scan_period_ms / n / 2.0 + m.full_inference_ms / n + overhead;
}

// Peak compute of one inference invocation as a fraction of the whole-scan
// model's; a stateful model adds its recurrent head on top.
inline double peak_flops_fraction(const LatencyModel& m, int n, bool with_state) {
  validate_latency_model(m);
  if (n < 1) throw InvalidInput("slice count must be >= 1");
  return 1.0 / n + (with_state ? m.rnn_flops_fraction : 0.0);
}

struct LatencyRow {
  int n = 1;
  double worst_case_ms = 0.0;
  double expected_ms = 0.0;
  double flops_fraction = 0.0;
  double speedup = 1.0;  // worst_case(1) / worst_case(n)
};

struct LatencyReport {
  std::vector<LatencyRow> rows;
};

inline LatencyReport latency_report(const LatencyModel& m, const std::vector<int>& ns,
                                    bool with_state = false) {
  if (ns.empty()) throw InvalidInput("latency report needs at least one slice count");
  const double base = worst_case_latency(m, 1);
  LatencyReport rep;
  rep.rows.reserve(ns.size());
  for (int n : ns) {
    LatencyRow row;
    row.n = n;
    row.worst_case_ms = worst_case_latency(m, n);
    row.expected_ms = expected_latency(m, n);
    row.flops_fraction = peak_flops_fraction(m, n, with_state);
    row.speedup = base / row.worst_case_ms;
    rep.rows.push_back(row);
  }
  return rep;
}

}  // namespace streamdet
