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

#include <cmath>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "streamdet/streamdet.hpp"

using namespace streamdet;

TEST_CASE("rng determinism") {
  Rng a(12345);
  Rng b(12345);
  for (int i = 0; i < 1000; ++i) REQUIRE(a.next_u64() == b.next_u64());

  Rng c(12345);
  Rng d(12346);
  int differing = 0;
  for (int i = 0; i < 100; ++i) differing += c.next_u64() != d.next_u64() ? 1 : 0;
  REQUIRE(differing == 100);

  REQUIRE(derive_seed(7, 1) != derive_seed(7, 2));
  REQUIRE(derive_seed(7, 1) == derive_seed(7, 1));
}

TEST_CASE("rng ranges") {
  Rng rng(99);
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.uniform(2.0, 5.0);
    REQUIRE(u >= 2.0);
    REQUIRE(u < 5.0);
  }
  std::vector<int> hits(5, 0);
  for (int i = 0; i < 10000; ++i) {
    const int v = rng.uniform_int(3, 7);
    REQUIRE(v >= 3);
    REQUIRE(v <= 7);
    hits[size_t(v - 3)] += 1;
  }
  for (int h : hits) REQUIRE(h > 0);
}

TEST_CASE("gaussian moments") {
  Rng rng(5);
  double sum = 0.0;
  double sum2 = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double g = rng.gaussian();
    sum += g;
    sum2 += g * g;
  }
  REQUIRE(std::abs(sum / n) < 0.02);
  REQUIRE(std::abs(sum2 / n - 1.0) < 0.03);
}

TEST_CASE("cell gaussian is a pure function") {
  REQUIRE(cell_gaussian(11, 0) == cell_gaussian(11, 0));
  REQUIRE(cell_gaussian(11, 0) != cell_gaussian(11, 1));
  REQUIRE(cell_gaussian(11, 0) != cell_gaussian(12, 0));
  double sum = 0.0;
  double sum2 = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const double g = cell_gaussian(77, uint64_t(i));
    sum += g;
    sum2 += g * g;
  }
  REQUIRE(std::abs(sum / n) < 0.02);
  REQUIRE(std::abs(sum2 / n - 1.0) < 0.03);
}
