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

#include "streamdet/detector.hpp"
#include "streamdet/error.hpp"
#include "streamdet/eval.hpp"
#include "streamdet/geometry.hpp"
#include "streamdet/io.hpp"
#include "streamdet/latency.hpp"
#include "streamdet/nms.hpp"
#include "streamdet/pipeline.hpp"
#include "streamdet/rng.hpp"
#include "streamdet/scene.hpp"
#include "streamdet/sensor.hpp"
