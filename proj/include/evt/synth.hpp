// Copyright 2026 The evtaug Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "evt/event.hpp"
#include "evt/transform.hpp"

namespace evt {

/// Parametric log-brightness scenes. Each pixel sees a brightness signal
/// L(y, x, t) in log units and events are generated by the threshold model:
/// an event with p = sign(dL) fires whenever |accumulated dL| since the last
/// event at that pixel reaches the contrast threshold, and the accumulator
/// is cleared.
enum class SceneKind { UniformRamp, MovingEdge, RotatingBar };
enum class Axis { X, Y };

struct Scene {
    SceneKind kind = SceneKind::UniformRamp;
    SensorGeometry geometry{128, 128};
    int64_t duration_us = 1'000'000;

    double ramp_rate = 0.0;      // UniformRamp: dL/dt in log-units per second
    double edge_velocity = 0.0;  // MovingEdge: pixels per second along edge_axis
    Axis edge_axis = Axis::X;
    double edge_step = 0.0;      // MovingEdge: log-brightness step across the edge
    double bar_rate = 0.0;       // RotatingBar: angular rate in radians per second
};

struct ThresholdConfig {
    double contrast = 0.5;      // C > 0, log units
    int64_t refractory_us = 0;  // per-pixel dead time after an event
    // Additive threshold jitter; zero keeps generation fully deterministic
    // and is the setting every oracle test relies on.
    double jitter_sigma = 0.0;
    uint64_t jitter_seed = 0;
};

/// Generates the canonical event stream for a scene. Integration is
/// closed-form per scene kind rather than numerically stepped, so event
/// times are exact up to the final rounding to integer microseconds.
///
/// Conventions (the threshold model leaves these open):
///  - A brightness jump of k*C at one instant emits floor(k) simultaneous
///    events at that timestamp.
///  - With a nonzero refractory period, an instantaneous burst collapses to
///    its first event, and ramp events are spaced max(C/|rate|, refractory).
///  - The duration endpoint is inclusive: a crossing at exactly t = duration
///    still fires.
EventStream generate(const Scene& scene, const ThresholdConfig& config);

/// Analytic per-row (YT) or per-column (XT) time shift that apply_sts adds
/// to every event of a UniformRamp stream, indexed by the spatial
/// coordinate: shift[c] = -tau * tan(theta) * (c - center_spatial).
/// Other scene kinds have no stationary per-pixel statistics and are
/// rejected with std::invalid_argument.
std::vector<double> predict_sts_shift(const Scene& scene, const StsParams& params);

/// Key-value scene description: one "key value" pair per line, '#' starts a
/// comment. Keys: kind (ramp|edge|bar), width, height, duration_us, rate,
/// velocity, axis (x|y), step, omega, threshold, refractory_us,
/// jitter_sigma, jitter_seed. Later keys override earlier ones; unknown keys
/// are an error.
struct SceneSpec {
    Scene scene;
    ThresholdConfig threshold;
};

SceneSpec parse_scene_config(const std::string& text);
SceneSpec read_scene_file(const std::string& path);

}  // namespace evt
