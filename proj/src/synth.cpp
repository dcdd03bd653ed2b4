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

#include "evt/synth.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace evt {
namespace {

void check_scene(const Scene& scene, const ThresholdConfig& config) {
    if (scene.geometry.width < 1 || scene.geometry.height < 1) {
        throw std::invalid_argument("scene geometry must be at least 1x1");
    }
    if (scene.duration_us <= 0) {
        throw std::invalid_argument("scene duration must be positive");
    }
    if (!(config.contrast > 0.0) || !std::isfinite(config.contrast)) {
        throw std::invalid_argument("contrast threshold must be positive");
    }
    if (config.refractory_us < 0) {
        throw std::invalid_argument("refractory period must be non-negative");
    }
    if (!std::isfinite(scene.ramp_rate) || !std::isfinite(scene.edge_velocity) ||
        !std::isfinite(scene.edge_step) || !std::isfinite(scene.bar_rate)) {
        throw std::invalid_argument("scene rates must be finite");
    }
}

// Gaussian via Box-Muller on the deterministic sampler; only used when
// threshold jitter is enabled.
double gauss(SplitMix64& rng) {
    double u1 = rng.uniform01();
    while (u1 == 0.0) u1 = rng.uniform01();
    const double u2 = rng.uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

void generate_ramp(const Scene& scene, const ThresholdConfig& config,
                   std::vector<Event>& events) {
    if (scene.ramp_rate == 0.0) return;
    const double rate = std::fabs(scene.ramp_rate);
    const int8_t polarity = scene.ramp_rate > 0.0 ? 1 : -1;
    const double duration = static_cast<double>(scene.duration_us);
    const bool jittered = config.jitter_sigma > 0.0;

    if (!jittered) {
        // Every pixel fires the same train: events every C/rate seconds,
        // floor(rate * T / C) of them over the inclusive duration.
        const double spacing_us =
            std::max(1e6 * config.contrast / rate, static_cast<double>(config.refractory_us));
        const auto count = static_cast<int64_t>(duration / spacing_us);
        std::vector<int64_t> times(static_cast<size_t>(count));
        for (int64_t k = 1; k <= count; ++k) {
            times[static_cast<size_t>(k - 1)] = std::llround(static_cast<double>(k) * spacing_us);
        }
        for (int32_t y = 0; y < scene.geometry.height; ++y) {
            for (int32_t x = 0; x < scene.geometry.width; ++x) {
                for (int64_t t : times) events.push_back(Event{y, x, t, polarity});
            }
        }
        return;
    }

    SplitMix64 rng(config.jitter_seed);
    for (int32_t y = 0; y < scene.geometry.height; ++y) {
        for (int32_t x = 0; x < scene.geometry.width; ++x) {
            double t_us = 0.0;
            while (true) {
                const double threshold =
                    std::max(1e-9, config.contrast + config.jitter_sigma * gauss(rng));
                t_us += std::max(1e6 * threshold / rate,
                                 static_cast<double>(config.refractory_us));
                if (t_us > duration) break;
                events.push_back(Event{y, x, std::llround(t_us), polarity});
            }
        }
    }
}

void generate_edge(const Scene& scene, const ThresholdConfig& config,
                   std::vector<Event>& events) {
    if (scene.edge_velocity == 0.0) return;
    const auto burst = static_cast<int64_t>(std::floor(std::fabs(scene.edge_step) /
                                                       config.contrast));
    if (burst == 0) return;
    const int64_t emitted = config.refractory_us > 0 ? 1 : burst;
    const int8_t polarity = scene.edge_step > 0.0 ? 1 : -1;

    const int32_t extent =
        scene.edge_axis == Axis::X ? scene.geometry.width : scene.geometry.height;
    const int32_t cross_extent =
        scene.edge_axis == Axis::X ? scene.geometry.height : scene.geometry.width;

    for (int32_t c = 0; c < extent; ++c) {
        // The edge starts at coordinate 0 moving forward, or at the far end
        // moving backward, and crosses pixel c once.
        const double start = scene.edge_velocity > 0.0 ? 0.0 : static_cast<double>(extent - 1);
        const double t_us = 1e6 * (static_cast<double>(c) - start) / scene.edge_velocity;
        if (t_us < 0.0 || t_us > static_cast<double>(scene.duration_us)) continue;
        const int64_t t = std::llround(t_us);
        for (int32_t k = 0; k < cross_extent; ++k) {
            const int32_t y = scene.edge_axis == Axis::X ? k : c;
            const int32_t x = scene.edge_axis == Axis::X ? c : k;
            for (int64_t b = 0; b < emitted; ++b) events.push_back(Event{y, x, t, polarity});
        }
    }
}

void generate_bar(const Scene& scene, const ThresholdConfig& config,
                  std::vector<Event>& events) {
    if (scene.bar_rate == 0.0) return;
    const double rate = std::fabs(scene.bar_rate);
    const double period_us = 1e6 * std::numbers::pi / rate;  // between line crossings
    const double cy = (scene.geometry.height - 1) / 2.0;
    const double cx = (scene.geometry.width - 1) / 2.0;

    for (int32_t y = 0; y < scene.geometry.height; ++y) {
        for (int32_t x = 0; x < scene.geometry.width; ++x) {
            const double dy = y - cy;
            const double dx = x - cx;
            if (dy == 0.0 && dx == 0.0) continue;  // bar always covers the center
            double alpha = std::fmod(std::atan2(dy, dx), std::numbers::pi);
            if (alpha < 0.0) alpha += std::numbers::pi;
            // First time the line sweeps over this pixel, then once per period.
            const double phase = scene.bar_rate > 0.0
                                     ? alpha
                                     : std::fmod(std::numbers::pi - alpha, std::numbers::pi);
            for (double t_us = 1e6 * phase / rate;
                 t_us <= static_cast<double>(scene.duration_us); t_us += period_us) {
                const int64_t t = std::llround(t_us);
                // Leading and trailing edge of a zero-width bright bar
                // coincide; the refractory period keeps only the first.
                events.push_back(Event{y, x, t, 1});
                if (config.refractory_us == 0) events.push_back(Event{y, x, t, -1});
            }
        }
    }
}

}  // namespace

EventStream generate(const Scene& scene, const ThresholdConfig& config) {
    check_scene(scene, config);
    std::vector<Event> events;
    switch (scene.kind) {
        case SceneKind::UniformRamp: generate_ramp(scene, config, events); break;
        case SceneKind::MovingEdge: generate_edge(scene, config, events); break;
        case SceneKind::RotatingBar: generate_bar(scene, config, events); break;
    }
    return canonicalize(std::move(events), scene.geometry);
}

std::vector<double> predict_sts_shift(const Scene& scene, const StsParams& params) {
    if (scene.kind != SceneKind::UniformRamp) {
        throw std::invalid_argument(
            "predict_sts_shift: only UniformRamp scenes have stationary per-pixel statistics");
    }
    const int32_t extent =
        params.plane == Plane::YT ? scene.geometry.height : scene.geometry.width;
    std::vector<double> shifts(static_cast<size_t>(extent));
    for (int32_t c = 0; c < extent; ++c) {
        shifts[static_cast<size_t>(c)] =
            sts_time_shift(params.theta, params.tau, params.center_spatial, c);
    }
    return shifts;
}

namespace {

double parse_double(const std::string& value, const std::string& key) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc{} || ptr != value.data() + value.size()) {
        throw std::invalid_argument("scene config: bad numeric value for '" + key + "': " +
                                    value);
    }
    return v;
}

int64_t parse_int(const std::string& value, const std::string& key) {
    int64_t v = 0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc{} || ptr != value.data() + value.size()) {
        throw std::invalid_argument("scene config: bad integer value for '" + key + "': " +
                                    value);
    }
    return v;
}

}  // namespace

SceneSpec parse_scene_config(const std::string& text) {
    SceneSpec spec;
    bool kind_seen = false;
    std::istringstream in(text);
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ls(line);
        std::string key, value, extra;
        if (!(ls >> key)) continue;
        if (!(ls >> value) || (ls >> extra)) {
            throw std::invalid_argument("scene config line " + std::to_string(line_no) +
                                        ": expected 'key value'");
        }
        if (key == "kind") {
            kind_seen = true;
            if (value == "ramp") spec.scene.kind = SceneKind::UniformRamp;
            else if (value == "edge") spec.scene.kind = SceneKind::MovingEdge;
            else if (value == "bar") spec.scene.kind = SceneKind::RotatingBar;
            else throw std::invalid_argument("scene config: unknown kind '" + value + "'");
        } else if (key == "width") {
            spec.scene.geometry.width = static_cast<int32_t>(parse_int(value, key));
        } else if (key == "height") {
            spec.scene.geometry.height = static_cast<int32_t>(parse_int(value, key));
        } else if (key == "duration_us") {
            spec.scene.duration_us = parse_int(value, key);
        } else if (key == "rate") {
            spec.scene.ramp_rate = parse_double(value, key);
        } else if (key == "velocity") {
            spec.scene.edge_velocity = parse_double(value, key);
        } else if (key == "axis") {
            if (value == "x") spec.scene.edge_axis = Axis::X;
            else if (value == "y") spec.scene.edge_axis = Axis::Y;
            else throw std::invalid_argument("scene config: axis must be x or y");
        } else if (key == "step") {
            spec.scene.edge_step = parse_double(value, key);
        } else if (key == "omega") {
            spec.scene.bar_rate = parse_double(value, key);
        } else if (key == "threshold") {
            spec.threshold.contrast = parse_double(value, key);
        } else if (key == "refractory_us") {
            spec.threshold.refractory_us = parse_int(value, key);
        } else if (key == "jitter_sigma") {
            spec.threshold.jitter_sigma = parse_double(value, key);
        } else if (key == "jitter_seed") {
            spec.threshold.jitter_seed = static_cast<uint64_t>(parse_int(value, key));
        } else {
            throw std::invalid_argument("scene config line " + std::to_string(line_no) +
                                        ": unknown key '" + key + "'");
        }
    }
    if (!kind_seen) {
        throw std::invalid_argument("scene config: missing required key 'kind'");
    }
    return spec;
}

SceneSpec read_scene_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open scene file: " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_scene_config(text);
}

}  // namespace evt
