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

#include "evt/transform.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace evt {
namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

void check_vpt_params(const VptParams& p) {
    if (!(p.tau > 0.0) || !std::isfinite(p.tau)) {
        throw std::invalid_argument("tau must be positive and finite, got " +
                                    std::to_string(p.tau));
    }
    if (!(std::fabs(p.theta) < kHalfPi)) {
        throw std::invalid_argument("|theta| must be below pi/2, got " + std::to_string(p.theta));
    }
    if (!std::isfinite(p.center_spatial) || !std::isfinite(p.center_time)) {
        throw std::invalid_argument("rotation center must be finite");
    }
}

void check_sts_params(const StsParams& p) {
    if (!(p.tau > 0.0) || !std::isfinite(p.tau)) {
        throw std::invalid_argument("tau must be positive and finite, got " +
                                    std::to_string(p.tau));
    }
    if (!(std::fabs(p.theta) < kHalfPi)) {
        throw std::invalid_argument("|theta| must be below pi/2, got " + std::to_string(p.theta));
    }
    if (!std::isfinite(p.center_spatial)) {
        throw std::invalid_argument("center_spatial must be finite");
    }
}

// Decides whether a continuous coordinate survives nearest-integer rounding
// into [0, limit). Checking on the double avoids feeding llround values far
// outside the representable range. v == -0.5 rounds away from zero to -1 and
// v == limit - 0.5 rounds to limit, so both endpoints are exclusive.
inline bool rounds_in_range(double v, int32_t limit) {
    return v > -0.5 && v < static_cast<double>(limit) - 0.5;
}

inline bool rounds_non_negative(double v) { return v > -0.5; }

// llround is undefined outside the int64 range; 9.0e18 leaves headroom.
inline bool representable_time(double v) { return v > -9.0e18 && v < 9.0e18; }

// Shared by apply_vpt and apply_spatial_rotation: map every event through
// `matrix`, round, discard, re-canonicalize. The per-event map runs in
// parallel into index-addressed slots; compaction walks the slots in input
// order, so the result is identical for any thread count.
VptResult apply_matrix_round_discard(const EventStream& stream, const Mat4& matrix) {
    const int64_t n = static_cast<int64_t>(stream.events.size());
    std::vector<Event> mapped(stream.events.size());
    // 0 = retained, 1 = spatial discard, 2 = temporal discard
    std::vector<uint8_t> verdict(stream.events.size());
    bool overflow = false;

#pragma omp parallel for schedule(static) reduction(|| : overflow)
    for (int64_t i = 0; i < n; ++i) {
        const Event& e = stream.events[static_cast<size_t>(i)];
        const auto [y, x, t] = matrix.apply(static_cast<double>(e.y), static_cast<double>(e.x),
                                            static_cast<double>(e.t));
        if (!rounds_in_range(y, stream.geometry.height) ||
            !rounds_in_range(x, stream.geometry.width)) {
            verdict[static_cast<size_t>(i)] = 1;
        } else if (!rounds_non_negative(t)) {
            verdict[static_cast<size_t>(i)] = 2;
        } else if (!representable_time(t)) {
            overflow = true;
        } else {
            verdict[static_cast<size_t>(i)] = 0;
            mapped[static_cast<size_t>(i)] = Event{static_cast<int32_t>(round_half_away(y)),
                                                   static_cast<int32_t>(round_half_away(x)),
                                                   round_half_away(t), e.p};
        }
    }
    if (overflow) {
        throw std::overflow_error("transform: timestamp exceeds the integer microsecond range");
    }

    VptResult result;
    result.stats.input_count = n;
    std::vector<Event> retained;
    retained.reserve(stream.events.size());
    for (size_t i = 0; i < stream.events.size(); ++i) {
        switch (verdict[i]) {
            case 0:
                retained.push_back(mapped[i]);
                ++result.stats.retained_count;
                break;
            case 1:
                ++result.stats.discarded_spatial;
                break;
            default:
                ++result.stats.discarded_temporal;
                break;
        }
    }
    result.stream = canonicalize(std::move(retained), stream.geometry);
    return result;
}

}  // namespace

const char* plane_name(Plane plane) { return plane == Plane::YT ? "yt" : "xt"; }

Mat4 translation_to_center(double y_c, double x_c, double t_c) {
    Mat4 m = Mat4::identity();
    m.at(3, 0) = -y_c;
    m.at(3, 1) = -x_c;
    m.at(3, 2) = -t_c;
    return m;
}

Mat4 translation_back(double y_c, double x_c, double t_c) {
    Mat4 m = Mat4::identity();
    m.at(3, 0) = y_c;
    m.at(3, 1) = x_c;
    m.at(3, 2) = t_c;
    return m;
}

Mat4 balanced_rotation(Plane plane, double theta, double tau) {
    if (!(tau > 0.0) || !std::isfinite(tau)) {
        throw std::invalid_argument("tau must be positive and finite, got " + std::to_string(tau));
    }
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    Mat4 m = Mat4::identity();
    const int spatial = plane == Plane::YT ? 0 : 1;
    m.at(spatial, spatial) = c;
    m.at(spatial, 2) = tau * s;
    m.at(2, spatial) = -s / tau;
    m.at(2, 2) = c;
    return m;
}

Mat4 vpt_matrix(const VptParams& params) {
    check_vpt_params(params);
    const double c = std::cos(params.theta);
    const double s = std::sin(params.theta);
    const double sc = params.center_spatial;
    const double tc = params.center_time;
    Mat4 m = balanced_rotation(params.plane, params.theta, params.tau);
    const int spatial = params.plane == Plane::YT ? 0 : 1;
    // Fourth row of T_b * R_br * T_a in closed form.
    m.at(3, spatial) = sc * (1.0 - c) + tc * s / params.tau;
    m.at(3, 2) = -params.tau * sc * s + tc * (1.0 - c);
    return m;
}

Mat4 spatial_rotation_matrix(double theta, double y_c, double x_c) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    Mat4 m = Mat4::identity();
    m.at(0, 0) = c;
    m.at(0, 1) = s;
    m.at(1, 0) = -s;
    m.at(1, 1) = c;
    m.at(3, 0) = y_c * (1.0 - c) + x_c * s;
    m.at(3, 1) = -y_c * s + x_c * (1.0 - c);
    return m;
}

VptResult apply_vpt(const EventStream& stream, const VptParams& params) {
    check_vpt_params(params);
    return apply_matrix_round_discard(stream, vpt_matrix(params));
}

EventStream apply_sts(const EventStream& stream, const StsParams& params) {
    check_sts_params(params);
    if (stream.events.empty()) return EventStream{stream.geometry, {}};

    const int64_t n = static_cast<int64_t>(stream.events.size());
    const double shear = params.tau * std::tan(params.theta);
    const bool on_y = params.plane == Plane::YT;
    std::vector<Event> out(stream.events.size());
    bool overflow = false;

#pragma omp parallel for schedule(static) reduction(|| : overflow)
    for (int64_t i = 0; i < n; ++i) {
        const Event& e = stream.events[static_cast<size_t>(i)];
        const double coord = on_y ? static_cast<double>(e.y) : static_cast<double>(e.x);
        const double t = static_cast<double>(e.t) - shear * (coord - params.center_spatial);
        if (!representable_time(t)) {
            overflow = true;
            continue;
        }
        out[static_cast<size_t>(i)] = Event{e.y, e.x, round_half_away(t), e.p};
    }
    if (overflow) {
        throw std::overflow_error("sts: timestamp exceeds the integer microsecond range");
    }

    int64_t t_min = std::numeric_limits<int64_t>::max();
#pragma omp parallel for schedule(static) reduction(min : t_min)
    for (int64_t i = 0; i < n; ++i) t_min = std::min(t_min, out[static_cast<size_t>(i)].t);

    if (t_min != 0) {
#pragma omp parallel for schedule(static)
        for (int64_t i = 0; i < n; ++i) out[static_cast<size_t>(i)].t -= t_min;
    }
    return canonicalize(std::move(out), stream.geometry);
}

VptResult apply_spatial_rotation(const EventStream& stream, double theta, double y_c,
                                 double x_c) {
    if (!std::isfinite(theta) || !std::isfinite(y_c) || !std::isfinite(x_c)) {
        throw std::invalid_argument("rotation parameters must be finite");
    }
    return apply_matrix_round_discard(stream, spatial_rotation_matrix(theta, y_c, x_c));
}

double default_tau(const EventStream& stream) {
    if (stream.events.size() < 2) {
        throw std::invalid_argument(
            "default_tau: need at least two events; pass an explicit tau");
    }
    const auto [t_min, t_max] = time_span(stream);
    if (t_max == t_min) {
        throw std::invalid_argument(
            "default_tau: stream has zero duration; pass an explicit tau");
    }
    const double extent = std::max(stream.geometry.width, stream.geometry.height);
    return static_cast<double>(t_max - t_min) / extent;
}

StreamSpan stream_span(const EventStream& stream) {
    const auto [lo, hi] = time_span(stream);
    return StreamSpan{stream.geometry, lo, hi};
}

namespace {

// Plane, theta, center: always three draws so a sampler consumes the same
// amount of randomness under every policy combination.
struct SampledCommon {
    Plane plane;
    double theta;
    double center_spatial;
};

SampledCommon sample_common(SplitMix64& rng, const SampleConfig& config,
                            const SensorGeometry& geometry) {
    if (!(config.theta_max >= 0.0) || !(config.theta_max < kHalfPi)) {
        throw std::invalid_argument("theta_max must lie in [0, pi/2)");
    }
    const bool pick_xt = rng.coin();
    Plane plane = config.plane_policy == PlanePolicy::YT   ? Plane::YT
                  : config.plane_policy == PlanePolicy::XT ? Plane::XT
                  : (pick_xt ? Plane::XT : Plane::YT);

    const double theta = rng.uniform(-config.theta_max, config.theta_max);

    const double span = plane == Plane::YT ? geometry.height : geometry.width;
    const double u = rng.uniform01();
    const double center = config.center_policy == CenterPolicy::Midpoint
                              ? (span - 1.0) / 2.0
                              : u * (span - 1.0);
    return SampledCommon{plane, theta, center};
}

}  // namespace

VptParams sample_vpt_params(SplitMix64& rng, const SampleConfig& config, const StreamSpan& span,
                            double tau) {
    const SampledCommon s = sample_common(rng, config, span.geometry);
    VptParams p;
    p.plane = s.plane;
    p.theta = s.theta;
    p.tau = tau;
    p.center_spatial = s.center_spatial;
    p.center_time = (static_cast<double>(span.t_min) + static_cast<double>(span.t_max)) / 2.0;
    return p;
}

StsParams sample_sts_params(SplitMix64& rng, const SampleConfig& config, const StreamSpan& span,
                            double tau) {
    const SampledCommon s = sample_common(rng, config, span.geometry);
    StsParams p;
    p.plane = s.plane;
    p.theta = s.theta;
    p.tau = tau;
    p.center_spatial = s.center_spatial;
    return p;
}

}  // namespace evt
