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

#include <cmath>
#include <cstdint>
#include <numbers>

#include "evt/event.hpp"
#include "evt/mat4.hpp"

namespace evt {

/// Which spatial axis the spatiotemporal rotation mixes with time:
/// YT rotates in the (y, t) plane, XT in the (x, t) plane.
enum class Plane { YT, XT };

const char* plane_name(Plane plane);

/// Viewpoint-transform parameters: a balanced rotation by `theta` in the
/// selected plane about (center_spatial, center_time).
///
/// `tau` is the balance coefficient in microseconds per pixel; it scales the
/// time axis so that a rotation mixing pixels and microseconds is
/// dimensionally consistent (t/tau has pixel units, tau*y has microsecond
/// units). Requirements: tau > 0, |theta| < pi/2, all fields finite.
struct VptParams {
    Plane plane = Plane::YT;
    double theta = 0.0;           // radians
    double tau = 1.0;             // us per pixel
    double center_spatial = 0.0;  // y_c for YT, x_c for XT (pixels)
    double center_time = 0.0;     // t_c (us)
};

/// Spatiotemporal-stretch parameters. The shear is always anchored at
/// center_time = 0; spatial coordinates are never modified.
struct StsParams {
    Plane plane = Plane::YT;
    double theta = 0.0;
    double tau = 1.0;             // us per pixel
    double center_spatial = 0.0;  // y_c for YT, x_c for XT (pixels)
};

/// Bookkeeping for the round-and-discard step of the spatial transforms.
/// Always satisfies input_count == retained_count + discarded_spatial +
/// discarded_temporal. Spatial bounds are checked before the time sign, so an
/// event failing both counts as a spatial discard.
struct TransformStats {
    int64_t input_count = 0;
    int64_t retained_count = 0;
    int64_t discarded_spatial = 0;
    int64_t discarded_temporal = 0;

    friend bool operator==(const TransformStats&, const TransformStats&) = default;
};

/// Translation to the rotation center: identity with fourth row
/// (-y_c, -x_c, -t_c, 1). translation_back is its exact inverse.
Mat4 translation_to_center(double y_c, double x_c, double t_c);
Mat4 translation_back(double y_c, double x_c, double t_c);

/// Balanced spatiotemporal rotation about the origin. For YT (c = cos theta,
/// s = sin theta):
///
///     (  c       0   tau*s   0 )
///     (  0       1   0       0 )
///     ( -s/tau   0   c       0 )
///     (  0       0   0       1 )
///
/// XT is the analogue on rows/columns (1, 2). tau == 1 gives the unbalanced
/// rotation. Determinant is 1 for every (theta, tau). Throws
/// std::invalid_argument for tau <= 0.
Mat4 balanced_rotation(Plane plane, double theta, double tau);

/// Closed-form viewpoint transformation matrix, equal to
/// translation_to_center * balanced_rotation * translation_back. The action
/// on an event for YT with center (y_c, t_c):
///
///     y' = (y - y_c) cos(theta) - (t - t_c) sin(theta) / tau + y_c
///     t' = (y - y_c) tau sin(theta) + (t - t_c) cos(theta) + t_c
///     x' = x
///
/// and analogously with (x, x_c) for XT.
Mat4 vpt_matrix(const VptParams& params);

/// Plain 2-D rotation of (y, x) about (y_c, x_c); time untouched. Sign
/// convention:
///     y' = (y - y_c) cos(theta) - (x - x_c) sin(theta) + y_c
///     x' = (y - y_c) sin(theta) + (x - x_c) cos(theta) + x_c
Mat4 spatial_rotation_matrix(double theta, double y_c, double x_c);

/// Continuous time offset the stretch applies at spatial coordinate `coord`:
/// -tau * tan(theta) * (coord - center_spatial). Shared by apply_sts and the
/// synthetic-scene predictor.
inline double sts_time_shift(double theta, double tau, double center_spatial, double coord) {
    return -tau * std::tan(theta) * (coord - center_spatial);
}

/// Nearest-integer rounding with halves away from zero; the single rounding
/// rule used for all discretization in this library.
inline int64_t round_half_away(double v) { return std::llround(v); }

struct VptResult {
    EventStream stream;
    TransformStats stats;
};

/// Maps every event through vpt_matrix, rounds coordinates and time to the
/// nearest integer, discards events that leave the sensor (counted spatial)
/// or end up at negative time (counted temporal), and re-canonicalizes.
/// Polarity is carried untouched. theta == 0 reproduces the input bit-exactly.
VptResult apply_vpt(const EventStream& stream, const VptParams& params);

/// Temporal shear t' = t - tau*tan(theta)*(coord - center); (y, x, p) are
/// untouched and no event is ever discarded. Timestamps are rounded to
/// integer microseconds, then the whole stream is shifted so min t' == 0,
/// and the result re-canonicalized. Throws for |theta| >= pi/2.
EventStream apply_sts(const EventStream& stream, const StsParams& params);

/// Image-plane rotation baseline with the same round-and-discard policy as
/// apply_vpt. Time is untouched, so discarded_temporal is always zero.
VptResult apply_spatial_rotation(const EventStream& stream, double theta, double y_c, double x_c);

/// (t_max - t_min) / max(width, height) in microseconds per pixel. Throws
/// std::invalid_argument when the stream has fewer than two events or zero
/// duration; pass an explicit tau in that case.
double default_tau(const EventStream& stream);

// ---------------------------------------------------------------------------
// Deterministic parameter sampling
// ---------------------------------------------------------------------------

inline constexpr double kDefaultThetaMax = std::numbers::pi / 6.0;

enum class PlanePolicy { YT, XT, Random };
enum class CenterPolicy { Midpoint, Random };

struct SampleConfig {
    double theta_max = kDefaultThetaMax;  // in [0, pi/2)
    PlanePolicy plane_policy = PlanePolicy::Random;
    CenterPolicy center_policy = CenterPolicy::Midpoint;
};

/// Stream facts the sampler needs. t_min/t_max define the temporal midpoint
/// used as the default rotation center for VPT.
struct StreamSpan {
    SensorGeometry geometry;
    int64_t t_min = 0;
    int64_t t_max = 0;
};

StreamSpan stream_span(const EventStream& stream);

/// splitmix64: tiny, portable, deterministic generator used for all
/// parameter sampling. Chosen over std:: distributions so that identical
/// seeds give identical parameters on every platform and standard library.
struct SplitMix64 {
    uint64_t state = 0;

    explicit SplitMix64(uint64_t seed) : state(seed) {}

    uint64_t next() {
        state += 0x9e3779b97f4a7c15ULL;
        uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    bool coin() { return (next() & 1u) != 0; }
};

/// Draws plane, theta, center (in that order, always three draws) from `rng`.
/// theta is uniform in [-theta_max, +theta_max], the plane uniform over
/// {YT, XT} unless pinned by policy, the spatial center uniform over
/// [0, span-1] or the fixed midpoint (span-1)/2. center_time is the temporal
/// midpoint of `span` for VPT and implicitly 0 for STS.
VptParams sample_vpt_params(SplitMix64& rng, const SampleConfig& config, const StreamSpan& span,
                            double tau);
StsParams sample_sts_params(SplitMix64& rng, const SampleConfig& config, const StreamSpan& span,
                            double tau);

}  // namespace evt
