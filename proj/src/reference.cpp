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

#include "evt/reference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace evt::reference {
namespace {

// Same rounding decisions as the parallel kernels (see src/transform.cpp),
// spelled out once more here on purpose: the reference must not share the
// parallel code path it is checking.
bool rounds_in_range(double v, int32_t limit) {
    return v > -0.5 && v < static_cast<double>(limit) - 0.5;
}

std::vector<Event> sorted_canonical(std::vector<Event> events) {
    std::sort(events.begin(), events.end(), canonical_less);
    return events;
}

VptResult map_round_discard(const EventStream& stream, const Mat4& matrix) {
    VptResult result;
    result.stats.input_count = static_cast<int64_t>(stream.events.size());
    std::vector<Event> retained;
    retained.reserve(stream.events.size());
    for (const Event& e : stream.events) {
        const auto [y, x, t] = matrix.apply(static_cast<double>(e.y), static_cast<double>(e.x),
                                            static_cast<double>(e.t));
        if (!rounds_in_range(y, stream.geometry.height) ||
            !rounds_in_range(x, stream.geometry.width)) {
            ++result.stats.discarded_spatial;
        } else if (!(t > -0.5)) {
            ++result.stats.discarded_temporal;
        } else {
            retained.push_back(Event{static_cast<int32_t>(std::llround(y)),
                                     static_cast<int32_t>(std::llround(x)), std::llround(t),
                                     e.p});
            ++result.stats.retained_count;
        }
    }
    result.stream = EventStream{stream.geometry, sorted_canonical(std::move(retained))};
    return result;
}

Raster blank(RasterKind kind, int32_t channels, const EventStream& stream) {
    Raster r;
    r.kind = kind;
    r.channels = channels;
    r.height = stream.geometry.height;
    r.width = stream.geometry.width;
    r.values.assign(static_cast<size_t>(channels) * r.height * r.width, 0.0);
    r.source_geometry = stream.geometry;
    const auto [lo, hi] = time_span(stream);
    r.t_min = lo;
    r.t_max = hi;
    return r;
}

}  // namespace

VptResult apply_vpt(const EventStream& stream, const VptParams& params) {
    return map_round_discard(stream, vpt_matrix(params));
}

EventStream apply_sts(const EventStream& stream, const StsParams& params) {
    if (!(params.tau > 0.0) || !(std::fabs(params.theta) < std::numbers::pi / 2.0)) {
        throw std::invalid_argument("sts: invalid parameters");
    }
    if (stream.events.empty()) return EventStream{stream.geometry, {}};
    const double shear = params.tau * std::tan(params.theta);
    std::vector<Event> out;
    out.reserve(stream.events.size());
    int64_t t_min = std::numeric_limits<int64_t>::max();
    for (const Event& e : stream.events) {
        const double coord = params.plane == Plane::YT ? static_cast<double>(e.y)
                                                       : static_cast<double>(e.x);
        const double t =
            static_cast<double>(e.t) - shear * (coord - params.center_spatial);
        out.push_back(Event{e.y, e.x, std::llround(t), e.p});
        t_min = std::min(t_min, out.back().t);
    }
    for (Event& e : out) e.t -= t_min;
    return EventStream{stream.geometry, sorted_canonical(std::move(out))};
}

VptResult apply_spatial_rotation(const EventStream& stream, double theta, double y_c,
                                 double x_c) {
    return map_round_discard(stream, spatial_rotation_matrix(theta, y_c, x_c));
}

Raster event_frame(const EventStream& stream) {
    Raster r = blank(RasterKind::Frame, 2, stream);
    for (const Event& e : sorted_canonical(stream.events)) {
        r.at(e.p > 0 ? 0 : 1, e.y, e.x) = 1.0;
    }
    return r;
}

Raster event_count(const EventStream& stream) {
    Raster r = blank(RasterKind::Count, 2, stream);
    for (const Event& e : sorted_canonical(stream.events)) {
        r.at(e.p > 0 ? 0 : 1, e.y, e.x) += 1.0;
    }
    return r;
}

Raster voxel_grid(const EventStream& stream, int bins, VoxelMode mode) {
    if (bins < 1) throw std::invalid_argument("voxel_grid: bins must be >= 1");
    const bool signed_grid = mode == VoxelMode::SignedSingle;
    Raster r = blank(RasterKind::Voxel, signed_grid ? bins : 2 * bins, stream);
    const double duration = static_cast<double>(r.t_max - r.t_min);
    const double scale = duration > 0.0 ? (bins - 1) / duration : 0.0;
    for (const Event& e : sorted_canonical(stream.events)) {
        const double tstar = scale * static_cast<double>(e.t - r.t_min);
        const int lo = std::min(static_cast<int>(tstar), bins - 1);
        const int block = signed_grid || e.p > 0 ? 0 : bins;
        const double sign = signed_grid ? static_cast<double>(e.p) : 1.0;
        const double w_lo = bilinear_weight(lo, tstar);
        if (w_lo > 0.0) r.at(block + lo, e.y, e.x) += sign * w_lo;
        if (lo + 1 < bins) {
            const double w_hi = bilinear_weight(lo + 1, tstar);
            if (w_hi > 0.0) r.at(block + lo + 1, e.y, e.x) += sign * w_hi;
        }
    }
    return r;
}

}  // namespace evt::reference
