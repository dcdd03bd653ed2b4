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
#include <span>
#include <string>
#include <vector>

#include "evt/event.hpp"

namespace evt {

enum class RasterKind { Frame, Count, Voxel };

const char* raster_kind_name(RasterKind kind);
RasterKind raster_kind_from_name(const std::string& name);

/// Dense rasterization of an event stream.
///
/// `values` is row-major (channel, row, col). Frame and Count rasters have
/// two channels: channel 0 holds p = +1, channel 1 holds p = -1. Voxel
/// rasters have one signed channel per temporal bin (or two unsigned blocks
/// of `bins` channels each, see VoxelMode). Frame cells are 0/1, Count cells
/// are non-negative integers stored as doubles, Voxel cells are reals.
struct Raster {
    RasterKind kind = RasterKind::Count;
    int32_t channels = 0;
    int32_t height = 0;
    int32_t width = 0;
    std::vector<double> values;

    // provenance, not serialized
    SensorGeometry source_geometry;
    int64_t t_min = 0;
    int64_t t_max = 0;

    size_t cell_count() const { return values.size(); }
    bool same_shape(const Raster& other) const {
        return kind == other.kind && channels == other.channels && height == other.height &&
               width == other.width;
    }
    double at(int c, int y, int x) const {
        return values[(static_cast<size_t>(c) * height + y) * width + x];
    }
    double& at(int c, int y, int x) {
        return values[(static_cast<size_t>(c) * height + y) * width + x];
    }
};

/// Per-polarity binary occupancy: cell is 1 iff at least one event of that
/// polarity hit the pixel.
Raster event_frame(const EventStream& stream);

/// Per-polarity event counts per pixel.
Raster event_count(const EventStream& stream);

/// SignedSingle: one grid of `bins` channels accumulating p * w(b, t*).
/// UnsignedPerPolarity: 2*bins channels, first block p = +1, second p = -1,
/// accumulating |w|.
enum class VoxelMode { SignedSingle, UnsignedPerPolarity };

/// Temporal bilinear kernel: max(0, 1 - |bin - tstar|).
inline double bilinear_weight(int bin, double tstar) {
    return std::max(0.0, 1.0 - std::fabs(static_cast<double>(bin) - tstar));
}

/// Bilinear temporal binning over `bins` bins. Event time is normalized to
/// t* = (bins - 1) * (t - t_min) / (t_max - t_min) (t* = 0 for zero-duration
/// streams) and each event deposits bilinear_weight into the two enclosing
/// bins at its pixel, so the absolute mass per event is exactly 1.
Raster voxel_grid(const EventStream& stream, int bins, VoxelMode mode = VoxelMode::SignedSingle);

/// Normalized L2 distance ||a - b|| / (||a|| + ||b|| + 1e-12). Symmetric,
/// zero for identical rasters. Throws std::invalid_argument on kind or shape
/// mismatch.
double raster_distance(const Raster& a, const Raster& b);

// ---------------------------------------------------------------------------
// Serialization
//
// Binary: magic "RAS1", then little-endian u32 channels, height, width, then
// channels*height*width row-major IEEE float32 values. Kind and provenance
// are not stored; decode_raster takes the kind as an argument.
//
// Text: a header line "raster <kind> <channels> <height> <width>" followed
// by one line per row, channels separated by a blank line. Values use the
// shortest round-trip float formatting, so parse/print is byte-stable.
// ---------------------------------------------------------------------------

std::vector<uint8_t> encode_raster(const Raster& raster);
Raster decode_raster(std::span<const uint8_t> bytes, RasterKind kind = RasterKind::Count);

std::string raster_to_text(const Raster& raster);
Raster raster_from_text(const std::string& text);

/// Paths ending in ".ras" use the binary container, everything else the text
/// format. read_raster_file sniffs the magic, so it accepts either.
void write_raster_file(const std::string& path, const Raster& raster);
Raster read_raster_file(const std::string& path);

}  // namespace evt
