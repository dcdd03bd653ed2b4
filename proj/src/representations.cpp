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

#include "evt/representations.hpp"

#include <algorithm>
#include <charconv>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace evt {
namespace {

// Rasterizers accept any event order (they are permutation-invariant), so
// non-canonical input is sorted into canonical order first. That pins the
// per-cell accumulation order and with it the exact floating-point result.
const std::vector<Event>& canonical_view(const EventStream& stream, std::vector<Event>& scratch) {
    if (std::is_sorted(stream.events.begin(), stream.events.end(), canonical_less)) {
        return stream.events;
    }
    scratch = stream.events;
    std::sort(scratch.begin(), scratch.end(), canonical_less);
    return scratch;
}

void check_rasterizable(const EventStream& stream) {
    if (stream.geometry.width < 1 || stream.geometry.height < 1) {
        throw std::invalid_argument("rasterize: geometry must be at least 1x1");
    }
    for (size_t i = 0; i < stream.events.size(); ++i) {
        const Event& e = stream.events[i];
        if (!stream.geometry.contains(e.y, e.x)) {
            throw std::invalid_argument("rasterize: event " + std::to_string(i) +
                                        " out of bounds");
        }
        if (e.p != 1 && e.p != -1) {
            throw std::invalid_argument("rasterize: event " + std::to_string(i) +
                                        " has polarity " + std::to_string(e.p));
        }
    }
}

// Event indices grouped by pixel, preserving the (canonical) input order
// within each pixel. Each pixel's cells are then owned by exactly one
// OpenMP thread, which keeps the accumulation order, and therefore the
// result, independent of the thread count.
struct PixelBuckets {
    std::vector<uint32_t> order;
    std::vector<uint64_t> starts;  // size pixels + 1
};

PixelBuckets bucket_by_pixel(const std::vector<Event>& events, const SensorGeometry& geometry) {
    if (events.size() > std::numeric_limits<uint32_t>::max()) {
        throw std::invalid_argument("rasterize: stream too large");
    }
    const size_t pixels = static_cast<size_t>(geometry.width) * geometry.height;
    PixelBuckets buckets;
    buckets.starts.assign(pixels + 1, 0);
    for (const Event& e : events) {
        ++buckets.starts[static_cast<size_t>(e.y) * geometry.width + e.x + 1];
    }
    for (size_t p = 1; p <= pixels; ++p) buckets.starts[p] += buckets.starts[p - 1];
    buckets.order.resize(events.size());
    std::vector<uint64_t> cursor(buckets.starts.begin(), buckets.starts.end() - 1);
    for (uint32_t i = 0; i < events.size(); ++i) {
        const Event& e = events[i];
        buckets.order[cursor[static_cast<size_t>(e.y) * geometry.width + e.x]++] = i;
    }
    return buckets;
}

Raster make_raster(RasterKind kind, int32_t channels, const EventStream& stream) {
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

template <typename PerPixel>
void for_each_pixel_bucket(const std::vector<Event>& events, const SensorGeometry& geometry,
                           PerPixel&& body) {
    const PixelBuckets buckets = bucket_by_pixel(events, geometry);
    const int64_t pixels = static_cast<int64_t>(geometry.width) * geometry.height;
#pragma omp parallel for schedule(static)
    for (int64_t p = 0; p < pixels; ++p) {
        for (uint64_t k = buckets.starts[p]; k < buckets.starts[p + 1]; ++k) {
            body(events[buckets.order[k]]);
        }
    }
}

}  // namespace

const char* raster_kind_name(RasterKind kind) {
    switch (kind) {
        case RasterKind::Frame: return "frame";
        case RasterKind::Count: return "count";
        default: return "voxel";
    }
}

RasterKind raster_kind_from_name(const std::string& name) {
    if (name == "frame") return RasterKind::Frame;
    if (name == "count") return RasterKind::Count;
    if (name == "voxel") return RasterKind::Voxel;
    throw std::invalid_argument("unknown raster kind: " + name);
}

Raster event_frame(const EventStream& stream) {
    check_rasterizable(stream);
    std::vector<Event> scratch;
    const std::vector<Event>& events = canonical_view(stream, scratch);
    Raster r = make_raster(RasterKind::Frame, 2, stream);
    for_each_pixel_bucket(events, stream.geometry,
                          [&](const Event& e) { r.at(e.p > 0 ? 0 : 1, e.y, e.x) = 1.0; });
    return r;
}

Raster event_count(const EventStream& stream) {
    check_rasterizable(stream);
    std::vector<Event> scratch;
    const std::vector<Event>& events = canonical_view(stream, scratch);
    Raster r = make_raster(RasterKind::Count, 2, stream);
    for_each_pixel_bucket(events, stream.geometry,
                          [&](const Event& e) { r.at(e.p > 0 ? 0 : 1, e.y, e.x) += 1.0; });
    return r;
}

Raster voxel_grid(const EventStream& stream, int bins, VoxelMode mode) {
    if (bins < 1) {
        throw std::invalid_argument("voxel_grid: bins must be >= 1");
    }
    check_rasterizable(stream);
    std::vector<Event> scratch;
    const std::vector<Event>& events = canonical_view(stream, scratch);

    const bool signed_grid = mode == VoxelMode::SignedSingle;
    Raster r = make_raster(RasterKind::Voxel, signed_grid ? bins : 2 * bins, stream);
    const double duration = static_cast<double>(r.t_max - r.t_min);
    const double scale = duration > 0.0 ? (bins - 1) / duration : 0.0;

    for_each_pixel_bucket(events, stream.geometry, [&](const Event& e) {
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
    });
    return r;
}

double raster_distance(const Raster& a, const Raster& b) {
    if (!a.same_shape(b)) {
        throw std::invalid_argument("raster_distance: kind or shape mismatch");
    }
    double diff2 = 0.0, a2 = 0.0, b2 = 0.0;
    for (size_t i = 0; i < a.values.size(); ++i) {
        const double d = a.values[i] - b.values[i];
        diff2 += d * d;
        a2 += a.values[i] * a.values[i];
        b2 += b.values[i] * b.values[i];
    }
    return std::sqrt(diff2) / (std::sqrt(a2) + std::sqrt(b2) + 1e-12);
}

namespace {

void put_u32_le(std::vector<uint8_t>& out, uint32_t v) {
    out.push_back(static_cast<uint8_t>(v));
    out.push_back(static_cast<uint8_t>(v >> 8));
    out.push_back(static_cast<uint8_t>(v >> 16));
    out.push_back(static_cast<uint8_t>(v >> 24));
}

uint32_t get_u32_le(const uint8_t* p) {
    return static_cast<uint32_t>(p[0]) | static_cast<uint32_t>(p[1]) << 8 |
           static_cast<uint32_t>(p[2]) << 16 | static_cast<uint32_t>(p[3]) << 24;
}

std::string format_float(float v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, end);
}

}  // namespace

std::vector<uint8_t> encode_raster(const Raster& raster) {
    std::vector<uint8_t> out;
    out.reserve(16 + raster.values.size() * 4);
    out.insert(out.end(), {'R', 'A', 'S', '1'});
    put_u32_le(out, static_cast<uint32_t>(raster.channels));
    put_u32_le(out, static_cast<uint32_t>(raster.height));
    put_u32_le(out, static_cast<uint32_t>(raster.width));
    for (double v : raster.values) {
        const float f = static_cast<float>(v);
        uint32_t bits;
        std::memcpy(&bits, &f, 4);
        put_u32_le(out, bits);
    }
    return out;
}

Raster decode_raster(std::span<const uint8_t> bytes, RasterKind kind) {
    if (bytes.size() < 16 || std::memcmp(bytes.data(), "RAS1", 4) != 0) {
        throw std::invalid_argument("raster: missing RAS1 header");
    }
    Raster r;
    r.kind = kind;
    r.channels = static_cast<int32_t>(get_u32_le(bytes.data() + 4));
    r.height = static_cast<int32_t>(get_u32_le(bytes.data() + 8));
    r.width = static_cast<int32_t>(get_u32_le(bytes.data() + 12));
    constexpr int32_t kDimCap = 1 << 20;
    if (r.channels < 0 || r.height < 0 || r.width < 0 || r.channels > kDimCap ||
        r.height > kDimCap || r.width > kDimCap) {
        throw std::invalid_argument("raster: implausible dimensions");
    }
    const size_t cells = static_cast<size_t>(r.channels) * r.height * r.width;
    if (bytes.size() != 16 + cells * 4) {
        throw std::invalid_argument("raster: size mismatch, expected " +
                                    std::to_string(16 + cells * 4) + " bytes, got " +
                                    std::to_string(bytes.size()));
    }
    r.values.resize(cells);
    for (size_t i = 0; i < cells; ++i) {
        const uint32_t bits = get_u32_le(bytes.data() + 16 + i * 4);
        float f;
        std::memcpy(&f, &bits, 4);
        r.values[i] = f;
    }
    r.source_geometry = SensorGeometry{r.width, r.height};
    return r;
}

std::string raster_to_text(const Raster& raster) {
    std::string out = "raster ";
    out += raster_kind_name(raster.kind);
    out += ' ' + std::to_string(raster.channels) + ' ' + std::to_string(raster.height) + ' ' +
           std::to_string(raster.width) + '\n';
    size_t i = 0;
    for (int32_t c = 0; c < raster.channels; ++c) {
        if (c > 0) out += '\n';
        for (int32_t y = 0; y < raster.height; ++y) {
            for (int32_t x = 0; x < raster.width; ++x) {
                if (x > 0) out += ' ';
                out += format_float(static_cast<float>(raster.values[i++]));
            }
            out += '\n';
        }
    }
    return out;
}

Raster raster_from_text(const std::string& text) {
    std::istringstream in(text);
    std::string tag, kind;
    Raster r;
    if (!(in >> tag >> kind >> r.channels >> r.height >> r.width) || tag != "raster") {
        throw std::invalid_argument("raster: malformed text header");
    }
    r.kind = raster_kind_from_name(kind);
    if (r.channels < 0 || r.height < 0 || r.width < 0) {
        throw std::invalid_argument("raster: negative dimension");
    }
    const size_t cells = static_cast<size_t>(r.channels) * r.height * r.width;
    r.values.reserve(cells);
    std::string token;
    while (in >> token) {
        float v;
        auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
        if (ec != std::errc{} || ptr != token.data() + token.size()) {
            throw std::invalid_argument("raster: bad value '" + token + "'");
        }
        r.values.push_back(v);
    }
    if (r.values.size() != cells) {
        throw std::invalid_argument("raster: expected " + std::to_string(cells) +
                                    " values, got " + std::to_string(r.values.size()));
    }
    r.source_geometry = SensorGeometry{r.width, r.height};
    return r;
}

void write_raster_file(const std::string& path, const Raster& raster) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot open for writing: " + path);
    if (path.size() >= 4 && path.compare(path.size() - 4, 4, ".ras") == 0) {
        const auto bytes = encode_raster(raster);
        out.write(reinterpret_cast<const char*>(bytes.data()),
                  static_cast<std::streamsize>(bytes.size()));
    } else {
        const std::string text = raster_to_text(raster);
        out.write(text.data(), static_cast<std::streamsize>(text.size()));
    }
    if (!out) throw std::invalid_argument("write failed: " + path);
}

Raster read_raster_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open: " + path);
    std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (data.size() >= 4 && std::memcmp(data.data(), "RAS1", 4) == 0) {
        return decode_raster(
            std::span<const uint8_t>(reinterpret_cast<const uint8_t*>(data.data()), data.size()));
    }
    return raster_from_text(data);
}

}  // namespace evt
