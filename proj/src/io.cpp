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

#include "evt/io.hpp"

#include <algorithm>
#include <charconv>
#include <cstring>
#include <fstream>
#include <limits>

namespace evt {
namespace {

constexpr int64_t kAtisMaxTimestamp = (int64_t{1} << 23) - 1;
constexpr size_t kAtisRecordSize = 5;
constexpr size_t kNativeHeaderSize = 4 + 2 + 2 + 8;
constexpr size_t kNativeRecordSize = 2 + 2 + 8 + 1;

[[noreturn]] void fail(const std::string& message) { throw io_error(message); }

void check_in_bounds(const Event& e, const SensorGeometry& geometry, size_t index) {
    if (!geometry.contains(e.y, e.x)) {
        fail("record " + std::to_string(index) + ": (y=" + std::to_string(e.y) +
             ", x=" + std::to_string(e.x) + ") out of bounds for " +
             std::to_string(geometry.width) + "x" + std::to_string(geometry.height));
    }
}

// --- AtisBin ---------------------------------------------------------------

EventStream decode_atis(std::span<const uint8_t> bytes, SensorGeometry geometry) {
    if (bytes.size() % kAtisRecordSize != 0) {
        fail("truncated AtisBin data: " + std::to_string(bytes.size()) +
             " bytes is not a multiple of 5");
    }
    std::vector<Event> events;
    events.reserve(bytes.size() / kAtisRecordSize);
    for (size_t i = 0; i < bytes.size(); i += kAtisRecordSize) {
        const uint8_t* r = bytes.data() + i;
        Event e;
        e.x = r[0];
        e.y = r[1];
        e.p = (r[2] & 0x80) ? 1 : -1;
        e.t = (int64_t{r[2] & 0x7F} << 16) | (int64_t{r[3]} << 8) | int64_t{r[4]};
        check_in_bounds(e, geometry, i / kAtisRecordSize);
        events.push_back(e);
    }
    return canonicalize(std::move(events), geometry);
}

void encode_atis(const EventStream& stream, std::vector<uint8_t>& out) {
    out.reserve(stream.events.size() * kAtisRecordSize);
    for (size_t i = 0; i < stream.events.size(); ++i) {
        const Event& e = stream.events[i];
        if (e.x < 0 || e.x > 255) {
            fail("event " + std::to_string(i) + ": x=" + std::to_string(e.x) +
                 " outside AtisBin 8-bit range");
        }
        if (e.y < 0 || e.y > 255) {
            fail("event " + std::to_string(i) + ": y=" + std::to_string(e.y) +
                 " outside AtisBin 8-bit range");
        }
        if (e.t < 0 || e.t > kAtisMaxTimestamp) {
            fail("event " + std::to_string(i) + ": t=" + std::to_string(e.t) +
                 " outside AtisBin 23-bit range");
        }
        out.push_back(static_cast<uint8_t>(e.x));
        out.push_back(static_cast<uint8_t>(e.y));
        out.push_back(static_cast<uint8_t>((e.p > 0 ? 0x80 : 0x00) | ((e.t >> 16) & 0x7F)));
        out.push_back(static_cast<uint8_t>((e.t >> 8) & 0xFF));
        out.push_back(static_cast<uint8_t>(e.t & 0xFF));
    }
}

// --- CSV --------------------------------------------------------------------

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    size_t start = 0;
    while (true) {
        const size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return fields;
}

std::string trimmed_lower(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    size_t b = s.find_last_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::string out = s.substr(a, b - a + 1);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

int64_t parse_int_field(const std::string& field, size_t line_no, const char* column) {
    const std::string v = trimmed_lower(field);
    int64_t value = 0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), value);
    if (ec != std::errc{} || ptr != v.data() + v.size() || v.empty()) {
        fail("csv line " + std::to_string(line_no) + ": non-numeric " + column + " field '" +
             field + "'");
    }
    return value;
}

EventStream decode_csv(std::span<const uint8_t> bytes, SensorGeometry geometry) {
    const std::string text(reinterpret_cast<const char*>(bytes.data()), bytes.size());
    std::vector<std::string> lines;
    size_t start = 0;
    while (start < text.size()) {
        size_t nl = text.find('\n', start);
        if (nl == std::string::npos) nl = text.size();
        lines.push_back(text.substr(start, nl - start));
        start = nl + 1;
    }
    if (lines.empty()) return EventStream{geometry, {}};

    // The header decides the column order; dataset exports disagree on it.
    const auto header = split_csv_line(lines[0]);
    if (header.size() != 4) {
        fail("csv line 1: header must have 4 columns, got " + std::to_string(header.size()));
    }
    int col_t = -1, col_x = -1, col_y = -1, col_p = -1;
    for (int c = 0; c < 4; ++c) {
        const std::string name = trimmed_lower(header[static_cast<size_t>(c)]);
        if (name == "t") col_t = c;
        else if (name == "x") col_x = c;
        else if (name == "y") col_y = c;
        else if (name == "p") col_p = c;
        else fail("csv line 1: unknown column '" + header[static_cast<size_t>(c)] + "'");
    }
    if (col_t < 0 || col_x < 0 || col_y < 0 || col_p < 0) {
        fail("csv line 1: header must name columns t, x, y, p");
    }

    std::vector<Event> events;
    events.reserve(lines.size() - 1);
    for (size_t li = 1; li < lines.size(); ++li) {
        if (lines[li].empty() || lines[li] == "\r") continue;
        const size_t line_no = li + 1;
        const auto fields = split_csv_line(lines[li]);
        if (fields.size() != 4) {
            fail("csv line " + std::to_string(line_no) + ": expected 4 fields, got " +
                 std::to_string(fields.size()));
        }
        Event e;
        e.t = parse_int_field(fields[static_cast<size_t>(col_t)], line_no, "t");
        const int64_t x = parse_int_field(fields[static_cast<size_t>(col_x)], line_no, "x");
        const int64_t y = parse_int_field(fields[static_cast<size_t>(col_y)], line_no, "y");
        const int64_t p = parse_int_field(fields[static_cast<size_t>(col_p)], line_no, "p");
        if (e.t < 0) {
            fail("csv line " + std::to_string(line_no) + ": negative timestamp");
        }
        if (x < 0 || x > std::numeric_limits<int32_t>::max() || y < 0 ||
            y > std::numeric_limits<int32_t>::max()) {
            fail("csv line " + std::to_string(line_no) + ": coordinate out of range");
        }
        e.x = static_cast<int32_t>(x);
        e.y = static_cast<int32_t>(y);
        if (p == 1) e.p = 1;
        else if (p == -1 || p == 0) e.p = -1;  // some exporters write {1, 0}
        else fail("csv line " + std::to_string(line_no) + ": polarity " + std::to_string(p) +
                  " not in {1, -1, 0}");
        check_in_bounds(e, geometry, li - 1);
        events.push_back(e);
    }
    return canonicalize(std::move(events), geometry);
}

void encode_csv(const EventStream& stream, std::vector<uint8_t>& out) {
    std::string text = "t,x,y,p\n";
    for (const Event& e : stream.events) {
        text += std::to_string(e.t);
        text += ',';
        text += std::to_string(e.x);
        text += ',';
        text += std::to_string(e.y);
        text += ',';
        text += std::to_string(static_cast<int>(e.p));
        text += '\n';
    }
    out.assign(text.begin(), text.end());
}

// --- Native -----------------------------------------------------------------

uint16_t get_u16_le(const uint8_t* p) {
    return static_cast<uint16_t>(p[0] | (p[1] << 8));
}

uint64_t get_u64_le(const uint8_t* p) {
    uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | p[i];
    return v;
}

void put_u16_le(std::vector<uint8_t>& out, uint16_t v) {
    out.push_back(static_cast<uint8_t>(v));
    out.push_back(static_cast<uint8_t>(v >> 8));
}

void put_u64_le(std::vector<uint8_t>& out, uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<uint8_t>(v >> (8 * i)));
}

EventStream decode_native(std::span<const uint8_t> bytes) {
    if (bytes.size() < kNativeHeaderSize) {
        fail("truncated Native header: " + std::to_string(bytes.size()) + " bytes");
    }
    if (std::memcmp(bytes.data(), "EVT1", 4) != 0) {
        fail("bad Native magic, expected 'EVT1'");
    }
    SensorGeometry geometry;
    geometry.width = get_u16_le(bytes.data() + 4);
    geometry.height = get_u16_le(bytes.data() + 6);
    if (geometry.width < 1 || geometry.height < 1) {
        fail("Native geometry must be at least 1x1");
    }
    const uint64_t count = get_u64_le(bytes.data() + 8);
    const uint64_t expected = kNativeHeaderSize + count * kNativeRecordSize;
    if (count > (bytes.size() / kNativeRecordSize) + 1 || bytes.size() != expected) {
        fail("Native size mismatch: header declares " + std::to_string(count) +
             " events, file has " + std::to_string(bytes.size()) + " bytes");
    }
    std::vector<Event> events;
    events.reserve(count);
    for (uint64_t i = 0; i < count; ++i) {
        const uint8_t* r = bytes.data() + kNativeHeaderSize + i * kNativeRecordSize;
        Event e;
        e.y = get_u16_le(r);
        e.x = get_u16_le(r + 2);
        const uint64_t t = get_u64_le(r + 4);
        if (t > static_cast<uint64_t>(std::numeric_limits<int64_t>::max())) {
            fail("record " + std::to_string(i) + ": timestamp overflow");
        }
        e.t = static_cast<int64_t>(t);
        const int8_t p = static_cast<int8_t>(r[12]);
        if (p != 1 && p != -1) {
            fail("record " + std::to_string(i) + ": polarity " + std::to_string(p) +
                 " not in {1, -1}");
        }
        e.p = p;
        check_in_bounds(e, geometry, i);
        events.push_back(e);
    }
    return canonicalize(std::move(events), geometry);
}

void encode_native(const EventStream& stream, std::vector<uint8_t>& out) {
    if (stream.geometry.width < 1 || stream.geometry.width > 65535 ||
        stream.geometry.height < 1 || stream.geometry.height > 65535) {
        fail("Native geometry must fit u16, got " + std::to_string(stream.geometry.width) + "x" +
             std::to_string(stream.geometry.height));
    }
    out.reserve(kNativeHeaderSize + stream.events.size() * kNativeRecordSize);
    out.insert(out.end(), {'E', 'V', 'T', '1'});
    put_u16_le(out, static_cast<uint16_t>(stream.geometry.width));
    put_u16_le(out, static_cast<uint16_t>(stream.geometry.height));
    put_u64_le(out, stream.events.size());
    for (size_t i = 0; i < stream.events.size(); ++i) {
        const Event& e = stream.events[i];
        if (e.y < 0 || e.y > 65535 || e.x < 0 || e.x > 65535) {
            fail("event " + std::to_string(i) + ": coordinate outside Native u16 range");
        }
        if (e.t < 0) {
            fail("event " + std::to_string(i) + ": negative timestamp");
        }
        put_u16_le(out, static_cast<uint16_t>(e.y));
        put_u16_le(out, static_cast<uint16_t>(e.x));
        put_u64_le(out, static_cast<uint64_t>(e.t));
        out.push_back(static_cast<uint8_t>(e.p));
    }
}

}  // namespace

const char* format_name(FormatTag format) {
    switch (format) {
        case FormatTag::AtisBin: return "atis-bin";
        case FormatTag::Csv: return "csv";
        default: return "native";
    }
}

FormatTag infer_format(const std::string& path) {
    const size_t dot = path.find_last_of('.');
    if (dot != std::string::npos) {
        std::string ext = path.substr(dot);
        std::transform(ext.begin(), ext.end(), ext.begin(),
                       [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
        if (ext == ".bin") return FormatTag::AtisBin;
        if (ext == ".csv") return FormatTag::Csv;
        if (ext == ".evt") return FormatTag::Native;
    }
    fail("cannot infer event format from '" + path + "' (expected .bin, .csv, or .evt)");
}

EventStream decode(std::span<const uint8_t> bytes, FormatTag format, SensorGeometry geometry) {
    if (bytes.empty()) return EventStream{geometry, {}};
    switch (format) {
        case FormatTag::AtisBin: return decode_atis(bytes, geometry);
        case FormatTag::Csv: return decode_csv(bytes, geometry);
        default: return decode_native(bytes);
    }
}

std::vector<uint8_t> encode(const EventStream& stream, FormatTag format) {
    std::vector<uint8_t> out;
    switch (format) {
        case FormatTag::AtisBin: encode_atis(stream, out); break;
        case FormatTag::Csv: encode_csv(stream, out); break;
        default: encode_native(stream, out); break;
    }
    return out;
}

EventStream read_events_file(const std::string& path, FormatTag format,
                             SensorGeometry geometry) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail("cannot open: " + path);
    std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                               std::istreambuf_iterator<char>());
    if (in.bad()) fail("read failed: " + path);
    return decode(bytes, format, geometry);
}

void write_events_file(const std::string& path, const EventStream& stream, FormatTag format) {
    const std::vector<uint8_t> bytes = encode(stream, format);
    std::ofstream out(path, std::ios::binary);
    if (!out) fail("cannot open for writing: " + path);
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) fail("write failed: " + path);
}

}  // namespace evt
