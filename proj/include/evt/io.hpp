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
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "evt/event.hpp"

namespace evt {

/// On-disk event formats.
///
/// AtisBin - 5 bytes per event, the layout used by the common ATIS dataset
///   distributions: byte0 = x, byte1 = y, byte2 bit7 = polarity (1 -> +1,
///   0 -> -1), byte2 bits 6..0 ++ byte3 ++ byte4 = 23-bit big-endian
///   timestamp in microseconds. Requires x, y < 256 and t < 2^23.
///
/// Csv - header row then one "t,x,y,p" line per event. The header is
///   authoritative for column order on read (any permutation of t, x, y, p);
///   polarity is written as {1, -1} and additionally accepted as {1, 0}
///   (0 mapping to -1). Written column order is always "t,x,y,p".
///
/// Native - lossless container: magic "EVT1", little-endian u16 width,
///   u16 height, u64 count, then count records of (u16 y, u16 x, u64 t,
///   i8 p). The stored geometry is authoritative when decoding.
enum class FormatTag { AtisBin, Csv, Native };

const char* format_name(FormatTag format);

/// Malformed, truncated, or out-of-range data in any codec path.
class io_error : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Maps .bin -> AtisBin, .csv -> Csv, .evt -> Native (case-insensitive);
/// throws io_error for anything else.
FormatTag infer_format(const std::string& path);

/// Decodes and canonicalizes. Every malformed input yields an io_error
/// naming the offending record; nothing is silently skipped, and events
/// outside `geometry` are an error rather than dropped. An empty byte
/// sequence decodes to an empty stream in every format. For Native,
/// `geometry` is ignored in favour of the stored one.
EventStream decode(std::span<const uint8_t> bytes, FormatTag format, SensorGeometry geometry);

/// Exact inverse of decode for canonical in-range streams:
/// decode(encode(s, f), f) == s, and re-encoding is byte-identical.
/// Range violations (AtisBin coordinates >= 256 or t >= 2^23, Native
/// coordinates >= 65536) raise io_error naming field and index.
std::vector<uint8_t> encode(const EventStream& stream, FormatTag format);

EventStream read_events_file(const std::string& path, FormatTag format,
                             SensorGeometry geometry);
void write_events_file(const std::string& path, const EventStream& stream, FormatTag format);

}  // namespace evt
