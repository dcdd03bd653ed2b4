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

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace evt {

/// One polarity-signed brightness-change sample.
///
/// Coordinates are 0-based pixel indices (row y, column x), timestamps are
/// integer microseconds, polarity is +1 (brighter) or -1 (darker). Canonical
/// streams never hold p == 0.
struct Event {
    int32_t y = 0;
    int32_t x = 0;
    int64_t t = 0;
    int8_t p = 1;

    friend bool operator==(const Event&, const Event&) = default;
};

/// Canonical ordering: (t, y, x, p) ascending. The tie-break makes every
/// pipeline built on canonical streams deterministic.
constexpr bool canonical_less(const Event& a, const Event& b) {
    if (a.t != b.t) return a.t < b.t;
    if (a.y != b.y) return a.y < b.y;
    if (a.x != b.x) return a.x < b.x;
    return a.p < b.p;
}

struct SensorGeometry {
    int32_t width = 0;   // pixels, >= 1
    int32_t height = 0;  // pixels, >= 1

    constexpr bool contains(int64_t y, int64_t x) const {
        return y >= 0 && y < height && x >= 0 && x < width;
    }
    friend bool operator==(const SensorGeometry&, const SensorGeometry&) = default;
};

/// Time-ordered event sequence plus the sensor it was recorded on.
///
/// Canonical form means: sorted by canonical_less, all events in-bounds for
/// `geometry`, all polarities in {+1, -1}. The struct itself is a plain value
/// and does not enforce this; canonicalize() establishes it and validate()
/// checks it. Streams are immutable values in practice: every operation in
/// this library takes them by const reference and returns new ones, so
/// sharing across concurrent readers is safe.
struct EventStream {
    SensorGeometry geometry;
    std::vector<Event> events;

    size_t size() const { return events.size(); }
    bool empty() const { return events.empty(); }
    friend bool operator==(const EventStream&, const EventStream&) = default;
};

/// Real-valued event as produced by matrix application, before rounding and
/// the bounds/negative-time discard. Intermediate form only; never serialized.
struct ContinuousEvent {
    double y = 0;
    double x = 0;
    double t = 0;
    int8_t p = 1;
};

struct ValidationIssue {
    enum class Kind { OutOfBounds, Unsorted, BadPolarity };
    Kind kind;
    size_t index;  // first offending event of this class
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;
    bool ok() const { return issues.empty(); }
};

/// Checks the canonical-stream invariants and reports the first offending
/// index per violation class. Never throws; an empty report means the stream
/// is valid.
ValidationReport validate(const EventStream& stream);

/// Sorts events by (t, y, x, p) and returns the canonical stream. The input
/// multiset of events is preserved exactly. Out-of-bounds or bad-polarity
/// events are rejected with std::invalid_argument naming the offending index.
EventStream canonicalize(std::vector<Event> events, SensorGeometry geometry);

/// Shifts all timestamps so that min t == 0; relative intervals are preserved
/// exactly. Throws std::invalid_argument on an empty stream.
EventStream normalize_time(EventStream stream);

/// (t_min, t_max) over the events; {0, 0} for an empty stream. Does not
/// assume the stream is sorted.
std::pair<int64_t, int64_t> time_span(const EventStream& stream);

}  // namespace evt
