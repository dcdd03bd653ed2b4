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

#include "evt/event.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace evt {

ValidationReport validate(const EventStream& stream) {
    ValidationReport report;
    bool seen_oob = false, seen_unsorted = false, seen_polarity = false;

    for (size_t i = 0; i < stream.events.size(); ++i) {
        const Event& e = stream.events[i];
        if (!seen_oob && !stream.geometry.contains(e.y, e.x)) {
            report.issues.push_back({ValidationIssue::Kind::OutOfBounds, i,
                                     "event " + std::to_string(i) + ": (y=" + std::to_string(e.y) +
                                         ", x=" + std::to_string(e.x) + ") outside " +
                                         std::to_string(stream.geometry.width) + "x" +
                                         std::to_string(stream.geometry.height)});
            seen_oob = true;
        }
        if (!seen_unsorted && i > 0 && e.t < stream.events[i - 1].t) {
            report.issues.push_back({ValidationIssue::Kind::Unsorted, i,
                                     "event " + std::to_string(i) + ": t=" + std::to_string(e.t) +
                                         " precedes t=" + std::to_string(stream.events[i - 1].t)});
            seen_unsorted = true;
        }
        if (!seen_polarity && e.p != 1 && e.p != -1) {
            report.issues.push_back({ValidationIssue::Kind::BadPolarity, i,
                                     "event " + std::to_string(i) + ": p=" + std::to_string(e.p)});
            seen_polarity = true;
        }
        if (seen_oob && seen_unsorted && seen_polarity) break;
    }
    return report;
}

EventStream canonicalize(std::vector<Event> events, SensorGeometry geometry) {
    if (geometry.width < 1 || geometry.height < 1) {
        throw std::invalid_argument("geometry must be at least 1x1");
    }
    for (size_t i = 0; i < events.size(); ++i) {
        const Event& e = events[i];
        if (!geometry.contains(e.y, e.x)) {
            throw std::invalid_argument("event " + std::to_string(i) + ": (y=" +
                                        std::to_string(e.y) + ", x=" + std::to_string(e.x) +
                                        ") out of bounds for " + std::to_string(geometry.width) +
                                        "x" + std::to_string(geometry.height) + " geometry");
        }
        if (e.p != 1 && e.p != -1) {
            throw std::invalid_argument("event " + std::to_string(i) +
                                        ": polarity must be +1 or -1, got " + std::to_string(e.p));
        }
        if (e.t < 0) {
            throw std::invalid_argument("event " + std::to_string(i) + ": negative timestamp " +
                                        std::to_string(e.t));
        }
    }
    // Duplicates compare equal under canonical_less, so any comparison sort
    // yields the same sequence; the multiset is untouched either way.
    std::sort(events.begin(), events.end(), canonical_less);
    return EventStream{geometry, std::move(events)};
}

EventStream normalize_time(EventStream stream) {
    if (stream.events.empty()) {
        throw std::invalid_argument("normalize_time: empty stream");
    }
    int64_t t_min = std::numeric_limits<int64_t>::max();
    for (const Event& e : stream.events) t_min = std::min(t_min, e.t);
    if (t_min != 0) {
        for (Event& e : stream.events) e.t -= t_min;
    }
    return stream;
}

std::pair<int64_t, int64_t> time_span(const EventStream& stream) {
    if (stream.events.empty()) return {0, 0};
    int64_t lo = std::numeric_limits<int64_t>::max();
    int64_t hi = std::numeric_limits<int64_t>::min();
    for (const Event& e : stream.events) {
        lo = std::min(lo, e.t);
        hi = std::max(hi, e.t);
    }
    return {lo, hi};
}

}  // namespace evt
