#pragma once

#include <cstdint>
#include <vector>

#include "nrpa/common.hpp"

namespace nrpa {

struct TraceEvent {
    double elapsed = 0.0;        // seconds since the search started
    std::uint64_t playout = 0;   // 1-based index of the playout that produced it
    double score = 0.0;

    friend bool operator==(const TraceEvent&, const TraceEvent&) = default;
};

/// Improvements of the global best score over one run, in the order they
/// happened, plus the sequence the run finally returned.
struct RunTrace {
    std::vector<TraceEvent> events;
    MoveSequence best;

    /// Best score reached at or before `seconds`, or `sentinel` if none yet.
    double bestAt(double seconds, double sentinel) const {
        double v = sentinel;
        for (const auto& e : events) {
            if (e.elapsed > seconds) break;
            v = e.score;
        }
        return v;
    }
};

/// Two traces describe the same search when their improvements happened at
/// the same playouts with the same scores and they return the same sequence.
/// Wall-clock stamps are ignored.
inline bool sameSearch(const RunTrace& a, const RunTrace& b) {
    if (a.events.size() != b.events.size() || !(a.best == b.best)) return false;
    for (std::size_t i = 0; i < a.events.size(); ++i)
        if (a.events[i].playout != b.events[i].playout || a.events[i].score != b.events[i].score)
            return false;
    return true;
}

} // namespace nrpa
