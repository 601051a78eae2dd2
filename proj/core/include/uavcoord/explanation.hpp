#pragma once

#include <vector>

#include "uavcoord/world.hpp"

namespace uavcoord {

// A move hypothesized for a UAV that is believed to behave unpredictably.
struct HypMove {
    int uav = -1;  // uav ordinal
    int loc = -1;
    int step = 0;

    friend bool operator==(const HypMove&, const HypMove&) = default;
    friend auto operator<=>(const HypMove&, const HypMove&) = default;
};

// Hypothesized exogenous occurrences reconciling a history with
// expectations. Cardinality counts events only, not hypothesized moves.
struct Explanation {
    std::vector<ExoEvent> events;  // kept sorted (kind, node, step)
    std::vector<HypMove> moves;    // kept sorted

    int cardinality() const { return static_cast<int>(events.size()); }
    bool empty() const { return events.empty() && moves.empty(); }
    void normalize();

    // First step at/after which `uav` (ordinal) is hypothesized aborted /
    // unpredictable; INT_MAX when not hypothesized.
    int aborted_step(int uav, const Instance& inst) const;
    int unpredictable_step(int uav, const Instance& inst) const;

    friend bool operator==(const Explanation&, const Explanation&) = default;
};

}  // namespace uavcoord
