#pragma once

#include <vector>

#include "uavcoord/world.hpp"

namespace uavcoord {

enum class Mode { NetworkAware, Optimistic, Naive };

// Step-stamped multi-agent plan. tracks[u][s] is UAV u's action at step s;
// tracks are padded with Wait up to `horizon`.
struct MultiAgentPlan {
    int horizon = 0;
    std::vector<std::vector<Action>> tracks;  // [uav ordinal][step]
    int predicted_makespan = 0;
    long long predicted_total_staleness = 0;
    // Tracks that are mere assumptions about other agents (set by replan).
    std::vector<char> assumption_only;

    friend bool operator==(const MultiAgentPlan&, const MultiAgentPlan&) = default;
};

// The step-stamped action for this UAV; Wait when the plan has no entry.
Action next_action(const MultiAgentPlan& plan, int uav, int step);

struct Objective {
    int makespan = 0;
    long long total_staleness = 0;

    friend bool operator==(const Objective&, const Objective&) = default;
    friend auto operator<=>(const Objective&, const Objective&) = default;
};

}  // namespace uavcoord
