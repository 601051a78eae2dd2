#pragma once

#include <vector>

#include "uavcoord/explanation.hpp"
#include "uavcoord/plan.hpp"
#include "uavcoord/world.hpp"

namespace uavcoord {

struct ObsRecord {
    Fluent fluent;
    bool value = true;
    int step = 0;

    friend bool operator==(const ObsRecord&, const ObsRecord&) = default;
    friend auto operator<=>(const ObsRecord&, const ObsRecord&) = default;
};

struct TimedAction {
    Action action;
    int step = 0;

    friend bool operator==(const TimedAction&, const TimedAction&) = default;
};

// One agent's private record of what it saw and what it did.
struct History {
    int owner = -1;  // uav ordinal
    int current_step = 0;
    std::vector<ObsRecord> observations;
    std::vector<TimedAction> own_actions;
    Explanation accepted;

    // Enforces at most one truth value per (fluent, step); identical
    // re-observations are dropped.
    void add_obs(const ObsRecord& r);
    void record_action(const Action& a, int step);
};

// History for `owner` seeded with complete step-0 position observations,
// as handed out with the mission briefing.
History seeded_history(const Instance& inst, int owner);

struct Trajectory {
    std::vector<State> states;  // indexed 0..current_step
};

// Expected evolution: the owner's recorded actions, other UAVs following the
// mission plan unless hypothesized aborted (then frozen) or unpredictable
// (then the accepted explanation's moves), plus hypothesized breaks.
// Plan/hypothesized actions that are illegal in the projected state are
// skipped. Throws InitialStateError when step-0 observations are incomplete.
Trajectory project(const History& h, const MultiAgentPlan& plan, const Instance& inst);

// Reality check: every observation contradicted by the projection.
std::vector<ObsRecord> unexpected(const History& h, const MultiAgentPlan& plan,
                                  const Instance& inst);

// Convenience overload against an already-computed projection.
std::vector<ObsRecord> unexpected(const History& h, const Trajectory& traj,
                                  const Instance& inst);

// True iff the goal holds in the final projected state (belief-level).
bool goal_achieved(const History& h, const Instance& inst, const MultiAgentPlan& plan);

}  // namespace uavcoord
