#pragma once

#include <vector>

#include "uavcoord/agent.hpp"
#include "uavcoord/plan.hpp"
#include "uavcoord/world.hpp"

namespace uavcoord {

// Scripted exogenous events. Breaks hit radio nodes; aborts silence an agent
// from the given step on; scripted moves hijack an aborted agent (it deviates
// from the plan without reasoning, for tests of the diagnosis path).
struct FaultSchedule {
    std::vector<ExoEvent> events;      // Break / Aborted entries
    std::vector<HypMove> scripted;     // moves of hijacked UAVs

    std::vector<ExoEvent> breaks_at(int step) const;
    bool aborted_by(int uav_ord, int step, const Instance& inst) const;
    const HypMove* scripted_move(int uav_ord, int step) const;
};

// Everything a UAV perceives about the true state: its full contact vector
// (both polarities), its own position and holdings, positions of other UAVs
// in direct radio range, and the absence of UAVs at in-range locations.
std::vector<ObsRecord> observe(const State& true_state, int uav_ord,
                               const Instance& inst);

struct ReplanEvent {
    int uav = -1;
    int predicted_makespan = 0;
    long long predicted_staleness = 0;
};

struct DiagEvent {
    int uav = -1;
    Explanation explanation;
};

struct StepRecord {
    State state;  // true state observed at this step
    std::vector<std::vector<ObsRecord>> observations;  // per uav
    std::vector<DiagEvent> diagnoses;
    std::vector<ReplanEvent> replans;
    std::vector<int> no_diagnosis;          // uav ordinals
    std::vector<Action> attempted;          // one entry per acting uav
    std::vector<int> rejected;              // uav ordinals, illegal attempts
    std::vector<ExoEvent> faults;           // injected this step
};

struct Trace {
    bool complete = false;
    int mission_length = 0;                 // valid when complete
    std::vector<int> staleness;             // per target ordinal, -1 undelivered
    long long total_staleness = 0;
    std::vector<StepRecord> steps;
    State final_state;
};

// Synchronous ground-truth loop: observe, let every live agent pick an
// action, inject this step's faults, advance the world. Terminates on true
// goal satisfaction or after max_steps (mission-incomplete trace).
Trace run(const Instance& inst, const MultiAgentPlan& plan,
          const FaultSchedule& faults, int max_steps, AgentConfig cfg = {});

struct Metrics {
    bool complete = false;
    int mission_length = 0;
    std::vector<int> staleness;
    long long total_staleness = 0;
};

// Recomputes mission length and staleness from the recorded states alone.
Metrics metrics(const Trace& trace, const Instance& inst);

}  // namespace uavcoord
