#pragma once

#include <optional>

#include "uavcoord/belief.hpp"
#include "uavcoord/diagnosis.hpp"
#include "uavcoord/planner.hpp"

namespace uavcoord {

struct AgentConfig {
    int horizon_limit = 64;
    int max_card = -1;  // -1: default_max_card(inst)
};

// Per-UAV control-loop state: the original mission plan, the plan currently
// being executed, and the private history.
struct AgentRuntime {
    int id = -1;  // uav ordinal
    History history;
    MultiAgentPlan mission_plan;
    MultiAgentPlan current_plan;
    AgentConfig config;
};

AgentRuntime make_agent(const Instance& inst, int uav,
                        const MultiAgentPlan& mission_plan, AgentConfig cfg = {});

// What one loop iteration did, for the trace.
struct AgentStepOutcome {
    std::optional<Action> action;  // nullopt: agent believes the goal achieved
    std::optional<Explanation> diagnosis;
    bool replanned = false;
    bool no_diagnosis = false;
};

// One iteration of the control loop: merge observations, check the goal,
// explain and replan if the observations are unexpected, then emit and
// record the next action.
AgentStepOutcome agent_step(AgentRuntime& rt, const std::vector<ObsRecord>& incoming,
                            const Instance& inst);

}  // namespace uavcoord
