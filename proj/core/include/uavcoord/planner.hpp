#pragma once

#include <span>

#include "uavcoord/belief.hpp"
#include "uavcoord/plan.hpp"

namespace uavcoord {

// Centralized mission planning. network_aware optimizes (makespan, total
// staleness) lexicographically under the true connectivity model; optimistic
// runs the same search pretending every node pair is always in contact;
// naive partitions the targets into per-UAV tours that return to base.
// Throws UnsatisfiableHorizonError when no plan fits the horizon.
MultiAgentPlan plan_mission(const Instance& inst, Mode mode, int horizon_limit);

// Replaces only the owner's future actions; every other UAV's track is the
// mission-plan remainder (or frozen / hypothesized, per the accepted
// explanation) and is marked assumption-only. When the goal is unreachable
// within the horizon the owner falls back to delivering what it holds.
MultiAgentPlan replan(const History& h, const MultiAgentPlan& mission_plan,
                      const Instance& inst, int horizon_limit);

// Open-loop simulation of a plan under assumed exogenous events. Targets
// never delivered contribute plan.horizon + 1 each; a goal never reached
// yields makespan plan.horizon + 1.
// Throws PlanInvalidError on an illegal action.
Objective evaluate(const MultiAgentPlan& plan, const Instance& inst,
                   std::span<const ExoEvent> assumed_events);

}  // namespace uavcoord
