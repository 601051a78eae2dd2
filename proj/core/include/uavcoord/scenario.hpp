#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "uavcoord/plan.hpp"
#include "uavcoord/simulator.hpp"

namespace uavcoord {

struct ScenarioConfig {
    Mode mode = Mode::NetworkAware;
    int horizon = 64;
    int max_card = -1;  // -1: default_max_card
    int max_steps = 64;
};

struct Scenario {
    Instance instance;
    FaultSchedule faults;
    ScenarioConfig config;
    int grid_w = 0;
    int grid_h = 0;
};

// Line-oriented scenario text:
//   grid <w> <h>
//   range <rho>
//   loc <id> <x> <y> home_base|waypoint|target|relay_site
//   edge <loc> <loc>
//   node <id> uav|relay|base <loc>
//   fault break <node> <step>
//   fault abort <node> <step>
//   fault move <node> <loc> <step>
//   config mode|horizon|max_card|max_steps <value>
// '#' starts a comment. Unknown keywords are rejected.
// Throws SyntaxError / SemanticError.
Scenario parse_scenario(const std::string& text);

std::string emit_scenario(const Scenario& s);

std::string emit_plan(const MultiAgentPlan& plan, const Instance& inst);
MultiAgentPlan parse_plan(const std::string& text, const Instance& inst);

std::string emit_history(const History& h, const Instance& inst);
History parse_history(const std::string& text, const Instance& inst);

std::string emit_explanation(const Explanation& e, const Instance& inst);

std::string emit_trace(const Trace& trace, const Instance& inst);

// Replays the act/fault lines of a serialized trace through the transition
// function and recomputes the metrics.
Metrics replay_trace(const std::string& text, const Instance& inst);

// Per-mode comparison table with percentage reductions of network_aware
// against the two baselines.
struct ModeResult {
    Mode mode;
    int mission_length = 0;  // horizon+1 when incomplete
    long long total_staleness = 0;
};
std::string emit_report(const std::vector<ModeResult>& results);

// Seeded random scenario: a connected waypoint grid with a home base, a few
// relays and targets, and 1-2 UAVs.
Scenario generate_scenario(std::uint64_t seed);

const char* mode_name(Mode m);

}  // namespace uavcoord
