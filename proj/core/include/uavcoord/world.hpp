#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "uavcoord/errors.hpp"

namespace uavcoord {

enum class LocKind { HomeBase, Waypoint, Target, RelaySite };
enum class NodeKind { Uav, Relay, Base };

struct Location {
    std::string id;
    int x = 0;
    int y = 0;
    LocKind kind = LocKind::Waypoint;
};

// A radio-equipped entity. For relays and the base `loc` is the fixed
// location; for UAVs it is the initial location.
struct RadioNode {
    std::string id;
    NodeKind kind = NodeKind::Relay;
    int loc = -1;
};

// Static world description. Locations, nodes, targets and UAVs are referred
// to by index everywhere below; ids only appear at the I/O boundary.
struct Instance {
    std::vector<Location> locations;
    std::vector<std::vector<int>> adj;  // per location, sorted neighbor indices
    std::vector<RadioNode> nodes;
    std::vector<int> targets;  // location indices, sorted
    std::vector<int> uavs;     // node indices, sorted
    int base_node = -1;
    int home_loc = -1;
    int radio_range = 1;

    int loc_index(std::string_view id) const;
    int node_index(std::string_view id) const;
    int uav_ordinal(int node) const;         // -1 if node is not a UAV
    int target_ordinal(int loc) const;       // -1 if loc is not a target
    bool next(int l1, int l2) const;
    int num_uavs() const { return static_cast<int>(uavs.size()); }
    int num_nodes() const { return static_cast<int>(nodes.size()); }
    int num_targets() const { return static_cast<int>(targets.size()); }

    // Checks every structural invariant (unique ids, one home base, symmetric
    // irreflexive adjacency, connected location graph, well-typed nodes).
    // Throws SemanticError.
    void validate() const;
};

long long dist2(const Location& a, const Location& b);

// Agent action. `uav` is a UAV ordinal (index into Instance::uavs).
struct Action {
    enum class Kind { Wait, Move };
    Kind kind = Kind::Wait;
    int uav = -1;
    int dest = -1;  // location index, Move only

    friend bool operator==(const Action&, const Action&) = default;
};

// Exogenous occurrence. `node` is a node index (Break may target any radio
// node; Aborted/Unpredictable target UAV nodes). `step` is when it happened.
struct ExoEvent {
    enum class Kind { Break, Aborted, Unpredictable };
    Kind kind = Kind::Break;
    int node = -1;
    int step = 0;

    friend bool operator==(const ExoEvent&, const ExoEvent&) = default;
    friend auto operator<=>(const ExoEvent&, const ExoEvent&) = default;
};

// Complete state at one step. `comp` assigns each up node the smallest node
// index of its radio-contact component (-1 for down nodes); it is derived
// from positions and the down set, never set independently.
struct State {
    int step = 0;
    std::vector<int> uav_loc;           // by UAV ordinal
    std::vector<char> down;             // by node index
    std::vector<std::uint32_t> pics;    // by node index, bit = target ordinal
    std::vector<int> comp;              // by node index, derived

    bool in_contact(int n1, int n2) const {
        return n1 != n2 && comp[n1] >= 0 && comp[n1] == comp[n2];
    }
    bool has_pic(int node, int target_ord) const {
        return (pics[node] >> target_ord) & 1u;
    }
    int node_loc(int node, const Instance& inst) const;

    friend bool operator==(const State&, const State&) = default;
};

// Component labels for the contact relation: two distinct up nodes are in
// contact iff they share a label. Down nodes get -1.
std::vector<int> connectivity(const std::vector<int>& uav_loc,
                              const std::vector<char>& down,
                              const Instance& inst);

bool legal(const State& s, const Action& a, const Instance& inst);

// State at step 0: UAVs at their initial locations, nothing down, pictures
// captured and shared if a UAV happens to start on a target.
State initial_state(const Instance& inst);

// Applies one synchronous step: moves, then breaks, inertia for the rest,
// connectivity recomputation, photo capture, sharing closure.
// Throws PreconditionError on an illegal or duplicate agent action.
State transition(const State& s, std::span<const Action> agent_actions,
                 std::span<const ExoEvent> exogenous, const Instance& inst);

// True iff the base holds a picture of every target.
bool goal_holds(const State& s, const Instance& inst);

// Ground fluent, used for observations and reality checks.
struct Fluent {
    enum class Kind { At, Down, Contact, HasPic };
    Kind kind = Kind::At;
    int a = -1;  // At: uav ordinal; Down/Contact/HasPic: node index
    int b = -1;  // At: location; Contact: node index; HasPic: target ordinal

    friend bool operator==(const Fluent&, const Fluent&) = default;
    friend auto operator<=>(const Fluent&, const Fluent&) = default;
};

bool holds(const Fluent& f, const State& s, const Instance& inst);

}  // namespace uavcoord
