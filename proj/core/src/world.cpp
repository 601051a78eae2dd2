#include "uavcoord/world.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace uavcoord {

int Instance::loc_index(std::string_view id) const {
    for (int i = 0; i < static_cast<int>(locations.size()); ++i)
        if (locations[i].id == id) return i;
    return -1;
}

int Instance::node_index(std::string_view id) const {
    for (int i = 0; i < static_cast<int>(nodes.size()); ++i)
        if (nodes[i].id == id) return i;
    return -1;
}

int Instance::uav_ordinal(int node) const {
    for (int i = 0; i < static_cast<int>(uavs.size()); ++i)
        if (uavs[i] == node) return i;
    return -1;
}

int Instance::target_ordinal(int loc) const {
    for (int i = 0; i < static_cast<int>(targets.size()); ++i)
        if (targets[i] == loc) return i;
    return -1;
}

bool Instance::next(int l1, int l2) const {
    const auto& n = adj[l1];
    return std::binary_search(n.begin(), n.end(), l2);
}

void Instance::validate() const {
    std::set<std::string> loc_ids;
    for (const auto& l : locations)
        if (!loc_ids.insert(l.id).second)
            throw SemanticError("duplicate location id: " + l.id);
    std::set<std::string> node_ids;
    for (const auto& n : nodes)
        if (!node_ids.insert(n.id).second)
            throw SemanticError("duplicate node id: " + n.id);

    int homes = 0;
    for (const auto& l : locations)
        if (l.kind == LocKind::HomeBase) ++homes;
    if (homes != 1)
        throw SemanticError("expected exactly one home_base location, found " +
                            std::to_string(homes));
    if (home_loc < 0 || locations[home_loc].kind != LocKind::HomeBase)
        throw SemanticError("home_loc does not name the home_base location");

    if (adj.size() != locations.size())
        throw SemanticError("adjacency table size mismatch");
    for (int a = 0; a < static_cast<int>(adj.size()); ++a) {
        for (int b : adj[a]) {
            if (b < 0 || b >= static_cast<int>(locations.size()))
                throw SemanticError("adjacency refers to unknown location index");
            if (b == a)
                throw SemanticError("adjacency is reflexive at " + locations[a].id);
            if (!next(b, a))
                throw SemanticError("adjacency not symmetric: " + locations[a].id +
                                    " -> " + locations[b].id);
        }
    }

    if (!locations.empty()) {
        // location graph must be connected
        std::vector<char> seen(locations.size(), 0);
        std::vector<int> stack{0};
        seen[0] = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w : adj[v])
                if (!seen[w]) {
                    seen[w] = 1;
                    stack.push_back(w);
                }
        }
        for (int i = 0; i < static_cast<int>(locations.size()); ++i)
            if (!seen[i])
                throw SemanticError("location graph is disconnected at " +
                                    locations[i].id);
    }

    for (int t : targets) {
        if (t < 0 || t >= static_cast<int>(locations.size()) ||
            locations[t].kind != LocKind::Target)
            throw SemanticError("target list refers to a non-target location");
    }

    int bases = 0;
    for (int i = 0; i < static_cast<int>(nodes.size()); ++i) {
        const auto& n = nodes[i];
        if (n.loc < 0 || n.loc >= static_cast<int>(locations.size()))
            throw SemanticError("node " + n.id + " refers to unknown location");
        if (n.kind == NodeKind::Base) {
            ++bases;
            if (n.loc != home_loc)
                throw SemanticError("base node must sit at the home_base location");
        }
    }
    if (bases != 1) throw SemanticError("expected exactly one base node");
    if (base_node < 0 || nodes[base_node].kind != NodeKind::Base)
        throw SemanticError("base_node does not name the base");
    for (int u : uavs)
        if (u < 0 || u >= static_cast<int>(nodes.size()) ||
            nodes[u].kind != NodeKind::Uav)
            throw SemanticError("uav list refers to a non-uav node");
    if (radio_range <= 0) throw SemanticError("radio range must be positive");
}

long long dist2(const Location& a, const Location& b) {
    long long dx = a.x - b.x;
    long long dy = a.y - b.y;
    return dx * dx + dy * dy;
}

int State::node_loc(int node, const Instance& inst) const {
    int ord = inst.uav_ordinal(node);
    return ord >= 0 ? uav_loc[ord] : inst.nodes[node].loc;
}

std::vector<int> connectivity(const std::vector<int>& uav_loc,
                              const std::vector<char>& down,
                              const Instance& inst) {
    int n = inst.num_nodes();
    if (static_cast<int>(uav_loc.size()) != inst.num_uavs() ||
        static_cast<int>(down.size()) != n)
        throw SemanticError("connectivity: node/uav vector size mismatch");
    std::vector<int> loc(n);
    for (int i = 0; i < n; ++i) {
        int ord = inst.uav_ordinal(i);
        loc[i] = ord >= 0 ? uav_loc[ord] : inst.nodes[i].loc;
        if (loc[i] < 0 || loc[i] >= static_cast<int>(inst.locations.size()))
            throw SemanticError("connectivity: node at unknown location");
    }
    long long rg2 = static_cast<long long>(inst.radio_range) * inst.radio_range;
    std::vector<int> comp(n, -1);
    for (int i = 0; i < n; ++i) {
        if (down[i] || comp[i] >= 0) continue;
        comp[i] = i;
        std::vector<int> stack{i};
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w = 0; w < n; ++w) {
                if (w == v || down[w] || comp[w] >= 0) continue;
                if (dist2(inst.locations[loc[v]], inst.locations[loc[w]]) <= rg2) {
                    comp[w] = i;
                    stack.push_back(w);
                }
            }
        }
    }
    return comp;
}

bool legal(const State& s, const Action& a, const Instance& inst) {
    if (a.kind == Action::Kind::Wait) return true;
    if (a.uav < 0 || a.uav >= inst.num_uavs()) return false;
    if (a.dest < 0 || a.dest >= static_cast<int>(inst.locations.size())) return false;
    return inst.next(s.uav_loc[a.uav], a.dest);
}

namespace {

// Capture at targets, then close pictures over the contact components.
void close_pictures(State& s, const Instance& inst) {
    for (int u = 0; u < inst.num_uavs(); ++u) {
        int t = inst.target_ordinal(s.uav_loc[u]);
        if (t >= 0) s.pics[inst.uavs[u]] |= 1u << t;
    }
    int n = inst.num_nodes();
    for (int c = 0; c < n; ++c) {
        std::uint32_t merged = 0;
        for (int i = 0; i < n; ++i)
            if (s.comp[i] == c) merged |= s.pics[i];
        if (merged)
            for (int i = 0; i < n; ++i)
                if (s.comp[i] == c) s.pics[i] = merged;
    }
}

}  // namespace

State initial_state(const Instance& inst) {
    State s;
    s.step = 0;
    s.uav_loc.resize(inst.num_uavs());
    for (int u = 0; u < inst.num_uavs(); ++u)
        s.uav_loc[u] = inst.nodes[inst.uavs[u]].loc;
    s.down.assign(inst.num_nodes(), 0);
    s.pics.assign(inst.num_nodes(), 0);
    s.comp = connectivity(s.uav_loc, s.down, inst);
    close_pictures(s, inst);
    return s;
}

State transition(const State& s, std::span<const Action> agent_actions,
                 std::span<const ExoEvent> exogenous, const Instance& inst) {
    State next = s;
    next.step = s.step + 1;

    std::vector<char> acted(inst.num_uavs(), 0);
    for (const auto& a : agent_actions) {
        if (a.uav < 0 || a.uav >= inst.num_uavs())
            throw PreconditionError("transition: action for unknown UAV at step " +
                                    std::to_string(s.step));
        if (acted[a.uav])
            throw PreconditionError("transition: two actions for UAV " +
                                    inst.nodes[inst.uavs[a.uav]].id + " at step " +
                                    std::to_string(s.step));
        acted[a.uav] = 1;
        if (a.kind == Action::Kind::Wait) continue;
        if (!legal(s, a, inst))
            throw PreconditionError("transition: illegal move of " +
                                    inst.nodes[inst.uavs[a.uav]].id + " to " +
                                    inst.locations[a.dest].id + " at step " +
                                    std::to_string(s.step));
        next.uav_loc[a.uav] = a.dest;
    }

    for (const auto& e : exogenous) {
        if (e.kind != ExoEvent::Kind::Break) continue;  // aborted/unpredictable have no direct effect
        if (e.node < 0 || e.node >= inst.num_nodes())
            throw PreconditionError("transition: break of unknown node at step " +
                                    std::to_string(s.step));
        next.down[e.node] = 1;
    }

    next.comp = connectivity(next.uav_loc, next.down, inst);
    close_pictures(next, inst);
    return next;
}

bool goal_holds(const State& s, const Instance& inst) {
    std::uint32_t all = inst.num_targets() >= 32
                            ? ~0u
                            : ((1u << inst.num_targets()) - 1u);
    return (s.pics[inst.base_node] & all) == all;
}

bool holds(const Fluent& f, const State& s, const Instance& inst) {
    switch (f.kind) {
        case Fluent::Kind::At:
            return s.uav_loc[f.a] == f.b;
        case Fluent::Kind::Down:
            return s.down[f.a] != 0;
        case Fluent::Kind::Contact:
            return s.in_contact(f.a, f.b);
        case Fluent::Kind::HasPic:
            return s.has_pic(f.a, f.b);
    }
    return false;
}

}  // namespace uavcoord
