#include "support.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>

#include "uavcoord/belief.hpp"

namespace uavcoord::test {

void add_edge(Instance& inst, int a, int b) {
    if (static_cast<int>(inst.adj.size()) < static_cast<int>(inst.locations.size()))
        inst.adj.resize(inst.locations.size());
    if (a == b) return;
    if (!std::count(inst.adj[a].begin(), inst.adj[a].end(), b)) {
        inst.adj[a].push_back(b);
        inst.adj[b].push_back(a);
        std::sort(inst.adj[a].begin(), inst.adj[a].end());
        std::sort(inst.adj[b].begin(), inst.adj[b].end());
    }
}

void finalize_instance(Instance& inst) {
    inst.adj.resize(inst.locations.size());
    inst.targets.clear();
    inst.uavs.clear();
    for (int i = 0; i < static_cast<int>(inst.locations.size()); ++i) {
        if (inst.locations[i].kind == LocKind::HomeBase) inst.home_loc = i;
        if (inst.locations[i].kind == LocKind::Target) inst.targets.push_back(i);
    }
    for (int i = 0; i < static_cast<int>(inst.nodes.size()); ++i) {
        if (inst.nodes[i].kind == NodeKind::Uav) inst.uavs.push_back(i);
        if (inst.nodes[i].kind == NodeKind::Base) inst.base_node = i;
    }
    inst.validate();
}

Instance tiny_instance() {
    Instance inst;
    inst.locations = {{"home", 0, 0, LocKind::HomeBase}, {"t1", 3, 0, LocKind::Target}};
    inst.nodes = {{"base", NodeKind::Base, 0}, {"u1", NodeKind::Uav, 0}};
    inst.radio_range = 4;
    add_edge(inst, 0, 1);
    finalize_instance(inst);
    return inst;
}

std::set<std::pair<int, int>> oracle_contact_pairs(const std::vector<int>& uav_loc,
                                                   const std::vector<char>& down,
                                                   const Instance& inst) {
    int n = inst.num_nodes();
    std::vector<int> loc(n);
    for (int i = 0; i < n; ++i) {
        int ord = inst.uav_ordinal(i);
        loc[i] = ord >= 0 ? uav_loc[ord] : inst.nodes[i].loc;
    }
    long long rg2 = static_cast<long long>(inst.radio_range) * inst.radio_range;
    auto direct = [&](int a, int b) {
        return a != b && !down[a] && !down[b] &&
               dist2(inst.locations[loc[a]], inst.locations[loc[b]]) <= rg2;
    };
    std::set<std::pair<int, int>> pairs;
    bool changed = true;
    while (changed) {
        changed = false;
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                if (a == b || pairs.count({a, b})) continue;
                bool derive = direct(a, b);
                for (int c = 0; !derive && c < n; ++c)
                    if (c != a && c != b && direct(a, c) && pairs.count({c, b}))
                        derive = true;
                if (derive) {
                    pairs.insert({a, b});
                    changed = true;
                }
            }
    }
    return pairs;
}

std::optional<Objective> oracle_optimal_objective(const Instance& inst, int horizon) {
    std::uint32_t all = (1u << inst.num_targets()) - 1u;
    auto captured = [&](const State& s) {
        std::uint32_t m = 0;
        for (auto p : s.pics) m |= p;
        return m;
    };
    using DKey = std::pair<std::vector<int>, std::vector<std::uint32_t>>;
    State start = initial_state(inst);
    std::map<DKey, std::pair<State, long long>> layer;
    layer[{start.uav_loc, start.pics}] = {start, 0};

    for (int d = 0; d <= horizon; ++d) {
        long long best = -1;
        for (const auto& [k, v] : layer)
            if ((v.first.pics[inst.base_node] & all) == all)
                if (best < 0 || v.second < best) best = v.second;
        if (best >= 0) return Objective{d, best};
        if (d == horizon) break;

        std::map<DKey, std::pair<State, long long>> next;
        for (const auto& [k, v] : layer) {
            const State& s = v.first;
            long long edge =
                std::popcount(captured(s) & ~s.pics[inst.base_node] & all);
            // enumerate the joint action space exhaustively
            std::vector<std::vector<Action>> opts(inst.num_uavs());
            for (int u = 0; u < inst.num_uavs(); ++u) {
                opts[u].push_back({Action::Kind::Wait, u, -1});
                for (int dest : inst.adj[s.uav_loc[u]])
                    opts[u].push_back({Action::Kind::Move, u, dest});
            }
            std::vector<int> pick(inst.num_uavs(), 0);
            while (true) {
                std::vector<Action> acts;
                for (int u = 0; u < inst.num_uavs(); ++u)
                    if (opts[u][pick[u]].kind == Action::Kind::Move)
                        acts.push_back(opts[u][pick[u]]);
                State ns = transition(s, acts, {}, inst);
                DKey nk{ns.uav_loc, ns.pics};
                long long c = v.second + edge;
                auto it = next.find(nk);
                if (it == next.end() || c < it->second.second)
                    next[nk] = {ns, c};
                int i = inst.num_uavs() - 1;
                while (i >= 0 && pick[i] + 1 == static_cast<int>(opts[i].size()))
                    pick[i--] = 0;
                if (i < 0) break;
                ++pick[i];
            }
        }
        layer = std::move(next);
    }
    return std::nullopt;
}

std::optional<int> oracle_min_cardinality(const History& h, const MultiAgentPlan& plan,
                                          const Instance& inst, int max_card) {
    std::vector<ExoEvent> cands;
    for (int node = 0; node < inst.num_nodes(); ++node)
        for (int s = 0; s < h.current_step; ++s)
            cands.push_back({ExoEvent::Kind::Break, node, s});
    for (int u = 0; u < inst.num_uavs(); ++u) {
        if (u == h.owner) continue;
        for (int s = 0; s < h.current_step; ++s)
            cands.push_back({ExoEvent::Kind::Aborted, inst.uavs[u], s});
    }
    auto consistent = [&](const std::vector<ExoEvent>& events) {
        History trial = h;
        trial.accepted = Explanation{};
        trial.accepted.events = events;
        trial.accepted.normalize();
        return unexpected(trial, plan, inst).empty();
    };
    std::vector<ExoEvent> combo;
    std::function<bool(int, size_t)> rec = [&](int k, size_t from) -> bool {
        if (k == 0) return consistent(combo);
        for (size_t i = from; i < cands.size(); ++i) {
            combo.push_back(cands[i]);
            if (rec(k - 1, i + 1)) return true;
            combo.pop_back();
        }
        return false;
    };
    for (int k = 0; k <= max_card; ++k)
        if (rec(k, 0)) return k;
    return std::nullopt;
}

Instance random_instance(std::mt19937_64& rng, int max_locs, int max_uavs,
                         int max_targets, int max_relays) {
    auto rnd = [&](int lo, int hi) {
        return static_cast<int>(lo + rng() % static_cast<std::uint64_t>(hi - lo + 1));
    };
    Instance inst;
    int nloc = rnd(3, max_locs);
    int ntargets = rnd(1, max_targets);
    int nrelays = rnd(0, max_relays);
    ntargets = std::min(ntargets, nloc - 1);
    nrelays = std::min(nrelays, nloc - 1 - ntargets);
    inst.radio_range = rnd(3, 8);

    std::set<std::pair<int, int>> used;
    for (int i = 0; i < nloc; ++i) {
        std::pair<int, int> c;
        do {
            c = {rnd(0, 11), rnd(0, 11)};
        } while (used.count(c));
        used.insert(c);
        Location l;
        l.id = "l" + std::to_string(i);
        l.x = c.first;
        l.y = c.second;
        l.kind = i == 0                    ? LocKind::HomeBase
                 : i <= ntargets           ? LocKind::Target
                 : i <= ntargets + nrelays ? LocKind::RelaySite
                                           : LocKind::Waypoint;
        inst.locations.push_back(l);
    }
    inst.adj.assign(nloc, {});
    for (int i = 1; i < nloc; ++i) add_edge(inst, i, rnd(0, i - 1));
    for (int i = rnd(0, nloc / 2); i > 0; --i)
        add_edge(inst, rnd(0, nloc - 1), rnd(0, nloc - 1));

    inst.nodes.push_back({"base", NodeKind::Base, 0});
    for (int r = 0; r < nrelays; ++r)
        inst.nodes.push_back({"r" + std::to_string(r + 1), NodeKind::Relay,
                              1 + ntargets + r});
    int nuavs = rnd(1, max_uavs);
    for (int u = 0; u < nuavs; ++u)
        inst.nodes.push_back({"u" + std::to_string(u + 1), NodeKind::Uav, 0});
    finalize_instance(inst);
    return inst;
}

State random_state(std::mt19937_64& rng, const Instance& inst) {
    auto rnd = [&](int lo, int hi) {
        return static_cast<int>(lo + rng() % static_cast<std::uint64_t>(hi - lo + 1));
    };
    State s;
    s.step = rnd(0, 10);
    s.uav_loc.resize(inst.num_uavs());
    for (auto& l : s.uav_loc) l = rnd(0, static_cast<int>(inst.locations.size()) - 1);
    s.down.resize(inst.num_nodes());
    for (auto& d : s.down) d = rnd(0, 4) == 0 ? 1 : 0;
    s.pics.resize(inst.num_nodes());
    for (auto& p : s.pics)
        p = static_cast<std::uint32_t>(rng()) & ((1u << inst.num_targets()) - 1u);
    s.comp = connectivity(s.uav_loc, s.down, inst);
    // close holdings under sharing so the state satisfies its invariants
    for (int c = 0; c < inst.num_nodes(); ++c) {
        std::uint32_t merged = 0;
        for (int i = 0; i < inst.num_nodes(); ++i)
            if (s.comp[i] == c) merged |= s.pics[i];
        for (int i = 0; i < inst.num_nodes(); ++i)
            if (s.comp[i] == c) s.pics[i] = merged;
    }
    return s;
}

}  // namespace uavcoord::test
