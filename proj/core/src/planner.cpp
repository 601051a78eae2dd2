#include "uavcoord/planner.hpp"

#include <algorithm>
#include <bit>
#include <climits>
#include <cstdint>
#include <functional>
#include <map>
#include <queue>
#include <tuple>

namespace uavcoord {

Action next_action(const MultiAgentPlan& plan, int uav, int step) {
    if (uav >= 0 && uav < static_cast<int>(plan.tracks.size()) && step >= 0 &&
        step < static_cast<int>(plan.tracks[uav].size()))
        return plan.tracks[uav][step];
    return Action{Action::Kind::Wait, uav, -1};
}

namespace {

std::uint32_t target_mask(const Instance& inst) {
    return inst.num_targets() >= 32 ? ~0u : ((1u << inst.num_targets()) - 1u);
}

std::uint32_t captured_mask(const State& s) {
    std::uint32_t m = 0;
    for (auto p : s.pics) m |= p;
    return m;
}

// Per-step staleness accrual: targets captured but not yet at the base.
int accrual(const State& s, const Instance& inst) {
    return std::popcount(captured_mask(s) & ~s.pics[inst.base_node]);
}

void make_fully_connected(State& s) {
    std::uint32_t merged = 0;
    for (auto p : s.pics) merged |= p;
    for (auto& p : s.pics) p = merged;
    for (auto& c : s.comp) c = 0;
}

struct SearchSpec {
    std::vector<int> movers;  // uav ordinals chosen by the search
    // fixed action of a non-mover at an absolute step
    std::function<Action(int uav, int step)> fixed;
    bool optimistic = false;
    bool timed = false;  // key states by absolute step (time-varying dynamics)
    std::uint32_t goal = 0;  // base must hold these target bits
    int start_step = 0;
    int horizon_limit = 0;
};

struct SearchResult {
    bool found = false;
    int depth = 0;
    long long staleness = 0;
    std::vector<std::vector<Action>> joint;  // per depth, actions of movers
};

struct Key {
    int step;
    std::vector<int> uav_loc;
    std::vector<std::uint32_t> pics;

    bool operator<(const Key& o) const {
        return std::tie(step, uav_loc, pics) < std::tie(o.step, o.uav_loc, o.pics);
    }
};

SearchResult lexicographic_search(const State& start, const Instance& inst,
                                  const SearchSpec& spec) {
    struct Node {
        State state;
        int parent;
        int depth;
        long long cost;
        std::vector<Action> via;  // movers' actions leading here
    };
    std::vector<Node> arena;
    arena.push_back({start, -1, 0, 0, {}});

    using QE = std::tuple<int, long long, std::uint64_t, int>;  // depth, cost, seq, node
    std::priority_queue<QE, std::vector<QE>, std::greater<>> open;
    std::uint64_t seq = 0;
    open.push({0, 0, seq++, 0});
    std::map<Key, std::pair<int, long long>> settled;

    auto key_of = [&](const State& s, int depth) {
        return Key{spec.timed ? depth : 0, s.uav_loc, s.pics};
    };

    SearchResult res;
    while (!open.empty()) {
        auto [depth, cost, _, ni] = open.top();
        open.pop();
        State cur = arena[ni].state;
        Key k = key_of(cur, depth);
        auto it = settled.find(k);
        if (it != settled.end()) continue;
        settled.emplace(k, std::make_pair(depth, cost));

        if ((cur.pics[inst.base_node] & spec.goal) == spec.goal) {
            res.found = true;
            res.depth = depth;
            res.staleness = cost;
            for (int i = ni; arena[i].parent >= 0; i = arena[i].parent)
                res.joint.push_back(arena[i].via);
            std::reverse(res.joint.begin(), res.joint.end());
            return res;
        }
        if (depth >= spec.horizon_limit) continue;

        int abs_step = spec.start_step + depth;
        std::vector<Action> base_actions;
        for (int u = 0; u < inst.num_uavs(); ++u) {
            if (std::find(spec.movers.begin(), spec.movers.end(), u) !=
                spec.movers.end())
                continue;
            Action a = spec.fixed ? spec.fixed(u, abs_step)
                                  : Action{Action::Kind::Wait, u, -1};
            if (a.kind == Action::Kind::Move && legal(cur, a, inst))
                base_actions.push_back(a);
        }

        // enumerate joint mover actions in lexicographic order
        int m = static_cast<int>(spec.movers.size());
        std::vector<std::vector<Action>> options(m);
        for (int i = 0; i < m; ++i) {
            int u = spec.movers[i];
            options[i].push_back({Action::Kind::Wait, u, -1});
            for (int dest : inst.adj[cur.uav_loc[u]])
                options[i].push_back({Action::Kind::Move, u, dest});
        }
        std::vector<int> pick(m, 0);
        long long edge = accrual(cur, inst);
        while (true) {
            std::vector<Action> actions = base_actions;
            std::vector<Action> via;
            for (int i = 0; i < m; ++i) {
                via.push_back(options[i][pick[i]]);
                if (via.back().kind == Action::Kind::Move) actions.push_back(via.back());
            }
            State nxt = transition(cur, actions, {}, inst);
            if (spec.optimistic) make_fully_connected(nxt);
            Key nk = key_of(nxt, depth + 1);
            if (!settled.count(nk)) {
                arena.push_back({std::move(nxt), ni, depth + 1, cost + edge, via});
                open.push({depth + 1, cost + edge, seq++,
                           static_cast<int>(arena.size()) - 1});
            }
            int i = m - 1;
            while (i >= 0 && pick[i] + 1 == static_cast<int>(options[i].size()))
                pick[i--] = 0;
            if (i < 0) break;
            ++pick[i];
        }
    }
    return res;
}

State nominal_start(const Instance& inst, bool optimistic) {
    State s = initial_state(inst);
    if (optimistic) make_fully_connected(s);
    return s;
}

MultiAgentPlan searched_mission_plan(const Instance& inst, bool optimistic,
                                     int horizon_limit) {
    SearchSpec spec;
    for (int u = 0; u < inst.num_uavs(); ++u) spec.movers.push_back(u);
    spec.optimistic = optimistic;
    spec.goal = target_mask(inst);
    spec.horizon_limit = horizon_limit;

    SearchResult r = lexicographic_search(nominal_start(inst, optimistic), inst, spec);
    if (!r.found)
        throw UnsatisfiableHorizonError("no mission plan within horizon " +
                                        std::to_string(horizon_limit));
    MultiAgentPlan plan;
    plan.horizon = r.depth;
    plan.tracks.assign(inst.num_uavs(),
                       std::vector<Action>(r.depth, Action{Action::Kind::Wait, -1, -1}));
    for (int u = 0; u < inst.num_uavs(); ++u)
        for (auto& a : plan.tracks[u]) a.uav = u;
    for (int t = 0; t < r.depth; ++t)
        for (int i = 0; i < inst.num_uavs(); ++i) plan.tracks[i][t] = r.joint[t][i];
    plan.predicted_makespan = r.depth;
    plan.predicted_total_staleness = r.staleness;
    plan.assumption_only.assign(inst.num_uavs(), 0);
    return plan;
}

// Deterministic BFS shortest path, preferring lower location indices.
std::vector<int> shortest_path(const Instance& inst, int from, int to) {
    std::vector<int> prev(inst.locations.size(), -1);
    std::vector<char> seen(inst.locations.size(), 0);
    std::vector<int> q{from};
    seen[from] = 1;
    for (size_t i = 0; i < q.size() && !seen[to]; ++i)
        for (int w : inst.adj[q[i]])
            if (!seen[w]) {
                seen[w] = 1;
                prev[w] = q[i];
                q.push_back(w);
            }
    if (!seen[to]) throw SemanticError("location graph not connected");
    std::vector<int> path;  // excludes `from`
    for (int v = to; v != from; v = prev[v]) path.push_back(v);
    std::reverse(path.begin(), path.end());
    return path;
}

MultiAgentPlan naive_mission_plan(const Instance& inst, int horizon_limit) {
    int nu = inst.num_uavs();
    int nt = inst.num_targets();

    std::vector<std::vector<int>> dist(inst.locations.size());
    auto hops = [&](int a, int b) {
        return a == b ? 0 : static_cast<int>(shortest_path(inst, a, b).size());
    };

    // tour length and best visiting order for one UAV's target set
    auto best_tour = [&](const std::vector<int>& locs) {
        std::vector<int> order = locs;
        std::sort(order.begin(), order.end());
        int best = INT_MAX;
        std::vector<int> best_order;
        do {
            int len = 0, at = inst.home_loc;
            for (int t : order) {
                len += hops(at, t);
                at = t;
            }
            len += hops(at, inst.home_loc);
            if (len < best) {
                best = len;
                best_order = order;
            }
        } while (std::next_permutation(order.begin(), order.end()));
        if (best_order.empty()) best = 0;
        return std::make_pair(best, best_order);
    };

    // exhaustive target partition for small target counts
    std::vector<int> assign(nt, 0), best_assign;
    int best_makespan = INT_MAX, best_total = INT_MAX;
    if (nt <= 4) {
        std::function<void(int)> rec = [&](int i) {
            if (i == nt) {
                int mk = 0, total = 0;
                for (int u = 0; u < nu; ++u) {
                    std::vector<int> mine;
                    for (int t = 0; t < nt; ++t)
                        if (assign[t] == u) mine.push_back(inst.targets[t]);
                    int len = best_tour(mine).first;
                    mk = std::max(mk, len);
                    total += len;
                }
                if (std::tie(mk, total, assign) <
                    std::tie(best_makespan, best_total, best_assign)) {
                    best_makespan = mk;
                    best_total = total;
                    best_assign = assign;
                }
                return;
            }
            for (int u = 0; u < nu; ++u) {
                assign[i] = u;
                rec(i + 1);
            }
        };
        rec(0);
    } else {
        // nearest-neighbor assignment for larger inputs
        best_assign.assign(nt, 0);
        for (int t = 0; t < nt; ++t) {
            int best_u = 0, best_d = INT_MAX;
            for (int u = 0; u < nu; ++u) {
                int d = hops(inst.nodes[inst.uavs[u]].loc, inst.targets[t]);
                if (d < best_d) {
                    best_d = d;
                    best_u = u;
                }
            }
            best_assign[t] = best_u;
        }
    }

    MultiAgentPlan plan;
    plan.tracks.assign(nu, {});
    for (int u = 0; u < nu; ++u) {
        std::vector<int> mine;
        for (int t = 0; t < nt; ++t)
            if (best_assign[t] == u) mine.push_back(inst.targets[t]);
        auto [len, order] = best_tour(mine);
        if (mine.empty()) continue;
        int at = inst.home_loc;
        for (int t : order) {
            for (int loc : shortest_path(inst, at, t))
                plan.tracks[u].push_back({Action::Kind::Move, u, loc});
            at = t;
        }
        for (int loc : shortest_path(inst, at, inst.home_loc))
            plan.tracks[u].push_back({Action::Kind::Move, u, loc});
    }
    int horizon = 0;
    for (const auto& tr : plan.tracks) horizon = std::max<int>(horizon, tr.size());
    if (horizon > horizon_limit)
        throw UnsatisfiableHorizonError("naive tours exceed horizon " +
                                        std::to_string(horizon_limit));
    plan.horizon = horizon;
    for (int u = 0; u < nu; ++u)
        plan.tracks[u].resize(horizon, Action{Action::Kind::Wait, u, -1});
    plan.assumption_only.assign(nu, 0);
    Objective obj = evaluate(plan, inst, {});
    plan.predicted_makespan = obj.makespan;
    plan.predicted_total_staleness = obj.total_staleness;
    return plan;
}

}  // namespace

MultiAgentPlan plan_mission(const Instance& inst, Mode mode, int horizon_limit) {
    switch (mode) {
        case Mode::NetworkAware:
            return searched_mission_plan(inst, false, horizon_limit);
        case Mode::Optimistic:
            return searched_mission_plan(inst, true, horizon_limit);
        case Mode::Naive:
            return naive_mission_plan(inst, horizon_limit);
    }
    throw PreconditionError("unknown planning mode");
}

MultiAgentPlan replan(const History& h, const MultiAgentPlan& mission_plan,
                      const Instance& inst, int horizon_limit) {
    Trajectory traj = project(h, mission_plan, inst);
    const State& start = traj.states.back();

    SearchSpec spec;
    spec.movers = {h.owner};
    spec.timed = true;
    spec.goal = target_mask(inst);
    spec.start_step = h.current_step;
    spec.horizon_limit = horizon_limit;
    const Explanation& acc = h.accepted;
    spec.fixed = [&inst, &mission_plan, &acc](int u, int step) {
        if (acc.aborted_step(u, inst) <= step) return Action{Action::Kind::Wait, u, -1};
        return next_action(mission_plan, u, step);
    };

    SearchResult r = lexicographic_search(start, inst, spec);
    if (!r.found) {
        // fall back to delivering what the owner already holds
        spec.goal = start.pics[inst.uavs[h.owner]] | start.pics[inst.base_node];
        spec.goal &= target_mask(inst);
        r = lexicographic_search(start, inst, spec);
        if (!r.found)
            throw UnsatisfiableHorizonError("replan: no completing plan within horizon " +
                                            std::to_string(horizon_limit));
    }

    MultiAgentPlan plan;
    plan.horizon = h.current_step + r.depth;
    plan.tracks.assign(inst.num_uavs(), {});
    for (int u = 0; u < inst.num_uavs(); ++u) {
        plan.tracks[u].assign(plan.horizon, Action{Action::Kind::Wait, u, -1});
        if (u == h.owner) continue;
        for (int t = h.current_step; t < plan.horizon; ++t) {
            Action a = spec.fixed(u, t);
            plan.tracks[u][t] = a;
        }
    }
    for (int d = 0; d < r.depth; ++d)
        plan.tracks[h.owner][h.current_step + d] = r.joint[d][0];
    plan.predicted_makespan = h.current_step + r.depth;
    plan.predicted_total_staleness = r.staleness;
    plan.assumption_only.assign(inst.num_uavs(), 1);
    plan.assumption_only[h.owner] = 0;
    return plan;
}

Objective evaluate(const MultiAgentPlan& plan, const Instance& inst,
                   std::span<const ExoEvent> assumed_events) {
    State s = initial_state(inst);
    int nt = inst.num_targets();
    std::vector<int> capture(nt, -1), receipt(nt, -1);
    auto stamp = [&](const State& st) {
        std::uint32_t cap = captured_mask(st);
        for (int t = 0; t < nt; ++t) {
            if (capture[t] < 0 && ((cap >> t) & 1u)) capture[t] = st.step;
            if (receipt[t] < 0 && st.has_pic(inst.base_node, t)) receipt[t] = st.step;
        }
    };
    stamp(s);
    int makespan = goal_holds(s, inst) ? 0 : -1;
    for (int step = 0; step < plan.horizon && makespan < 0; ++step) {
        std::vector<Action> actions;
        for (int u = 0; u < inst.num_uavs(); ++u) {
            Action a = next_action(plan, u, step);
            if (a.kind != Action::Kind::Move) continue;
            if (!legal(s, a, inst))
                throw PlanInvalidError("illegal plan action for " +
                                       inst.nodes[inst.uavs[u]].id + " at step " +
                                       std::to_string(step));
            actions.push_back(a);
        }
        std::vector<ExoEvent> exo;
        for (const auto& e : assumed_events)
            if (e.step == step) exo.push_back(e);
        s = transition(s, actions, exo, inst);
        stamp(s);
        if (goal_holds(s, inst)) makespan = s.step;
    }
    Objective obj;
    obj.makespan = makespan >= 0 ? makespan : plan.horizon + 1;
    for (int t = 0; t < nt; ++t) {
        if (receipt[t] >= 0)
            obj.total_staleness += receipt[t] - capture[t];
        else
            obj.total_staleness += plan.horizon + 1;
    }
    return obj;
}

}  // namespace uavcoord
