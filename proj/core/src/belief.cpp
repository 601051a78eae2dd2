#include "uavcoord/belief.hpp"

#include <algorithm>

namespace uavcoord {

void History::add_obs(const ObsRecord& r) {
    for (const auto& o : observations) {
        if (o.fluent == r.fluent && o.step == r.step) {
            if (o.value != r.value)
                throw PreconditionError("contradictory observation of one fluent at step " +
                                        std::to_string(r.step));
            return;
        }
    }
    observations.push_back(r);
    if (r.step > current_step) current_step = r.step;
}

void History::record_action(const Action& a, int step) {
    if (a.uav != owner)
        throw PreconditionError("history records only the owner's actions");
    own_actions.push_back({a, step});
}

History seeded_history(const Instance& inst, int owner) {
    History h;
    h.owner = owner;
    h.current_step = 0;
    for (int u = 0; u < inst.num_uavs(); ++u) {
        ObsRecord r;
        r.fluent = {Fluent::Kind::At, u, inst.nodes[inst.uavs[u]].loc};
        r.value = true;
        r.step = 0;
        h.observations.push_back(r);
    }
    return h;
}

namespace {

State projected_initial_state(const History& h, const Instance& inst) {
    State s;
    s.step = 0;
    s.uav_loc.assign(inst.num_uavs(), -1);
    for (const auto& o : h.observations) {
        if (o.step != 0 || !o.value) continue;
        if (o.fluent.kind == Fluent::Kind::At) s.uav_loc[o.fluent.a] = o.fluent.b;
    }
    for (int u = 0; u < inst.num_uavs(); ++u)
        if (s.uav_loc[u] < 0)
            throw InitialStateError("no step-0 position observed for " +
                                    inst.nodes[inst.uavs[u]].id);
    s.down.assign(inst.num_nodes(), 0);
    s.pics.assign(inst.num_nodes(), 0);
    s.comp = connectivity(s.uav_loc, s.down, inst);
    // capture + sharing run inside transition for later states; mirror them here
    State seed = s;
    std::vector<Action> none;
    std::vector<ExoEvent> noev;
    State closed = transition(seed, none, noev, inst);
    closed.step = 0;
    return closed;
}

}  // namespace

Trajectory project(const History& h, const MultiAgentPlan& plan, const Instance& inst) {
    Trajectory traj;
    traj.states.push_back(projected_initial_state(h, inst));

    for (int t = 0; t < h.current_step; ++t) {
        const State& cur = traj.states.back();
        std::vector<Action> actions;
        for (int u = 0; u < inst.num_uavs(); ++u) {
            Action a{Action::Kind::Wait, u, -1};
            if (u == h.owner) {
                for (const auto& ta : h.own_actions)
                    if (ta.step == t) a = ta.action;
            } else {
                int ab = h.accepted.aborted_step(u, inst);
                int up = h.accepted.unpredictable_step(u, inst);
                if (t < ab) {
                    a = next_action(plan, u, t);
                } else if (t >= up) {
                    for (const auto& m : h.accepted.moves)
                        if (m.uav == u && m.step == t)
                            a = Action{Action::Kind::Move, u, m.loc};
                }
                // aborted and not (yet) unpredictable: stays put
            }
            if (a.kind == Action::Kind::Move && legal(cur, a, inst))
                actions.push_back(a);
        }
        std::vector<ExoEvent> exo;
        for (const auto& e : h.accepted.events)
            if (e.kind == ExoEvent::Kind::Break && e.step == t) exo.push_back(e);
        traj.states.push_back(transition(cur, actions, exo, inst));
    }
    return traj;
}

std::vector<ObsRecord> unexpected(const History& h, const Trajectory& traj,
                                  const Instance& inst) {
    std::vector<ObsRecord> out;
    for (const auto& o : h.observations) {
        if (o.step < 0 || o.step >= static_cast<int>(traj.states.size())) continue;
        if (holds(o.fluent, traj.states[o.step], inst) != o.value) out.push_back(o);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<ObsRecord> unexpected(const History& h, const MultiAgentPlan& plan,
                                  const Instance& inst) {
    return unexpected(h, project(h, plan, inst), inst);
}

bool goal_achieved(const History& h, const Instance& inst, const MultiAgentPlan& plan) {
    Trajectory traj = project(h, plan, inst);
    return goal_holds(traj.states.back(), inst);
}

}  // namespace uavcoord
