#include "uavcoord/simulator.hpp"

#include <algorithm>

namespace uavcoord {

std::vector<ExoEvent> FaultSchedule::breaks_at(int step) const {
    std::vector<ExoEvent> out;
    for (const auto& e : events)
        if (e.kind == ExoEvent::Kind::Break && e.step == step) out.push_back(e);
    std::sort(out.begin(), out.end());
    return out;
}

bool FaultSchedule::aborted_by(int uav_ord, int step, const Instance& inst) const {
    for (const auto& e : events)
        if (e.kind == ExoEvent::Kind::Aborted && e.node == inst.uavs[uav_ord] &&
            e.step <= step)
            return true;
    return false;
}

const HypMove* FaultSchedule::scripted_move(int uav_ord, int step) const {
    for (const auto& m : scripted)
        if (m.uav == uav_ord && m.step == step) return &m;
    return nullptr;
}

std::vector<ObsRecord> observe(const State& true_state, int uav_ord,
                               const Instance& inst) {
    std::vector<ObsRecord> out;
    int step = true_state.step;
    int self_node = inst.uavs[uav_ord];
    int self_loc = true_state.uav_loc[uav_ord];
    long long rg2 = static_cast<long long>(inst.radio_range) * inst.radio_range;

    // full contact vector, both polarities
    for (int n = 0; n < inst.num_nodes(); ++n) {
        if (n == self_node) continue;
        out.push_back({{Fluent::Kind::Contact, self_node, n},
                       true_state.in_contact(self_node, n), step});
    }
    // own position
    out.push_back({{Fluent::Kind::At, uav_ord, self_loc}, true, step});
    // positions of UAVs in direct radio range; absence of UAVs at in-range
    // locations is visible too
    for (int u = 0; u < inst.num_uavs(); ++u) {
        if (u == uav_ord) continue;
        int uloc = true_state.uav_loc[u];
        if (dist2(inst.locations[self_loc], inst.locations[uloc]) <= rg2)
            out.push_back({{Fluent::Kind::At, u, uloc}, true, step});
        for (int l = 0; l < static_cast<int>(inst.locations.size()); ++l) {
            if (l == uloc) continue;
            if (dist2(inst.locations[self_loc], inst.locations[l]) <= rg2)
                out.push_back({{Fluent::Kind::At, u, l}, false, step});
        }
    }
    // own holdings
    for (int t = 0; t < inst.num_targets(); ++t)
        if (true_state.has_pic(self_node, t))
            out.push_back({{Fluent::Kind::HasPic, self_node, t}, true, step});
    return out;
}

Trace run(const Instance& inst, const MultiAgentPlan& plan,
          const FaultSchedule& faults, int max_steps, AgentConfig cfg) {
    Trace trace;
    int nu = inst.num_uavs();
    std::vector<AgentRuntime> agents;
    for (int u = 0; u < nu; ++u) agents.push_back(make_agent(inst, u, plan, cfg));

    State state = initial_state(inst);
    for (int step = 0;; ++step) {
        if (goal_holds(state, inst) || step >= max_steps) {
            trace.complete = goal_holds(state, inst);
            trace.final_state = state;
            break;
        }
        StepRecord rec;
        rec.state = state;
        rec.observations.resize(nu);

        std::vector<Action> actions;
        for (int u = 0; u < nu; ++u) {
            rec.observations[u] = observe(state, u, inst);
            if (faults.aborted_by(u, step, inst)) {
                // hijacked or dead agent: scripted moves only, no reasoning
                if (const HypMove* m = faults.scripted_move(u, step)) {
                    Action a{Action::Kind::Move, u, m->loc};
                    rec.attempted.push_back(a);
                    if (legal(state, a, inst))
                        actions.push_back(a);
                    else
                        rec.rejected.push_back(u);
                }
                continue;
            }
            AgentStepOutcome outc = agent_step(agents[u], rec.observations[u], inst);
            if (outc.diagnosis) rec.diagnoses.push_back({u, *outc.diagnosis});
            if (outc.replanned)
                rec.replans.push_back({u, agents[u].current_plan.predicted_makespan,
                                       agents[u].current_plan.predicted_total_staleness});
            if (outc.no_diagnosis) rec.no_diagnosis.push_back(u);
            if (!outc.action) continue;
            rec.attempted.push_back(*outc.action);
            if (outc.action->kind == Action::Kind::Move) {
                if (legal(state, *outc.action, inst))
                    actions.push_back(*outc.action);
                else
                    rec.rejected.push_back(u);
            }
        }
        rec.faults = faults.breaks_at(step);
        state = transition(state, actions, rec.faults, inst);
        trace.steps.push_back(std::move(rec));
    }

    Metrics m = metrics(trace, inst);
    trace.mission_length = m.mission_length;
    trace.staleness = m.staleness;
    trace.total_staleness = m.total_staleness;
    return trace;
}

Metrics metrics(const Trace& trace, const Instance& inst) {
    Metrics m;
    int nt = inst.num_targets();
    std::vector<int> capture(nt, -1), receipt(nt, -1);
    auto stamp = [&](const State& st) {
        std::uint32_t cap = 0;
        for (auto p : st.pics) cap |= p;
        for (int t = 0; t < nt; ++t) {
            if (capture[t] < 0 && ((cap >> t) & 1u)) capture[t] = st.step;
            if (receipt[t] < 0 && st.has_pic(inst.base_node, t)) receipt[t] = st.step;
        }
    };
    for (const auto& rec : trace.steps) stamp(rec.state);
    stamp(trace.final_state);
    m.complete = trace.complete;
    m.mission_length = trace.complete ? trace.final_state.step : -1;
    m.staleness.assign(nt, -1);
    for (int t = 0; t < nt; ++t) {
        if (receipt[t] >= 0) {
            m.staleness[t] = receipt[t] - capture[t];
            m.total_staleness += m.staleness[t];
        }
    }
    return m;
}

}  // namespace uavcoord
