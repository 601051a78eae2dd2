#include "uavcoord/agent.hpp"

namespace uavcoord {

AgentRuntime make_agent(const Instance& inst, int uav,
                        const MultiAgentPlan& mission_plan, AgentConfig cfg) {
    AgentRuntime rt;
    rt.id = uav;
    rt.history = seeded_history(inst, uav);
    rt.mission_plan = mission_plan;
    rt.current_plan = mission_plan;
    rt.config = cfg;
    if (rt.config.max_card < 0) rt.config.max_card = default_max_card(inst);
    return rt;
}

AgentStepOutcome agent_step(AgentRuntime& rt, const std::vector<ObsRecord>& incoming,
                            const Instance& inst) {
    AgentStepOutcome out;
    for (const auto& o : incoming) rt.history.add_obs(o);
    int step = rt.history.current_step;

    // reconcile first: the goal check is only meaningful on a history that
    // is consistent with the projection
    if (!unexpected(rt.history, rt.mission_plan, inst).empty()) {
        try {
            Explanation e =
                explain(rt.history, rt.mission_plan, inst, rt.config.max_card);
            rt.history.accepted = e;
            out.diagnosis = e;
            rt.current_plan =
                replan(rt.history, rt.mission_plan, inst, rt.config.horizon_limit);
            out.replanned = true;
        } catch (const NoDiagnosisError&) {
            // keep executing with stale beliefs; retry next step
            out.no_diagnosis = true;
        } catch (const UnsatisfiableHorizonError&) {
            out.no_diagnosis = true;
        }
    }

    if (goal_achieved(rt.history, inst, rt.mission_plan)) return out;

    Action a = next_action(rt.current_plan, rt.id, step);
    rt.history.record_action(a, step);
    out.action = a;
    return out;
}

}  // namespace uavcoord
