#include <benchmark/benchmark.h>

#include "uavcoord/planner.hpp"
#include "uavcoord/scenario.hpp"
#include "uavcoord/world.hpp"

using namespace uavcoord;

static void BM_Connectivity(benchmark::State& state) {
    Scenario sc = generate_scenario(42);
    const Instance& inst = sc.instance;
    State s = initial_state(inst);
    for (auto _ : state) {
        auto comp = connectivity(s.uav_loc, s.down, inst);
        benchmark::DoNotOptimize(comp);
    }
}
BENCHMARK(BM_Connectivity);

static void BM_Transition(benchmark::State& state) {
    Scenario sc = generate_scenario(42);
    const Instance& inst = sc.instance;
    State s = initial_state(inst);
    std::vector<Action> acts;
    for (int u = 0; u < inst.num_uavs(); ++u)
        acts.push_back({Action::Kind::Move, u, inst.adj[s.uav_loc[u]].front()});
    for (auto _ : state) {
        State ns = transition(s, acts, {}, inst);
        benchmark::DoNotOptimize(ns);
    }
}
BENCHMARK(BM_Transition);

static void BM_PlanMission(benchmark::State& state) {
    Scenario sc = generate_scenario(7);
    for (auto _ : state) {
        MultiAgentPlan p = plan_mission(sc.instance, Mode::NetworkAware, 40);
        benchmark::DoNotOptimize(p);
    }
}
BENCHMARK(BM_PlanMission);

BENCHMARK_MAIN();
