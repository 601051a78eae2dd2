#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "uavcoord/diagnosis.hpp"
#include "uavcoord/planner.hpp"
#include "uavcoord/scenario.hpp"
#include "uavcoord/simulator.hpp"

using namespace uavcoord;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_out(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

struct CommonOpts {
    std::string scenario;
    std::string mode;
    int horizon = -1;
    int max_card = -2;
    int max_steps = -1;
    std::string trace_out;
};

Scenario load(const CommonOpts& o) {
    Scenario sc = parse_scenario(slurp(o.scenario));
    if (o.mode == "network_aware")
        sc.config.mode = Mode::NetworkAware;
    else if (o.mode == "optimistic")
        sc.config.mode = Mode::Optimistic;
    else if (o.mode == "naive")
        sc.config.mode = Mode::Naive;
    else if (!o.mode.empty())
        throw CLI::ValidationError("--mode", "unknown mode " + o.mode);
    if (o.horizon >= 0) sc.config.horizon = o.horizon;
    if (o.max_card >= -1) sc.config.max_card = o.max_card;
    if (o.max_steps >= 0) sc.config.max_steps = o.max_steps;
    return sc;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Network-aware UAV mission coordination"};
    app.require_subcommand(1);
    CommonOpts opt;
    std::string history_path, plan_path, out_path;
    std::uint64_t seed = 0;

    auto add_common = [&](CLI::App* cmd, bool needs_scenario = true) {
        auto* s = cmd->add_option("--scenario", opt.scenario, "scenario file");
        if (needs_scenario) s->required();
        cmd->add_option("--mode", opt.mode, "network_aware|optimistic|naive");
        cmd->add_option("--horizon", opt.horizon, "planning horizon limit");
        cmd->add_option("--max-card", opt.max_card, "diagnosis cardinality budget");
        cmd->add_option("--max-steps", opt.max_steps, "simulation step limit");
    };

    auto* c_plan = app.add_subcommand("plan", "compute and print a mission plan");
    add_common(c_plan);
    c_plan->add_option("--out", out_path, "output file (default stdout)");

    auto* c_run = app.add_subcommand("run", "execute the mission with faults");
    add_common(c_run);
    c_run->add_option("--trace-out", opt.trace_out, "trace output file");

    auto* c_explain = app.add_subcommand("explain", "one-shot diagnosis of a history");
    add_common(c_explain);
    c_explain->add_option("--history", history_path, "serialized history")->required();
    c_explain->add_option("--plan", plan_path, "mission plan file (default: recompute)");

    auto* c_compare = app.add_subcommand("compare", "per-mode comparison report");
    add_common(c_compare);

    auto* c_gen = app.add_subcommand("gen", "emit a seeded random scenario");
    c_gen->add_option("--seed", seed, "rng seed")->required();
    c_gen->add_option("--out", out_path, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (c_gen->parsed()) {
            write_out(out_path, emit_scenario(generate_scenario(seed)));
            return 0;
        }
        Scenario sc = load(opt);
        const Instance& inst = sc.instance;

        if (c_plan->parsed()) {
            MultiAgentPlan plan = plan_mission(inst, sc.config.mode, sc.config.horizon);
            write_out(out_path, emit_plan(plan, inst));
            return 0;
        }
        if (c_run->parsed()) {
            MultiAgentPlan plan = plan_mission(inst, sc.config.mode, sc.config.horizon);
            AgentConfig cfg{sc.config.horizon, sc.config.max_card};
            Trace trace = run(inst, plan, sc.faults, sc.config.max_steps, cfg);
            write_out(opt.trace_out, emit_trace(trace, inst));
            return trace.complete ? 0 : 3;
        }
        if (c_explain->parsed()) {
            History h = parse_history(slurp(history_path), inst);
            MultiAgentPlan plan =
                plan_path.empty()
                    ? plan_mission(inst, sc.config.mode, sc.config.horizon)
                    : parse_plan(slurp(plan_path), inst);
            Explanation e = explain(h, plan, inst, sc.config.max_card);
            std::cout << emit_explanation(e, inst);
            return 0;
        }
        if (c_compare->parsed()) {
            std::vector<ModeResult> results;
            for (Mode m : {Mode::NetworkAware, Mode::Optimistic, Mode::Naive}) {
                MultiAgentPlan plan = plan_mission(inst, m, sc.config.horizon);
                Objective obj = evaluate(plan, inst, sc.faults.events);
                results.push_back({m, obj.makespan, obj.total_staleness});
            }
            std::cout << emit_report(results);
            return 0;
        }
    } catch (const SyntaxError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const SemanticError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
