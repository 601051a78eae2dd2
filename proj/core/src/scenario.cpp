#include "uavcoord/scenario.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "uavcoord/diagnosis.hpp"
#include "uavcoord/planner.hpp"

namespace uavcoord {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> toks;
    std::istringstream in(line);
    std::string t;
    while (in >> t) {
        if (t[0] == '#') break;
        toks.push_back(t);
    }
    return toks;
}

int parse_int(const std::string& s, int line_no) {
    try {
        size_t pos;
        int v = std::stoi(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw SyntaxError(line_no, "expected integer, got '" + s + "'");
    }
}

LocKind parse_loc_kind(const std::string& s, int line_no) {
    if (s == "home_base") return LocKind::HomeBase;
    if (s == "waypoint") return LocKind::Waypoint;
    if (s == "target") return LocKind::Target;
    if (s == "relay_site") return LocKind::RelaySite;
    throw SyntaxError(line_no, "unknown location kind '" + s + "'");
}

const char* loc_kind_name(LocKind k) {
    switch (k) {
        case LocKind::HomeBase: return "home_base";
        case LocKind::Waypoint: return "waypoint";
        case LocKind::Target: return "target";
        case LocKind::RelaySite: return "relay_site";
    }
    return "?";
}

NodeKind parse_node_kind(const std::string& s, int line_no) {
    if (s == "uav") return NodeKind::Uav;
    if (s == "relay") return NodeKind::Relay;
    if (s == "base") return NodeKind::Base;
    throw SyntaxError(line_no, "unknown node kind '" + s + "'");
}

const char* node_kind_name(NodeKind k) {
    switch (k) {
        case NodeKind::Uav: return "uav";
        case NodeKind::Relay: return "relay";
        case NodeKind::Base: return "base";
    }
    return "?";
}

const char* action_word(const Action& a) {
    return a.kind == Action::Kind::Move ? "move" : "wait";
}

}  // namespace

const char* mode_name(Mode m) {
    switch (m) {
        case Mode::NetworkAware: return "network_aware";
        case Mode::Optimistic: return "optimistic";
        case Mode::Naive: return "naive";
    }
    return "?";
}

Scenario parse_scenario(const std::string& text) {
    Scenario sc;
    Instance& inst = sc.instance;
    struct PendingEdge {
        std::string a, b;
        int line;
    };
    struct PendingFault {
        std::string kind, node, loc;
        int step;
        int line;
    };
    std::vector<PendingEdge> edges;
    std::vector<PendingFault> faults;

    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto toks = tokenize(line);
        if (toks.empty()) continue;
        const std::string& kw = toks[0];
        if (kw == "grid" && toks.size() == 3) {
            sc.grid_w = parse_int(toks[1], line_no);
            sc.grid_h = parse_int(toks[2], line_no);
        } else if (kw == "range" && toks.size() == 2) {
            inst.radio_range = parse_int(toks[1], line_no);
        } else if (kw == "loc" && toks.size() == 5) {
            Location l;
            l.id = toks[1];
            l.x = parse_int(toks[2], line_no);
            l.y = parse_int(toks[3], line_no);
            l.kind = parse_loc_kind(toks[4], line_no);
            inst.locations.push_back(l);
        } else if (kw == "edge" && toks.size() == 3) {
            edges.push_back({toks[1], toks[2], line_no});
        } else if (kw == "node" && toks.size() == 4) {
            RadioNode n;
            n.id = toks[1];
            n.kind = parse_node_kind(toks[2], line_no);
            n.loc = inst.loc_index(toks[3]);
            if (n.loc < 0)
                throw SemanticError("node " + n.id + " placed at undefined location " +
                                    toks[3]);
            inst.nodes.push_back(n);
        } else if (kw == "fault" && toks.size() == 4 &&
                   (toks[1] == "break" || toks[1] == "abort")) {
            faults.push_back({toks[1], toks[2], "", parse_int(toks[3], line_no), line_no});
        } else if (kw == "fault" && toks.size() == 5 && toks[1] == "move") {
            faults.push_back({toks[1], toks[2], toks[3], parse_int(toks[4], line_no),
                              line_no});
        } else if (kw == "config" && toks.size() == 3) {
            if (toks[1] == "mode") {
                if (toks[2] == "network_aware")
                    sc.config.mode = Mode::NetworkAware;
                else if (toks[2] == "optimistic")
                    sc.config.mode = Mode::Optimistic;
                else if (toks[2] == "naive")
                    sc.config.mode = Mode::Naive;
                else
                    throw SyntaxError(line_no, "unknown mode '" + toks[2] + "'");
            } else if (toks[1] == "horizon") {
                sc.config.horizon = parse_int(toks[2], line_no);
            } else if (toks[1] == "max_card") {
                sc.config.max_card = parse_int(toks[2], line_no);
            } else if (toks[1] == "max_steps") {
                sc.config.max_steps = parse_int(toks[2], line_no);
            } else {
                throw SyntaxError(line_no, "unknown config key '" + toks[1] + "'");
            }
        } else {
            throw SyntaxError(line_no, "unrecognized record '" + line + "'");
        }
    }

    inst.adj.assign(inst.locations.size(), {});
    for (const auto& e : edges) {
        int a = inst.loc_index(e.a), b = inst.loc_index(e.b);
        if (a < 0 || b < 0)
            throw SemanticError("edge refers to undefined location at line " +
                                std::to_string(e.line));
        if (a == b)
            throw SemanticError("reflexive edge at line " + std::to_string(e.line));
        inst.adj[a].push_back(b);
        inst.adj[b].push_back(a);
    }
    for (auto& n : inst.adj) {
        std::sort(n.begin(), n.end());
        n.erase(std::unique(n.begin(), n.end()), n.end());
    }

    for (int i = 0; i < static_cast<int>(inst.locations.size()); ++i) {
        if (inst.locations[i].kind == LocKind::HomeBase) inst.home_loc = i;
        if (inst.locations[i].kind == LocKind::Target) inst.targets.push_back(i);
    }
    for (int i = 0; i < static_cast<int>(inst.nodes.size()); ++i) {
        if (inst.nodes[i].kind == NodeKind::Uav) inst.uavs.push_back(i);
        if (inst.nodes[i].kind == NodeKind::Base) inst.base_node = i;
    }
    inst.validate();

    for (const auto& f : faults) {
        int node = inst.node_index(f.node);
        if (node < 0)
            throw SemanticError("fault refers to undefined node " + f.node);
        if (f.step < 1)
            throw SemanticError("fault step must be >= 1 at line " +
                                std::to_string(f.line));
        if (f.kind == "break") {
            sc.faults.events.push_back({ExoEvent::Kind::Break, node, f.step});
        } else {
            int ord = inst.uav_ordinal(node);
            if (ord < 0)
                throw SemanticError("fault " + f.kind + " targets non-UAV node " +
                                    f.node);
            if (f.kind == "abort") {
                sc.faults.events.push_back({ExoEvent::Kind::Aborted, node, f.step});
            } else {
                int loc = inst.loc_index(f.loc);
                if (loc < 0)
                    throw SemanticError("fault move to undefined location " + f.loc);
                sc.faults.scripted.push_back({ord, loc, f.step});
            }
        }
    }
    // a scripted move implies the UAV left the plan at that step
    for (const auto& m : sc.faults.scripted) {
        bool covered = false;
        for (const auto& e : sc.faults.events)
            if (e.kind == ExoEvent::Kind::Aborted && e.node == inst.uavs[m.uav] &&
                e.step <= m.step)
                covered = true;
        if (!covered)
            sc.faults.events.push_back(
                {ExoEvent::Kind::Aborted, inst.uavs[m.uav], m.step});
    }
    std::sort(sc.faults.events.begin(), sc.faults.events.end());
    std::sort(sc.faults.scripted.begin(), sc.faults.scripted.end());
    return sc;
}

std::string emit_scenario(const Scenario& sc) {
    const Instance& inst = sc.instance;
    std::ostringstream out;
    out << "grid " << sc.grid_w << " " << sc.grid_h << "\n";
    out << "range " << inst.radio_range << "\n";
    for (const auto& l : inst.locations)
        out << "loc " << l.id << " " << l.x << " " << l.y << " "
            << loc_kind_name(l.kind) << "\n";
    for (int a = 0; a < static_cast<int>(inst.adj.size()); ++a)
        for (int b : inst.adj[a])
            if (a < b)
                out << "edge " << inst.locations[a].id << " " << inst.locations[b].id
                    << "\n";
    for (const auto& n : inst.nodes)
        out << "node " << n.id << " " << node_kind_name(n.kind) << " "
            << inst.locations[n.loc].id << "\n";
    for (const auto& e : sc.faults.events) {
        if (e.kind == ExoEvent::Kind::Break)
            out << "fault break " << inst.nodes[e.node].id << " " << e.step << "\n";
        else if (e.kind == ExoEvent::Kind::Aborted)
            out << "fault abort " << inst.nodes[e.node].id << " " << e.step << "\n";
    }
    for (const auto& m : sc.faults.scripted)
        out << "fault move " << inst.nodes[inst.uavs[m.uav]].id << " "
            << inst.locations[m.loc].id << " " << m.step << "\n";
    out << "config mode " << mode_name(sc.config.mode) << "\n";
    out << "config horizon " << sc.config.horizon << "\n";
    if (sc.config.max_card >= 0) out << "config max_card " << sc.config.max_card << "\n";
    out << "config max_steps " << sc.config.max_steps << "\n";
    return out.str();
}

std::string emit_plan(const MultiAgentPlan& plan, const Instance& inst) {
    std::ostringstream out;
    out << "plan v1\n";
    out << "horizon " << plan.horizon << "\n";
    out << "makespan " << plan.predicted_makespan << "\n";
    out << "staleness " << plan.predicted_total_staleness << "\n";
    for (int u = 0; u < static_cast<int>(plan.tracks.size()); ++u) {
        for (int s = 0; s < static_cast<int>(plan.tracks[u].size()); ++s) {
            const Action& a = plan.tracks[u][s];
            out << "track " << inst.nodes[inst.uavs[u]].id << " " << s << " "
                << action_word(a);
            if (a.kind == Action::Kind::Move) out << " " << inst.locations[a.dest].id;
            out << "\n";
        }
    }
    return out.str();
}

MultiAgentPlan parse_plan(const std::string& text, const Instance& inst) {
    MultiAgentPlan plan;
    plan.tracks.assign(inst.num_uavs(), {});
    plan.assumption_only.assign(inst.num_uavs(), 0);
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto toks = tokenize(line);
        if (toks.empty()) continue;
        if (toks[0] == "plan" && toks.size() == 2) continue;
        if (toks[0] == "horizon" && toks.size() == 2) {
            plan.horizon = parse_int(toks[1], line_no);
        } else if (toks[0] == "makespan" && toks.size() == 2) {
            plan.predicted_makespan = parse_int(toks[1], line_no);
        } else if (toks[0] == "staleness" && toks.size() == 2) {
            plan.predicted_total_staleness = parse_int(toks[1], line_no);
        } else if (toks[0] == "track" && (toks.size() == 4 || toks.size() == 5)) {
            int node = inst.node_index(toks[1]);
            int u = node >= 0 ? inst.uav_ordinal(node) : -1;
            if (u < 0) throw SemanticError("track for unknown UAV " + toks[1]);
            int step = parse_int(toks[2], line_no);
            Action a{Action::Kind::Wait, u, -1};
            if (toks[3] == "move") {
                if (toks.size() != 5) throw SyntaxError(line_no, "move needs a location");
                a.kind = Action::Kind::Move;
                a.dest = inst.loc_index(toks[4]);
                if (a.dest < 0) throw SemanticError("track moves to unknown location " + toks[4]);
            } else if (toks[3] != "wait") {
                throw SyntaxError(line_no, "unknown action '" + toks[3] + "'");
            }
            if (static_cast<int>(plan.tracks[u].size()) <= step)
                plan.tracks[u].resize(step + 1, Action{Action::Kind::Wait, u, -1});
            plan.tracks[u][step] = a;
        } else {
            throw SyntaxError(line_no, "unrecognized plan record '" + line + "'");
        }
    }
    for (auto& tr : plan.tracks)
        if (static_cast<int>(tr.size()) < plan.horizon)
            tr.resize(plan.horizon, Action{Action::Kind::Wait,
                                           static_cast<int>(&tr - plan.tracks.data()), -1});
    return plan;
}

namespace {

std::string fluent_text(const Fluent& f, const Instance& inst) {
    std::ostringstream out;
    switch (f.kind) {
        case Fluent::Kind::At:
            out << "at " << inst.nodes[inst.uavs[f.a]].id << " "
                << inst.locations[f.b].id;
            break;
        case Fluent::Kind::Down:
            out << "down " << inst.nodes[f.a].id;
            break;
        case Fluent::Kind::Contact:
            out << "contact " << inst.nodes[f.a].id << " " << inst.nodes[f.b].id;
            break;
        case Fluent::Kind::HasPic:
            out << "pic " << inst.nodes[f.a].id << " "
                << inst.locations[inst.targets[f.b]].id;
            break;
    }
    return out.str();
}

// parses the fluent part of an obs record starting at toks[i]; returns the
// number of tokens consumed
int parse_fluent(const std::vector<std::string>& toks, size_t i, const Instance& inst,
                 int line_no, Fluent& out) {
    if (i >= toks.size()) throw SyntaxError(line_no, "missing fluent");
    const std::string& k = toks[i];
    auto node_of = [&](const std::string& id) {
        int n = inst.node_index(id);
        if (n < 0) throw SemanticError("unknown node " + id);
        return n;
    };
    auto loc_of = [&](const std::string& id) {
        int l = inst.loc_index(id);
        if (l < 0) throw SemanticError("unknown location " + id);
        return l;
    };
    if (k == "at") {
        int u = inst.uav_ordinal(node_of(toks.at(i + 1)));
        if (u < 0) throw SemanticError("at-fluent names a non-UAV node");
        out = {Fluent::Kind::At, u, loc_of(toks.at(i + 2))};
        return 3;
    }
    if (k == "down") {
        out = {Fluent::Kind::Down, node_of(toks.at(i + 1)), -1};
        return 2;
    }
    if (k == "contact") {
        out = {Fluent::Kind::Contact, node_of(toks.at(i + 1)), node_of(toks.at(i + 2))};
        return 3;
    }
    if (k == "pic") {
        int t = inst.target_ordinal(loc_of(toks.at(i + 2)));
        if (t < 0) throw SemanticError("pic-fluent names a non-target location");
        out = {Fluent::Kind::HasPic, node_of(toks.at(i + 1)), t};
        return 3;
    }
    throw SyntaxError(line_no, "unknown fluent kind '" + k + "'");
}

bool parse_bool(const std::string& s, int line_no) {
    if (s == "true") return true;
    if (s == "false") return false;
    throw SyntaxError(line_no, "expected true/false, got '" + s + "'");
}

}  // namespace

std::string emit_history(const History& h, const Instance& inst) {
    std::ostringstream out;
    out << "history v1\n";
    out << "owner " << inst.nodes[inst.uavs[h.owner]].id << "\n";
    out << "currstep " << h.current_step << "\n";
    for (const auto& o : h.observations)
        out << "obs " << fluent_text(o.fluent, inst) << " "
            << (o.value ? "true" : "false") << " " << o.step << "\n";
    for (const auto& ta : h.own_actions) {
        out << "hpd " << action_word(ta.action);
        if (ta.action.kind == Action::Kind::Move)
            out << " " << inst.locations[ta.action.dest].id;
        out << " " << ta.step << "\n";
    }
    return out.str();
}

History parse_history(const std::string& text, const Instance& inst) {
    History h;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    int declared_step = -1;
    while (std::getline(in, line)) {
        ++line_no;
        auto toks = tokenize(line);
        if (toks.empty()) continue;
        if (toks[0] == "history" && toks.size() == 2) continue;
        if (toks[0] == "owner" && toks.size() == 2) {
            int n = inst.node_index(toks[1]);
            h.owner = n >= 0 ? inst.uav_ordinal(n) : -1;
            if (h.owner < 0) throw SemanticError("owner is not a UAV: " + toks[1]);
        } else if (toks[0] == "currstep" && toks.size() == 2) {
            declared_step = parse_int(toks[1], line_no);
        } else if (toks[0] == "obs" && toks.size() >= 4) {
            Fluent f;
            int used = parse_fluent(toks, 1, inst, line_no, f);
            if (static_cast<int>(toks.size()) != 1 + used + 2)
                throw SyntaxError(line_no, "malformed obs record");
            bool v = parse_bool(toks[1 + used], line_no);
            int step = parse_int(toks[2 + used], line_no);
            h.add_obs({f, v, step});
        } else if (toks[0] == "hpd" && toks.size() >= 3) {
            Action a{Action::Kind::Wait, h.owner, -1};
            int step;
            if (toks[1] == "move" && toks.size() == 4) {
                a.kind = Action::Kind::Move;
                a.dest = inst.loc_index(toks[2]);
                if (a.dest < 0) throw SemanticError("hpd moves to unknown location");
                step = parse_int(toks[3], line_no);
            } else if (toks[1] == "wait" && toks.size() == 3) {
                step = parse_int(toks[2], line_no);
            } else {
                throw SyntaxError(line_no, "malformed hpd record");
            }
            h.record_action(a, step);
        } else {
            throw SyntaxError(line_no, "unrecognized history record '" + line + "'");
        }
    }
    if (h.owner < 0) throw SemanticError("history lacks an owner record");
    if (declared_step >= 0) h.current_step = std::max(h.current_step, declared_step);
    return h;
}

std::string emit_explanation(const Explanation& e, const Instance& inst) {
    std::ostringstream out;
    out << "explanation card " << e.cardinality() << "\n";
    for (const auto& ev : e.events) {
        switch (ev.kind) {
            case ExoEvent::Kind::Break:
                out << "break " << inst.nodes[ev.node].id;
                break;
            case ExoEvent::Kind::Aborted:
                out << "aborted " << inst.nodes[ev.node].id;
                break;
            case ExoEvent::Kind::Unpredictable:
                out << "unpredictable " << inst.nodes[ev.node].id;
                break;
        }
        out << " " << ev.step << "\n";
    }
    for (const auto& m : e.moves)
        out << "hmove " << inst.nodes[inst.uavs[m.uav]].id << " "
            << inst.locations[m.loc].id << " " << m.step << "\n";
    return out.str();
}

std::string emit_trace(const Trace& trace, const Instance& inst) {
    std::ostringstream out;
    out << "trace v1\n";
    auto state_lines = [&](const State& s) {
        for (int u = 0; u < inst.num_uavs(); ++u)
            out << "state " << s.step << " at " << inst.nodes[inst.uavs[u]].id << " "
                << inst.locations[s.uav_loc[u]].id << "\n";
        for (int n = 0; n < inst.num_nodes(); ++n)
            if (s.down[n]) out << "state " << s.step << " down " << inst.nodes[n].id << "\n";
        for (int n = 0; n < inst.num_nodes(); ++n)
            for (int t = 0; t < inst.num_targets(); ++t)
                if (s.has_pic(n, t))
                    out << "state " << s.step << " pic " << inst.nodes[n].id << " "
                        << inst.locations[inst.targets[t]].id << "\n";
    };
    for (const auto& rec : trace.steps) {
        int step = rec.state.step;
        out << "step " << step << "\n";
        state_lines(rec.state);
        for (int u = 0; u < inst.num_uavs(); ++u)
            for (const auto& o : rec.observations[u])
                out << "obs " << step << " " << inst.nodes[inst.uavs[u]].id << " "
                    << fluent_text(o.fluent, inst) << " " << (o.value ? "true" : "false")
                    << "\n";
        for (const auto& d : rec.diagnoses) {
            out << "diag " << step << " " << inst.nodes[inst.uavs[d.uav]].id << " card "
                << d.explanation.cardinality();
            for (const auto& ev : d.explanation.events) {
                const char* w = ev.kind == ExoEvent::Kind::Break     ? "break"
                                : ev.kind == ExoEvent::Kind::Aborted ? "abort"
                                                                     : "unpred";
                out << " " << w << " " << inst.nodes[ev.node].id << " " << ev.step;
            }
            for (const auto& m : d.explanation.moves)
                out << " hmove " << inst.nodes[inst.uavs[m.uav]].id << " "
                    << inst.locations[m.loc].id << " " << m.step;
            out << "\n";
        }
        for (const auto& r : rec.replans)
            out << "replan " << step << " " << inst.nodes[inst.uavs[r.uav]].id
                << " makespan " << r.predicted_makespan << " staleness "
                << r.predicted_staleness << "\n";
        for (int u : rec.no_diagnosis)
            out << "nodiag " << step << " " << inst.nodes[inst.uavs[u]].id << "\n";
        for (const auto& a : rec.attempted) {
            bool rej = std::find(rec.rejected.begin(), rec.rejected.end(), a.uav) !=
                       rec.rejected.end();
            out << (rej ? "reject " : "act ") << step << " "
                << inst.nodes[inst.uavs[a.uav]].id << " " << action_word(a);
            if (a.kind == Action::Kind::Move) out << " " << inst.locations[a.dest].id;
            out << "\n";
        }
        for (const auto& e : rec.faults)
            out << "fault " << step << " break " << inst.nodes[e.node].id << "\n";
    }
    out << "end " << (trace.complete ? "complete" : "incomplete") << " "
        << trace.final_state.step << "\n";
    out << "metric mission_length "
        << (trace.complete ? std::to_string(trace.mission_length) : std::string("-"))
        << "\n";
    for (int t = 0; t < static_cast<int>(trace.staleness.size()); ++t)
        out << "metric staleness " << inst.locations[inst.targets[t]].id << " "
            << (trace.staleness[t] >= 0 ? std::to_string(trace.staleness[t])
                                        : std::string("-"))
            << "\n";
    out << "metric total_staleness " << trace.total_staleness << "\n";
    return out.str();
}

Metrics replay_trace(const std::string& text, const Instance& inst) {
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    int final_step = -1;
    bool complete = false;
    std::vector<std::vector<Action>> acts;
    std::vector<std::vector<ExoEvent>> faults;
    auto at_step = [&](int s) {
        if (static_cast<int>(acts.size()) <= s) {
            acts.resize(s + 1);
            faults.resize(s + 1);
        }
    };
    while (std::getline(in, line)) {
        ++line_no;
        auto toks = tokenize(line);
        if (toks.empty()) continue;
        if (toks[0] == "act" && toks.size() >= 4) {
            int step = parse_int(toks[1], line_no);
            int node = inst.node_index(toks[2]);
            int u = node >= 0 ? inst.uav_ordinal(node) : -1;
            if (u < 0) throw SemanticError("act line names unknown UAV " + toks[2]);
            at_step(step);
            if (toks[3] == "move") {
                int loc = inst.loc_index(toks.at(4));
                if (loc < 0) throw SemanticError("act line names unknown location");
                acts[step].push_back({Action::Kind::Move, u, loc});
            }
        } else if (toks[0] == "fault" && toks.size() == 4 && toks[2] == "break") {
            int step = parse_int(toks[1], line_no);
            int node = inst.node_index(toks[3]);
            if (node < 0) throw SemanticError("fault line names unknown node");
            at_step(step);
            faults[step].push_back({ExoEvent::Kind::Break, node, step});
        } else if (toks[0] == "end" && toks.size() == 3) {
            complete = toks[1] == "complete";
            final_step = parse_int(toks[2], line_no);
        }
        // all other record kinds are state/observation echoes
    }
    if (final_step < 0) throw SemanticError("trace lacks an end record");

    Metrics m;
    int nt = inst.num_targets();
    std::vector<int> capture(nt, -1), receipt(nt, -1);
    State s = initial_state(inst);
    auto stamp = [&](const State& st) {
        std::uint32_t cap = 0;
        for (auto p : st.pics) cap |= p;
        for (int t = 0; t < nt; ++t) {
            if (capture[t] < 0 && ((cap >> t) & 1u)) capture[t] = st.step;
            if (receipt[t] < 0 && st.has_pic(inst.base_node, t)) receipt[t] = st.step;
        }
    };
    stamp(s);
    for (int step = 0; step < final_step; ++step) {
        std::vector<Action> a = step < static_cast<int>(acts.size()) ? acts[step]
                                                                     : std::vector<Action>{};
        std::vector<ExoEvent> f =
            step < static_cast<int>(faults.size()) ? faults[step] : std::vector<ExoEvent>{};
        s = transition(s, a, f, inst);
        stamp(s);
    }
    m.complete = complete;
    m.mission_length = complete ? final_step : -1;
    m.staleness.assign(nt, -1);
    for (int t = 0; t < nt; ++t)
        if (receipt[t] >= 0) {
            m.staleness[t] = receipt[t] - capture[t];
            m.total_staleness += m.staleness[t];
        }
    return m;
}

std::string emit_report(const std::vector<ModeResult>& results) {
    std::ostringstream out;
    out << "report v1\n";
    for (const auto& r : results)
        out << "mode " << mode_name(r.mode) << " mission_length " << r.mission_length
            << " total_staleness " << r.total_staleness << "\n";
    const ModeResult* aware = nullptr;
    for (const auto& r : results)
        if (r.mode == Mode::NetworkAware) aware = &r;
    auto pct = [](long long base, long long val) {
        // (base - val) / base, one decimal, exact integer arithmetic
        long long num = (base - val) * 1000;
        long long p10 = base != 0 ? num / base : 0;
        std::ostringstream s;
        s << p10 / 10 << "." << std::abs(p10 % 10) << "%";
        return s.str();
    };
    if (aware) {
        for (const auto& r : results) {
            if (r.mode == Mode::NetworkAware) continue;
            out << "reduction mission_length network_aware_vs_" << mode_name(r.mode)
                << " " << pct(r.mission_length, aware->mission_length) << "\n";
            out << "reduction total_staleness network_aware_vs_" << mode_name(r.mode)
                << " " << pct(r.total_staleness, aware->total_staleness) << "\n";
        }
    }
    return out.str();
}

Scenario generate_scenario(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    auto rnd = [&](int lo, int hi) {
        return static_cast<int>(lo + rng() % static_cast<std::uint64_t>(hi - lo + 1));
    };
    Scenario sc;
    Instance& inst = sc.instance;
    sc.grid_w = rnd(12, 20);
    sc.grid_h = rnd(12, 20);
    inst.radio_range = rnd(4, 8);

    int nloc = rnd(8, 14);
    std::vector<std::pair<int, int>> coords;
    while (static_cast<int>(coords.size()) < nloc) {
        std::pair<int, int> c{rnd(0, sc.grid_w), rnd(0, sc.grid_h)};
        if (std::find(coords.begin(), coords.end(), c) == coords.end())
            coords.push_back(c);
    }
    int ntargets = rnd(1, 2);
    int nrelays = rnd(1, 3);
    for (int i = 0; i < nloc; ++i) {
        Location l;
        l.id = "l" + std::to_string(i);
        l.x = coords[i].first;
        l.y = coords[i].second;
        l.kind = i == 0                    ? LocKind::HomeBase
                 : i <= ntargets           ? LocKind::Target
                 : i <= ntargets + nrelays ? LocKind::RelaySite
                                           : LocKind::Waypoint;
        inst.locations.push_back(l);
    }
    inst.adj.assign(nloc, {});
    auto link = [&](int a, int b) {
        if (a == b) return;
        if (!std::count(inst.adj[a].begin(), inst.adj[a].end(), b)) {
            inst.adj[a].push_back(b);
            inst.adj[b].push_back(a);
        }
    };
    for (int i = 1; i < nloc; ++i) link(i, rnd(0, i - 1));
    int extra = rnd(1, nloc / 2);
    for (int i = 0; i < extra; ++i) link(rnd(0, nloc - 1), rnd(0, nloc - 1));
    for (auto& n : inst.adj) std::sort(n.begin(), n.end());

    inst.home_loc = 0;
    for (int i = 0; i < nloc; ++i)
        if (inst.locations[i].kind == LocKind::Target) inst.targets.push_back(i);

    inst.nodes.push_back({"base", NodeKind::Base, 0});
    inst.base_node = 0;
    for (int r = 0; r < nrelays; ++r)
        inst.nodes.push_back({"r" + std::to_string(r + 1), NodeKind::Relay,
                              1 + ntargets + r});
    int nuavs = rnd(1, 2);
    for (int u = 0; u < nuavs; ++u) {
        inst.nodes.push_back({"u" + std::to_string(u + 1), NodeKind::Uav, 0});
        inst.uavs.push_back(static_cast<int>(inst.nodes.size()) - 1);
    }
    inst.validate();
    sc.config.horizon = 16;
    sc.config.max_steps = 32;
    return sc;
}

}  // namespace uavcoord
