#include "uavcoord/diagnosis.hpp"

#include <algorithm>
#include <climits>
#include <functional>

namespace uavcoord {

void Explanation::normalize() {
    std::sort(events.begin(), events.end());
    events.erase(std::unique(events.begin(), events.end()), events.end());
    std::sort(moves.begin(), moves.end());
    moves.erase(std::unique(moves.begin(), moves.end()), moves.end());
}

int Explanation::aborted_step(int uav, const Instance& inst) const {
    int best = INT_MAX;
    for (const auto& e : events)
        if (e.kind == ExoEvent::Kind::Aborted && e.node == inst.uavs[uav])
            best = std::min(best, e.step);
    return best;
}

int Explanation::unpredictable_step(int uav, const Instance& inst) const {
    int best = INT_MAX;
    for (const auto& e : events)
        if (e.kind == ExoEvent::Kind::Unpredictable && e.node == inst.uavs[uav])
            best = std::min(best, e.step);
    return best;
}

int default_max_card(const Instance& inst) {
    int relays = 0;
    for (const auto& n : inst.nodes)
        if (n.kind == NodeKind::Relay) ++relays;
    return relays + 2 * inst.num_uavs();
}

namespace {

// BFS hop distances between all location pairs.
std::vector<std::vector<int>> location_distances(const Instance& inst) {
    int n = static_cast<int>(inst.locations.size());
    std::vector<std::vector<int>> d(n, std::vector<int>(n, INT_MAX));
    for (int s = 0; s < n; ++s) {
        d[s][s] = 0;
        std::vector<int> q{s};
        for (size_t i = 0; i < q.size(); ++i)
            for (int w : inst.adj[q[i]])
                if (d[s][w] == INT_MAX) {
                    d[s][w] = d[s][q[i]] + 1;
                    q.push_back(w);
                }
    }
    return d;
}

struct PosConstraint {
    int step;
    int loc;
    bool value;
};

struct SearchContext {
    const History& h;
    const MultiAgentPlan& plan;
    const Instance& inst;
    std::vector<std::vector<int>> loc_dist;
    std::vector<ExoEvent> candidates;
    // per uav ordinal, at-observations about that uav
    std::vector<std::vector<PosConstraint>> pos_obs;
    long budget = 0;  // move-search node budget per candidate combo
};

bool satisfies_pos_obs(const SearchContext& ctx, int uav, int step, int loc) {
    for (const auto& c : ctx.pos_obs[uav]) {
        if (c.step != step) continue;
        if (c.value && c.loc != loc) return false;
        if (!c.value && c.loc == loc) return false;
    }
    return true;
}

// Earliest future step with a positive at-observation for `uav` after `step`.
bool reachable_future_obs(const SearchContext& ctx, int uav, int step, int loc) {
    for (const auto& c : ctx.pos_obs[uav]) {
        if (!c.value || c.step <= step) continue;
        int d = ctx.loc_dist[loc][c.loc];
        if (d == INT_MAX || d > c.step - step) return false;
    }
    return true;
}

bool check_explanation(const SearchContext& ctx, const Explanation& cand) {
    History trial = ctx.h;
    trial.accepted = cand;
    Trajectory traj = project(trial, ctx.plan, ctx.inst);
    return unexpected(trial, traj, ctx.inst).empty();
}

// Recursive search over hypothesized move sequences for the unpredictable
// UAVs, in deterministic order (uav, then step, stay-put before moves, then
// destination index). Returns the first complete assignment that passes the
// full reality check.
bool search_moves(SearchContext& ctx, const Explanation& events_only,
                  const std::vector<std::pair<int, int>>& windows,  // (uav, start)
                  size_t wi, std::vector<HypMove>& moves, Explanation& out) {
    if (wi == windows.size()) {
        Explanation cand = events_only;
        cand.moves = moves;
        cand.normalize();
        if (check_explanation(ctx, cand)) {
            out = cand;
            return true;
        }
        return false;
    }
    int uav = windows[wi].first;
    int start = windows[wi].second;

    // position at the start of the window comes from the frozen prefix
    History trial = ctx.h;
    trial.accepted = events_only;
    trial.accepted.moves = moves;
    trial.accepted.normalize();
    Trajectory prefix = project(trial, ctx.plan, ctx.inst);
    for (int t = 0; t <= start && t < static_cast<int>(prefix.states.size()); ++t)
        if (!satisfies_pos_obs(ctx, uav, t, prefix.states[t].uav_loc[uav]))
            return false;
    int p0 = prefix.states[std::min<int>(start, ctx.h.current_step)].uav_loc[uav];

    std::function<bool(int, int)> dfs = [&](int t, int pos) -> bool {
        if (--ctx.budget < 0) return false;
        if (t == ctx.h.current_step)
            return search_moves(ctx, events_only, windows, wi + 1, moves, out);
        // stay put
        if (satisfies_pos_obs(ctx, uav, t + 1, pos) &&
            reachable_future_obs(ctx, uav, t + 1, pos)) {
            if (dfs(t + 1, pos)) return true;
        }
        for (int dest : ctx.inst.adj[pos]) {
            if (!satisfies_pos_obs(ctx, uav, t + 1, dest)) continue;
            if (!reachable_future_obs(ctx, uav, t + 1, dest)) continue;
            moves.push_back({uav, dest, t});
            if (dfs(t + 1, dest)) return true;
            moves.pop_back();
        }
        return false;
    };
    return dfs(start, p0);
}

bool try_combo(SearchContext& ctx, const std::vector<ExoEvent>& combo, Explanation& out) {
    Explanation cand;
    cand.events = combo;
    cand.normalize();

    std::vector<std::pair<int, int>> windows;  // (uav ordinal, unpred step)
    for (const auto& e : cand.events)
        if (e.kind == ExoEvent::Kind::Unpredictable)
            windows.push_back({ctx.inst.uav_ordinal(e.node), e.step});
    std::sort(windows.begin(), windows.end());

    if (windows.empty()) return check_explanation(ctx, cand) && (out = cand, true);

    ctx.budget = 200000;
    std::vector<HypMove> moves;
    return search_moves(ctx, cand, windows, 0, moves, out);
}

// Structural validity of a combination, checked before any projection.
bool combo_valid(const std::vector<ExoEvent>& combo, const Instance& inst) {
    for (size_t i = 0; i < combo.size(); ++i) {
        for (size_t j = i + 1; j < combo.size(); ++j) {
            if (combo[i].kind == combo[j].kind && combo[i].node == combo[j].node)
                return false;  // one occurrence per (kind, node) is enough
        }
        if (combo[i].kind == ExoEvent::Kind::Unpredictable) {
            bool supported = false;
            for (const auto& e : combo)
                if (e.kind == ExoEvent::Kind::Aborted && e.node == combo[i].node &&
                    e.step <= combo[i].step)
                    supported = true;
            if (!supported) return false;
        }
    }
    (void)inst;
    return true;
}

std::vector<ExoEvent> build_candidates(const History& h, const Instance& inst) {
    std::vector<ExoEvent> cands;
    for (int node = 0; node < inst.num_nodes(); ++node)
        for (int s = 0; s < h.current_step; ++s)
            cands.push_back({ExoEvent::Kind::Break, node, s});
    for (int u = 0; u < inst.num_uavs(); ++u) {
        if (u == h.owner) continue;
        for (int s = 0; s < h.current_step; ++s)
            cands.push_back({ExoEvent::Kind::Aborted, inst.uavs[u], s});
    }
    for (int u = 0; u < inst.num_uavs(); ++u) {
        if (u == h.owner) continue;
        for (int s = 0; s < h.current_step; ++s)
            cands.push_back({ExoEvent::Kind::Unpredictable, inst.uavs[u], s});
    }
    return cands;
}

SearchContext make_context(const History& h, const MultiAgentPlan& plan,
                           const Instance& inst) {
    SearchContext ctx{h, plan, inst, location_distances(inst),
                      build_candidates(h, inst),
                      std::vector<std::vector<PosConstraint>>(inst.num_uavs())};
    for (const auto& o : h.observations)
        if (o.fluent.kind == Fluent::Kind::At)
            ctx.pos_obs[o.fluent.a].push_back({o.step, o.fluent.b, o.value});
    return ctx;
}

// Enumerates k-subsets of candidates in lexicographic order; stops at the
// first hit when `all` is null, otherwise collects every hit.
bool search_cardinality(SearchContext& ctx, int k, Explanation& out,
                        std::vector<Explanation>* all) {
    std::vector<ExoEvent> combo;
    bool found = false;
    std::function<bool(size_t)> rec = [&](size_t from) -> bool {
        if (static_cast<int>(combo.size()) == k) {
            if (!combo_valid(combo, ctx.inst)) return false;
            Explanation e;
            if (try_combo(ctx, combo, e)) {
                if (!found) out = e;
                found = true;
                if (all) all->push_back(e);
                return all == nullptr;
            }
            return false;
        }
        for (size_t i = from; i < ctx.candidates.size(); ++i) {
            combo.push_back(ctx.candidates[i]);
            if (rec(i + 1)) return true;
            combo.pop_back();
        }
        return false;
    };
    rec(0);
    return found;
}

// Full search is exact but combinatorial; beyond this depth explain() falls
// back to extending the previously accepted explanation.
constexpr int kFullSearchDepth = 3;

}  // namespace

Explanation explain(const History& h, const MultiAgentPlan& plan,
                    const Instance& inst, int max_card) {
    if (max_card < 0) max_card = default_max_card(inst);
    if (unexpected(h, plan, inst).empty())
        throw PreconditionError("explain called on a consistent history");

    SearchContext ctx = make_context(h, plan, inst);
    Explanation out;
    for (int k = 0; k <= std::min(max_card, kFullSearchDepth); ++k)
        if (search_cardinality(ctx, k, out, nullptr)) return out;

    // Incremental phase: keep the previously accepted events, search for a
    // minimal set of additional events (moves are redone from scratch).
    if (!h.accepted.events.empty() &&
        static_cast<int>(h.accepted.events.size()) < max_card) {
        SearchContext ictx = ctx;
        std::vector<ExoEvent> base = h.accepted.events;
        std::erase_if(ictx.candidates, [&](const ExoEvent& e) {
            return std::find(base.begin(), base.end(), e) != base.end();
        });
        int room = max_card - static_cast<int>(base.size());
        for (int k = 0; k <= room; ++k) {
            std::vector<ExoEvent> combo;
            Explanation found;
            bool hit = false;
            std::function<bool(size_t)> rec = [&](size_t from) -> bool {
                if (static_cast<int>(combo.size()) == k) {
                    std::vector<ExoEvent> full = base;
                    full.insert(full.end(), combo.begin(), combo.end());
                    std::sort(full.begin(), full.end());
                    if (!combo_valid(full, inst)) return false;
                    if (try_combo(ictx, full, found)) {
                        hit = true;
                        return true;
                    }
                    return false;
                }
                for (size_t i = from; i < ictx.candidates.size(); ++i) {
                    combo.push_back(ictx.candidates[i]);
                    if (rec(i + 1)) return true;
                    combo.pop_back();
                }
                return false;
            };
            rec(0);
            if (hit) return found;
        }
    }
    throw NoDiagnosisError("no explanation within cardinality " +
                           std::to_string(max_card));
}

std::vector<Explanation> enumerate_minimal(const History& h,
                                           const MultiAgentPlan& plan,
                                           const Instance& inst, int max_card) {
    if (max_card < 0) max_card = default_max_card(inst);
    if (unexpected(h, plan, inst).empty())
        throw PreconditionError("enumerate_minimal called on a consistent history");

    SearchContext ctx = make_context(h, plan, inst);
    for (int k = 0; k <= max_card; ++k) {
        std::vector<Explanation> all;
        Explanation first;
        if (search_cardinality(ctx, k, first, &all)) return all;
    }
    throw NoDiagnosisError("no explanation within cardinality " +
                           std::to_string(max_card));
}

}  // namespace uavcoord
