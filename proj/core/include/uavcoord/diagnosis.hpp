#pragma once

#include <vector>

#include "uavcoord/belief.hpp"

namespace uavcoord {

// Default hypothesis budget: every non-UAV radio broken plus every other
// UAV aborted and unpredictable.
int default_max_card(const Instance& inst);

// Minimal-cardinality explanation reconciling the history with the mission
// plan. Ties are broken by deterministic lexicographic enumeration
// (break < aborted < unpredictable, then node index, then step).
// Preconditions: unexpected(h, plan, inst) is nonempty.
// Throws NoDiagnosisError when nothing within max_card works.
Explanation explain(const History& h, const MultiAgentPlan& plan,
                    const Instance& inst, int max_card);

// All minimal-cardinality explanations in deterministic order; explain
// returns the first. Intended for desk-scale instances.
std::vector<Explanation> enumerate_minimal(const History& h,
                                           const MultiAgentPlan& plan,
                                           const Instance& inst, int max_card);

}  // namespace uavcoord
