#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "uavcoord/belief.hpp"
#include "uavcoord/plan.hpp"
#include "uavcoord/world.hpp"

namespace uavcoord::test {

// Fills targets/uavs/base_node/home_loc from the location and node lists,
// symmetrizes adjacency, and validates.
void finalize_instance(Instance& inst);

// Adds an undirected edge (by location index).
void add_edge(Instance& inst, int a, int b);

// base + one UAV at home, one target adjacent to home and in radio range.
Instance tiny_instance();

// Independent contact oracle: literal least-fixpoint of the base and
// recursive in_contact rules over the direct-range graph of up nodes.
std::set<std::pair<int, int>> oracle_contact_pairs(const std::vector<int>& uav_loc,
                                                   const std::vector<char>& down,
                                                   const Instance& inst);

// Exhaustive layered enumeration of joint action sequences up to `horizon`:
// optimal (makespan, total staleness) for delivering all targets, or nullopt.
std::optional<Objective> oracle_optimal_objective(const Instance& inst, int horizon);

// Brute-force minimal diagnosis cardinality: enumerates all subsets of
// break/abort hypotheses up to max_card and checks them with the projection.
std::optional<int> oracle_min_cardinality(const History& h, const MultiAgentPlan& plan,
                                          const Instance& inst, int max_card);

// Seeded random instance with small bounds (for the oracle suites).
Instance random_instance(std::mt19937_64& rng, int max_locs, int max_uavs,
                         int max_targets, int max_relays);

// Random consistent state for property tests: random positions, down set and
// picture holdings, closed under capture and sharing.
State random_state(std::mt19937_64& rng, const Instance& inst);

}  // namespace uavcoord::test
