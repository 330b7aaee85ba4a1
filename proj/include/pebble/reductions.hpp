#pragma once

#include <functional>
#include <vector>

#include "pebble/generators.hpp"
#include "pebble/partitions.hpp"  // InstanceTooLarge

namespace pebble {

struct MaxIndependentSets {
    std::size_t size = 0;
    std::vector<std::vector<NodeId>> sets;  // all maximum sets, lexicographic
};

// Subset enumeration, guarded to 24 nodes.
MaxIndependentSets brute_force_max_independent_sets(const UndirectedGraph& g0);

// Does some maximum independent set contain v0?
bool maxinset_vertex(const UndirectedGraph& g0, NodeId v0);

UndirectedGraph complement(const UndirectedGraph& g0);

// Answers whether some maximum clique of the graph contains the node.
using MaxCliqueVertexOracle = std::function<bool(const UndirectedGraph&, NodeId)>;

// The brute-force oracle: maxinset_vertex on the complement graph.
bool brute_force_maxclique_vertex(const UndirectedGraph& g0, NodeId v0);

struct MaxCliqueResult {
    std::vector<NodeId> clique;   // original node ids, ascending
    std::size_t oracle_calls = 0;
};

// Recursive node removal driven by a maxclique-vertex oracle: if every node
// has full degree the graph is a clique; otherwise remove the lowest-id node
// outside all maximum cliques, or failing that the lowest-id node of
// sub-full degree (some maximum clique survives either removal).
MaxCliqueResult maxclique_via_oracle(const UndirectedGraph& g0,
                                     const MaxCliqueVertexOracle& oracle);

}  // namespace pebble
