#include "pebble/reductions.hpp"

#include <algorithm>
#include <bit>

namespace pebble {

namespace {

constexpr std::size_t kMaxEnumNodes = 24;

std::vector<std::uint32_t> adjacency_masks(const UndirectedGraph& g) {
    std::vector<std::uint32_t> adj(g.node_count, 0);
    for (auto [u, v] : g.edges) {
        adj[u] |= std::uint32_t{1} << v;
        adj[v] |= std::uint32_t{1} << u;
    }
    return adj;
}

bool independent(const std::vector<std::uint32_t>& adj, std::uint32_t mask) {
    for (std::uint32_t rest = mask; rest;) {
        const auto v = static_cast<std::size_t>(std::countr_zero(rest));
        rest &= rest - 1;
        if (adj[v] & mask) return false;
    }
    return true;
}

std::vector<NodeId> mask_to_set(std::uint32_t mask) {
    std::vector<NodeId> out;
    while (mask) {
        out.push_back(static_cast<NodeId>(std::countr_zero(mask)));
        mask &= mask - 1;
    }
    return out;
}

void check_enum_guard(const UndirectedGraph& g) {
    if (g.node_count > kMaxEnumNodes)
        throw InstanceTooLarge("subset enumeration is guarded to " +
                               std::to_string(kMaxEnumNodes) + " nodes");
}

}  // namespace

MaxIndependentSets brute_force_max_independent_sets(const UndirectedGraph& g0) {
    check_enum_guard(g0);
    const auto adj = adjacency_masks(g0);
    const std::uint32_t limit =
        g0.node_count == 0 ? 1 : (std::uint32_t{1} << g0.node_count);

    MaxIndependentSets out;
    for (std::uint32_t mask = 0; mask < limit; ++mask) {
        if (!independent(adj, mask)) continue;
        const auto size = static_cast<std::size_t>(std::popcount(mask));
        if (size > out.size) {
            out.size = size;
            out.sets.clear();
        }
        if (size == out.size) out.sets.push_back(mask_to_set(mask));
    }
    std::sort(out.sets.begin(), out.sets.end());
    return out;
}

bool maxinset_vertex(const UndirectedGraph& g0, NodeId v0) {
    check_enum_guard(g0);
    if (v0 >= g0.node_count) throw std::invalid_argument("v0 out of range");
    const auto adj = adjacency_masks(g0);
    const std::uint32_t limit = std::uint32_t{1} << g0.node_count;
    std::size_t best = 0, best_with_v0 = 0;
    for (std::uint32_t mask = 0; mask < limit; ++mask) {
        if (!independent(adj, mask)) continue;
        const auto size = static_cast<std::size_t>(std::popcount(mask));
        best = std::max(best, size);
        if (mask & (std::uint32_t{1} << v0)) best_with_v0 = std::max(best_with_v0, size);
    }
    return best_with_v0 == best;
}

UndirectedGraph complement(const UndirectedGraph& g0) {
    std::vector<std::pair<NodeId, NodeId>> edges;
    std::vector<std::vector<char>> present(g0.node_count,
                                           std::vector<char>(g0.node_count, 0));
    for (auto [u, v] : g0.edges) present[u][v] = present[v][u] = 1;
    for (NodeId u = 0; u < g0.node_count; ++u)
        for (NodeId v = u + 1; v < g0.node_count; ++v)
            if (!present[u][v]) edges.push_back({u, v});
    return UndirectedGraph::build(g0.node_count, std::move(edges));
}

bool brute_force_maxclique_vertex(const UndirectedGraph& g0, NodeId v0) {
    return maxinset_vertex(complement(g0), v0);
}

MaxCliqueResult maxclique_via_oracle(const UndirectedGraph& g0,
                                     const MaxCliqueVertexOracle& oracle) {
    MaxCliqueResult result;
    UndirectedGraph g = g0;
    std::vector<NodeId> original(g.node_count);
    for (NodeId v = 0; v < g.node_count; ++v) original[v] = v;

    auto remove_node = [](const UndirectedGraph& in, NodeId del) {
        std::vector<std::pair<NodeId, NodeId>> edges;
        for (auto [u, v] : in.edges) {
            if (u == del || v == del) continue;
            edges.push_back({u > del ? u - 1 : u, v > del ? v - 1 : v});
        }
        return UndirectedGraph::build(in.node_count - 1, std::move(edges));
    };

    while (g.node_count > 0) {
        std::vector<std::size_t> degree(g.node_count, 0);
        for (auto [u, v] : g.edges) {
            ++degree[u];
            ++degree[v];
        }
        const bool complete = std::all_of(degree.begin(), degree.end(), [&](std::size_t d) {
            return d == g.node_count - 1;
        });
        if (complete) {
            result.clique = original;
            std::sort(result.clique.begin(), result.clique.end());
            return result;
        }
        // Ask the oracle for every node; drop the lowest-id node outside all
        // maximum cliques if one exists.
        NodeId drop = static_cast<NodeId>(g.node_count);
        for (NodeId v = 0; v < g.node_count; ++v) {
            ++result.oracle_calls;
            if (!oracle(g, v)) {
                drop = v;
                break;
            }
        }
        if (drop == static_cast<NodeId>(g.node_count)) {
            // Every node lies in some maximum clique; removing a node of
            // sub-full degree keeps the maximum clique of a non-neighbor.
            for (NodeId v = 0; v < g.node_count; ++v)
                if (degree[v] + 1 < g.node_count) {
                    drop = v;
                    break;
                }
        }
        g = remove_node(g, drop);
        original.erase(original.begin() + drop);
    }
    return result;  // empty graph: empty clique
}

}  // namespace pebble
