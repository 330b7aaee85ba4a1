#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pebble {

using NodeId = std::uint32_t;
using EdgeId = std::uint32_t;
using Edge = std::pair<NodeId, NodeId>;

enum class DagErrorKind {
    CycleDetected,
    DuplicateEdge,
    SelfLoop,
    IsolatedNode,
    IdOutOfRange,
    TooManyNodes,
};

class DagError : public std::runtime_error {
public:
    DagError(DagErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}
    DagErrorKind kind() const { return kind_; }

private:
    DagErrorKind kind_;
};

struct DagStats {
    std::size_t node_count = 0;
    std::size_t edge_count = 0;
    std::size_t max_in_degree = 0;
    std::size_t max_out_degree = 0;
    std::size_t source_count = 0;
    std::size_t sink_count = 0;
    std::size_t trivial_cost = 0;  // source_count + sink_count
};

// Immutable computational DAG. Node ids are dense in [0, n); edges are kept
// sorted lexicographically so that edge ids, adjacency lists and every
// iteration order are reproducible.
class ComputationDag {
public:
    static constexpr std::size_t kMaxNodes = std::size_t{1} << 22;

    static ComputationDag build(std::size_t node_count,
                                std::vector<Edge> edges,
                                std::vector<std::string> labels = {});

    std::size_t node_count() const { return node_count_; }
    std::size_t edge_count() const { return edges_.size(); }

    const std::vector<Edge>& edges() const { return edges_; }
    Edge edge(EdgeId e) const { return edges_[e]; }
    std::optional<EdgeId> edge_id(NodeId u, NodeId v) const;

    std::span<const NodeId> in_neighbors(NodeId v) const {
        return {in_adj_.data() + in_off_[v], in_off_[v + 1] - in_off_[v]};
    }
    std::span<const NodeId> out_neighbors(NodeId v) const {
        return {out_adj_.data() + out_off_[v], out_off_[v + 1] - out_off_[v]};
    }
    std::span<const EdgeId> in_edge_ids(NodeId v) const {
        return {in_eids_.data() + in_off_[v], in_off_[v + 1] - in_off_[v]};
    }
    std::span<const EdgeId> out_edge_ids(NodeId v) const {
        return {out_eids_.data() + out_off_[v], out_off_[v + 1] - out_off_[v]};
    }

    std::size_t in_degree(NodeId v) const { return in_off_[v + 1] - in_off_[v]; }
    std::size_t out_degree(NodeId v) const { return out_off_[v + 1] - out_off_[v]; }
    bool is_source(NodeId v) const { return in_degree(v) == 0; }
    bool is_sink(NodeId v) const { return out_degree(v) == 0; }

    const std::vector<NodeId>& sources() const { return sources_; }
    const std::vector<NodeId>& sinks() const { return sinks_; }

    DagStats stats() const;

    // Kahn's algorithm with an ascending-id tie break, so the order is unique.
    std::vector<NodeId> topological_order() const;

    // True iff some directed path from a source to a node of `targets` exists
    // whose nodes (endpoints included) all avoid `blocked`.
    bool reachable_avoiding(std::span<const NodeId> targets,
                            std::span<const NodeId> blocked) const;

    const std::string& label(NodeId v) const;
    bool has_labels() const { return !labels_.empty(); }
    const std::vector<std::string>& labels() const { return labels_; }

private:
    ComputationDag() = default;

    std::size_t node_count_ = 0;
    std::vector<Edge> edges_;                 // sorted (u, v)
    std::vector<NodeId> in_adj_, out_adj_;    // CSR adjacency, ascending ids
    std::vector<EdgeId> in_eids_, out_eids_;  // edge ids parallel to adjacency
    std::vector<std::uint32_t> in_off_, out_off_;
    std::vector<NodeId> sources_, sinks_;
    std::vector<std::string> labels_;
};

}  // namespace pebble
