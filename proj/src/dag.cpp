#include "pebble/dag.hpp"

#include <algorithm>
#include <deque>
#include <queue>

namespace pebble {

ComputationDag ComputationDag::build(std::size_t node_count,
                                     std::vector<Edge> edges,
                                     std::vector<std::string> labels) {
    if (node_count > kMaxNodes)
        throw DagError(DagErrorKind::TooManyNodes,
                       "node count " + std::to_string(node_count) + " exceeds the " +
                           std::to_string(kMaxNodes) + "-node cap");
    if (!labels.empty() && labels.size() != node_count)
        throw DagError(DagErrorKind::IdOutOfRange,
                       "label count does not match node count");

    for (const auto& [u, v] : edges) {
        if (u >= node_count || v >= node_count)
            throw DagError(DagErrorKind::IdOutOfRange,
                           "edge (" + std::to_string(u) + "," + std::to_string(v) +
                               ") references a node outside [0," +
                               std::to_string(node_count) + ")");
        if (u == v)
            throw DagError(DagErrorKind::SelfLoop,
                           "self loop on node " + std::to_string(u));
    }

    std::sort(edges.begin(), edges.end());
    for (std::size_t i = 1; i < edges.size(); ++i)
        if (edges[i] == edges[i - 1])
            throw DagError(DagErrorKind::DuplicateEdge,
                           "duplicate edge (" + std::to_string(edges[i].first) + "," +
                               std::to_string(edges[i].second) + ")");

    ComputationDag dag;
    dag.node_count_ = node_count;
    dag.edges_ = std::move(edges);
    dag.labels_ = std::move(labels);

    const std::size_t n = node_count;
    dag.in_off_.assign(n + 1, 0);
    dag.out_off_.assign(n + 1, 0);
    for (const auto& [u, v] : dag.edges_) {
        ++dag.out_off_[u + 1];
        ++dag.in_off_[v + 1];
    }
    for (std::size_t i = 0; i < n; ++i) {
        dag.in_off_[i + 1] += dag.in_off_[i];
        dag.out_off_[i + 1] += dag.out_off_[i];
    }
    dag.in_adj_.resize(dag.edges_.size());
    dag.out_adj_.resize(dag.edges_.size());
    dag.in_eids_.resize(dag.edges_.size());
    dag.out_eids_.resize(dag.edges_.size());
    {
        std::vector<std::uint32_t> ipos(dag.in_off_.begin(), dag.in_off_.end() - 1);
        std::vector<std::uint32_t> opos(dag.out_off_.begin(), dag.out_off_.end() - 1);
        for (EdgeId e = 0; e < dag.edges_.size(); ++e) {
            const auto [u, v] = dag.edges_[e];
            dag.out_adj_[opos[u]] = v;
            dag.out_eids_[opos[u]++] = e;
            dag.in_adj_[ipos[v]] = u;
            dag.in_eids_[ipos[v]++] = e;
        }
        // Edges are sorted by (u, v), so out lists come out ascending; in lists
        // are ascending in u because edge ids are visited in sorted order.
    }

    for (NodeId v = 0; v < n; ++v) {
        if (dag.in_degree(v) == 0 && dag.out_degree(v) == 0)
            throw DagError(DagErrorKind::IsolatedNode,
                           "node " + std::to_string(v) + " is isolated");
        if (dag.in_degree(v) == 0) dag.sources_.push_back(v);
        if (dag.out_degree(v) == 0) dag.sinks_.push_back(v);
    }

    // Cycle check via Kahn's algorithm.
    std::vector<std::uint32_t> indeg(n);
    for (NodeId v = 0; v < n; ++v) indeg[v] = static_cast<std::uint32_t>(dag.in_degree(v));
    std::deque<NodeId> ready;
    for (NodeId v = 0; v < n; ++v)
        if (indeg[v] == 0) ready.push_back(v);
    std::size_t seen = 0;
    while (!ready.empty()) {
        NodeId v = ready.front();
        ready.pop_front();
        ++seen;
        for (NodeId w : dag.out_neighbors(v))
            if (--indeg[w] == 0) ready.push_back(w);
    }
    if (seen != n)
        throw DagError(DagErrorKind::CycleDetected, "the edge set contains a directed cycle");

    return dag;
}

std::optional<EdgeId> ComputationDag::edge_id(NodeId u, NodeId v) const {
    auto it = std::lower_bound(edges_.begin(), edges_.end(), Edge{u, v});
    if (it != edges_.end() && *it == Edge{u, v})
        return static_cast<EdgeId>(it - edges_.begin());
    return std::nullopt;
}

DagStats ComputationDag::stats() const {
    DagStats s;
    s.node_count = node_count_;
    s.edge_count = edges_.size();
    for (NodeId v = 0; v < node_count_; ++v) {
        s.max_in_degree = std::max(s.max_in_degree, in_degree(v));
        s.max_out_degree = std::max(s.max_out_degree, out_degree(v));
    }
    s.source_count = sources_.size();
    s.sink_count = sinks_.size();
    s.trivial_cost = s.source_count + s.sink_count;
    return s;
}

std::vector<NodeId> ComputationDag::topological_order() const {
    std::vector<std::uint32_t> indeg(node_count_);
    for (NodeId v = 0; v < node_count_; ++v)
        indeg[v] = static_cast<std::uint32_t>(in_degree(v));
    std::priority_queue<NodeId, std::vector<NodeId>, std::greater<>> ready;
    for (NodeId v = 0; v < node_count_; ++v)
        if (indeg[v] == 0) ready.push(v);
    std::vector<NodeId> order;
    order.reserve(node_count_);
    while (!ready.empty()) {
        NodeId v = ready.top();
        ready.pop();
        order.push_back(v);
        for (NodeId w : out_neighbors(v))
            if (--indeg[w] == 0) ready.push(w);
    }
    return order;
}

bool ComputationDag::reachable_avoiding(std::span<const NodeId> targets,
                                        std::span<const NodeId> blocked) const {
    std::vector<char> is_blocked(node_count_, 0), is_target(node_count_, 0);
    for (NodeId v : blocked) is_blocked[v] = 1;
    for (NodeId v : targets) is_target[v] = 1;

    std::vector<char> visited(node_count_, 0);
    std::deque<NodeId> queue;
    for (NodeId s : sources_) {
        if (is_blocked[s]) continue;
        if (is_target[s]) return true;
        visited[s] = 1;
        queue.push_back(s);
    }
    while (!queue.empty()) {
        NodeId v = queue.front();
        queue.pop_front();
        for (NodeId w : out_neighbors(v)) {
            if (visited[w] || is_blocked[w]) continue;
            if (is_target[w]) return true;
            visited[w] = 1;
            queue.push_back(w);
        }
    }
    return false;
}

const std::string& ComputationDag::label(NodeId v) const {
    static const std::string empty;
    if (labels_.empty()) return empty;
    return labels_[v];
}

}  // namespace pebble
