#include "pebble/partitions.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstring>
#include <limits>
#include <map>
#include <queue>

namespace pebble {

bool is_dominator(const ComputationDag& dag, std::span<const NodeId> dominator,
                  std::span<const NodeId> targets) {
    return !dag.reachable_avoiding(targets, dominator);
}

namespace {

// Dinic on the node-split network: v_in -> v_out with capacity 1 for every
// node, infinite arcs for DAG edges and the super terminals.
class MaxFlow {
public:
    explicit MaxFlow(std::size_t n) : head_(n, -1) {}

    void add_edge(int from, int to, int cap) {
        edges_.push_back({to, head_[static_cast<std::size_t>(from)], cap});
        head_[static_cast<std::size_t>(from)] = static_cast<int>(edges_.size()) - 1;
        edges_.push_back({from, head_[static_cast<std::size_t>(to)], 0});
        head_[static_cast<std::size_t>(to)] = static_cast<int>(edges_.size()) - 1;
    }

    int run(int s, int t) {
        int flow = 0;
        while (bfs(s, t)) {
            it_ = head_;
            while (int pushed = dfs(s, t, std::numeric_limits<int>::max())) flow += pushed;
        }
        return flow;
    }

    // After run(): nodes reachable from s in the residual network.
    std::vector<char> residual_reachable(int s) const {
        std::vector<char> seen(head_.size(), 0);
        std::queue<int> q;
        q.push(s);
        seen[static_cast<std::size_t>(s)] = 1;
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int e = head_[static_cast<std::size_t>(v)]; e != -1; e = edges_[static_cast<std::size_t>(e)].next) {
                const auto& ed = edges_[static_cast<std::size_t>(e)];
                if (ed.cap > 0 && !seen[static_cast<std::size_t>(ed.to)]) {
                    seen[static_cast<std::size_t>(ed.to)] = 1;
                    q.push(ed.to);
                }
            }
        }
        return seen;
    }

private:
    struct E {
        int to, next, cap;
    };

    bool bfs(int s, int t) {
        level_.assign(head_.size(), -1);
        std::queue<int> q;
        q.push(s);
        level_[static_cast<std::size_t>(s)] = 0;
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int e = head_[static_cast<std::size_t>(v)]; e != -1; e = edges_[static_cast<std::size_t>(e)].next) {
                const auto& ed = edges_[static_cast<std::size_t>(e)];
                if (ed.cap > 0 && level_[static_cast<std::size_t>(ed.to)] < 0) {
                    level_[static_cast<std::size_t>(ed.to)] = level_[static_cast<std::size_t>(v)] + 1;
                    q.push(ed.to);
                }
            }
        }
        return level_[static_cast<std::size_t>(t)] >= 0;
    }

    int dfs(int v, int t, int limit) {
        if (v == t || limit == 0) return limit;
        for (int& e = it_[static_cast<std::size_t>(v)]; e != -1;
             e = edges_[static_cast<std::size_t>(e)].next) {
            auto& ed = edges_[static_cast<std::size_t>(e)];
            if (ed.cap > 0 &&
                level_[static_cast<std::size_t>(ed.to)] == level_[static_cast<std::size_t>(v)] + 1) {
                int pushed = dfs(ed.to, t, std::min(limit, ed.cap));
                if (pushed > 0) {
                    ed.cap -= pushed;
                    edges_[static_cast<std::size_t>(e ^ 1)].cap += pushed;
                    return pushed;
                }
            }
        }
        return 0;
    }

    std::vector<int> head_, it_, level_;
    std::vector<E> edges_;
};

}  // namespace

MinDominator min_dominator_size(const ComputationDag& dag,
                                std::span<const NodeId> targets) {
    MinDominator out;
    if (targets.empty()) return out;

    const auto n = dag.node_count();
    const int INF = static_cast<int>(n) + 1;
    // v_in = 2v, v_out = 2v + 1, super source 2n, super target 2n + 1.
    MaxFlow flow(2 * n + 2);
    const int S = static_cast<int>(2 * n), T = static_cast<int>(2 * n + 1);
    for (NodeId v = 0; v < n; ++v) flow.add_edge(static_cast<int>(2 * v), static_cast<int>(2 * v + 1), 1);
    for (auto [u, v] : dag.edges())
        flow.add_edge(static_cast<int>(2 * u + 1), static_cast<int>(2 * v), INF);
    for (NodeId s : dag.sources()) flow.add_edge(S, static_cast<int>(2 * s), INF);
    std::vector<char> is_target(n, 0);
    for (NodeId t : targets) {
        if (is_target[t]) continue;
        is_target[t] = 1;
        flow.add_edge(static_cast<int>(2 * t + 1), T, INF);
    }

    out.size = static_cast<std::size_t>(flow.run(S, T));
    const auto seen = flow.residual_reachable(S);
    for (NodeId v = 0; v < n; ++v)
        if (seen[2 * v] && !seen[2 * v + 1]) out.cut.push_back(v);
    assert(out.cut.size() == out.size);
    return out;
}

std::vector<NodeId> terminal_set(const ComputationDag& dag,
                                 std::span<const NodeId> v0) {
    std::vector<char> in_set(dag.node_count(), 0);
    for (NodeId v : v0) in_set[v] = 1;
    std::vector<NodeId> out;
    for (NodeId v = 0; v < dag.node_count(); ++v) {
        if (!in_set[v]) continue;
        bool terminal = true;
        for (NodeId w : dag.out_neighbors(v))
            if (in_set[w]) {
                terminal = false;
                break;
            }
        if (terminal) out.push_back(v);
    }
    return out;
}

std::vector<NodeId> edge_terminal_set(const ComputationDag& dag,
                                      std::span<const Edge> e0) {
    std::vector<char> in_set(dag.edge_count(), 0);
    for (const Edge& e : e0) {
        auto id = dag.edge_id(e.first, e.second);
        if (!id) throw std::invalid_argument("edge set contains a non-edge");
        in_set[*id] = 1;
    }
    std::vector<NodeId> out;
    for (NodeId v = 0; v < dag.node_count(); ++v) {
        bool has_in = false;
        for (EdgeId e : dag.in_edge_ids(v))
            if (in_set[e]) {
                has_in = true;
                break;
            }
        if (!has_in) continue;
        bool has_out = false;
        for (EdgeId e : dag.out_edge_ids(v))
            if (in_set[e]) {
                has_out = true;
                break;
            }
        if (!has_out) out.push_back(v);
    }
    return out;
}

std::vector<NodeId> edge_start_set(const ComputationDag& dag,
                                   std::span<const Edge> e0) {
    std::vector<char> seen(dag.node_count(), 0);
    std::vector<NodeId> out;
    for (const Edge& e : e0) {
        if (!dag.edge_id(e.first, e.second))
            throw std::invalid_argument("edge set contains a non-edge");
        if (!seen[e.first]) {
            seen[e.first] = 1;
            out.push_back(e.first);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool is_edge_dominator(const ComputationDag& dag, std::span<const NodeId> dominator,
                       std::span<const Edge> e0) {
    const auto start = edge_start_set(dag, e0);
    return is_dominator(dag, dominator, start);
}

namespace {

std::vector<std::size_t> class_of_nodes(const ComputationDag& dag,
                                        const NodePartition& p) {
    constexpr std::size_t kNone = ~std::size_t{0};
    std::vector<std::size_t> cls(dag.node_count(), kNone);
    for (std::size_t i = 0; i < p.classes.size(); ++i)
        for (NodeId v : p.classes[i]) {
            if (v >= dag.node_count()) throw std::invalid_argument("node id out of range");
            if (cls[v] != kNone) throw std::invalid_argument("partition classes overlap");
            cls[v] = i;
        }
    for (NodeId v = 0; v < dag.node_count(); ++v)
        if (cls[v] == kNone) throw std::invalid_argument("partition does not cover all nodes");
    return cls;
}

std::vector<std::size_t> class_of_edges(const ComputationDag& dag,
                                        const EdgePartition& p) {
    constexpr std::size_t kNone = ~std::size_t{0};
    std::vector<std::size_t> cls(dag.edge_count(), kNone);
    for (std::size_t i = 0; i < p.classes.size(); ++i)
        for (const Edge& e : p.classes[i]) {
            auto id = dag.edge_id(e.first, e.second);
            if (!id) throw std::invalid_argument("partition contains a non-edge");
            if (cls[*id] != kNone) throw std::invalid_argument("partition classes overlap");
            cls[*id] = i;
        }
    for (EdgeId e = 0; e < dag.edge_count(); ++e)
        if (cls[e] == kNone) throw std::invalid_argument("partition does not cover all edges");
    return cls;
}

}  // namespace

PartitionVerdict validate_partition(const ComputationDag& dag,
                                    const NodePartition& partition, std::size_t s,
                                    PartitionKind kind) {
    if (kind == PartitionKind::SEdgePartition)
        throw std::invalid_argument("node partition validated with an edge kind");
    const auto cls = class_of_nodes(dag, partition);

    PartitionVerdict verdict;
    // Condition (i): an edge never runs from a later class into an earlier one.
    for (auto [u, v] : dag.edges()) {
        if (cls[u] > cls[v]) {
            verdict.failed_condition = PartitionFailure::Ordering;
            verdict.failing_class = cls[u];
            verdict.witness_edge = Edge{u, v};
            return verdict;
        }
    }
    for (std::size_t i = 0; i < partition.classes.size(); ++i) {
        const auto& cl = partition.classes[i];
        if (cl.empty()) continue;
        MinDominator dom = min_dominator_size(dag, cl);
        assert(is_dominator(dag, dom.cut, cl));
        if (dom.size > s) {
            verdict.failed_condition = PartitionFailure::DominatorSize;
            verdict.failing_class = i;
            verdict.witness_nodes = dom.cut;
            return verdict;
        }
        if (kind == PartitionKind::SPartition) {
            auto term = terminal_set(dag, cl);
            if (term.size() > s) {
                verdict.failed_condition = PartitionFailure::TerminalSize;
                verdict.failing_class = i;
                verdict.witness_nodes = std::move(term);
                return verdict;
            }
        }
    }
    verdict.valid = true;
    return verdict;
}

PartitionVerdict validate_partition(const ComputationDag& dag,
                                    const EdgePartition& partition, std::size_t s,
                                    PartitionKind kind) {
    if (kind != PartitionKind::SEdgePartition)
        throw std::invalid_argument("edge partition validated with a node kind");
    const auto cls = class_of_edges(dag, partition);

    PartitionVerdict verdict;
    // Condition (i): for consecutive edges (u,v), (v,w), the upstream edge
    // never sits in a strictly later class.
    for (EdgeId e = 0; e < dag.edge_count(); ++e) {
        const auto [u, v] = dag.edge(e);
        for (EdgeId f : dag.out_edge_ids(v)) {
            if (cls[e] > cls[f]) {
                verdict.failed_condition = PartitionFailure::Ordering;
                verdict.failing_class = cls[e];
                verdict.witness_edge = Edge{u, v};
                return verdict;
            }
        }
    }
    for (std::size_t i = 0; i < partition.classes.size(); ++i) {
        const auto& cl = partition.classes[i];
        if (cl.empty()) continue;
        const auto start = edge_start_set(dag, cl);
        MinDominator dom = min_dominator_size(dag, start);
        if (dom.size > s) {
            verdict.failed_condition = PartitionFailure::DominatorSize;
            verdict.failing_class = i;
            verdict.witness_nodes = dom.cut;
            return verdict;
        }
        auto term = edge_terminal_set(dag, cl);
        if (term.size() > s) {
            verdict.failed_condition = PartitionFailure::TerminalSize;
            verdict.failing_class = i;
            verdict.witness_nodes = std::move(term);
            return verdict;
        }
    }
    verdict.valid = true;
    return verdict;
}

namespace {

struct SubsequenceSplit {
    long long io_cost = 0;
    std::size_t k = 0;
    // Class index of each move, by position in the schedule.
    std::vector<std::size_t> class_of_move;
};

SubsequenceSplit split_by_io(const ComputationDag& dag, const Schedule& schedule, int r) {
    if (schedule.config.kind != GameKind::Prbp)
        throw ScheduleError("partition extraction needs a PRBP schedule");
    GameConfig cfg = schedule.config;
    cfg.capacity = r;
    CostReport report = validate_schedule(dag, cfg, schedule);
    if (!report.valid || !report.terminal)
        throw ScheduleError("partition extraction needs a valid, terminal schedule");

    SubsequenceSplit out;
    out.io_cost = report.io_cost;
    out.k = static_cast<std::size_t>((report.io_cost + r - 1) / r);
    if (out.k == 0) out.k = 1;
    long long io_before = 0;
    for (const Move& m : schedule.moves) {
        std::size_t idx = static_cast<std::size_t>(io_before) / static_cast<std::size_t>(r);
        if (idx >= out.k) idx = out.k - 1;  // trailing free moves join the last class
        out.class_of_move.push_back(idx);
        if (m.op == Move::Op::Save || m.op == Move::Op::Load) ++io_before;
    }
    return out;
}

}  // namespace

EdgePartition edge_partition_from_schedule(const ComputationDag& dag,
                                           const Schedule& schedule, int r) {
    const auto split = split_by_io(dag, schedule, r);
    EdgePartition out;
    out.classes.resize(split.k);
    for (std::size_t i = 0; i < schedule.moves.size(); ++i) {
        const Move& m = schedule.moves[i];
        if (m.op != Move::Op::PartialCompute) continue;
        out.classes[split.class_of_move[i]].push_back(Edge{m.u, m.v});
    }
    for (auto& cl : out.classes) std::sort(cl.begin(), cl.end());
    return out;
}

NodePartition node_partition_from_schedule(const ComputationDag& dag,
                                           const Schedule& schedule, int r) {
    const auto split = split_by_io(dag, schedule, r);
    constexpr std::size_t kNone = ~std::size_t{0};
    std::vector<std::size_t> cls(dag.node_count(), kNone);
    std::vector<std::size_t> unmarked_in(dag.node_count());
    for (NodeId v = 0; v < dag.node_count(); ++v) unmarked_in[v] = dag.in_degree(v);

    for (std::size_t i = 0; i < schedule.moves.size(); ++i) {
        const Move& m = schedule.moves[i];
        if (m.op == Move::Op::PartialCompute) {
            if (--unmarked_in[m.v] == 0) cls[m.v] = split.class_of_move[i];
        } else if (m.op == Move::Op::Load && dag.is_source(m.v) && cls[m.v] == kNone) {
            cls[m.v] = split.class_of_move[i];
        }
    }
    NodePartition out;
    out.classes.resize(split.k);
    for (NodeId v = 0; v < dag.node_count(); ++v) {
        assert(cls[v] != kNone);
        out.classes[cls[v]].push_back(v);
    }
    return out;
}

namespace {

// Ordered-partition enumeration. Elements are assigned in an order that
// makes the ordering condition a running lower bound on the class index;
// dominator growth is monotone so oversized classes prune eagerly; terminal
// conditions are only decidable on the finished assignment.
struct MinClassSearch {
    const ComputationDag& dag;
    std::size_t s;
    PartitionKind kind;
    bool edge_ground;
    std::vector<std::uint32_t> order;       // element ids in assignment order
    std::vector<std::uint32_t> min_class;   // per element, running bound
    std::vector<std::size_t> assigned;      // element -> class
    std::size_t k = 0;
    std::map<std::uint64_t, std::size_t> dom_cache;  // class mask -> dominator size

    explicit MinClassSearch(const ComputationDag& d, std::size_t s_, PartitionKind kind_)
        : dag(d), s(s_), kind(kind_), edge_ground(kind_ == PartitionKind::SEdgePartition) {}

    std::size_t ground_size() const {
        return edge_ground ? dag.edge_count() : dag.node_count();
    }

    std::size_t dominator_size(std::uint64_t mask) {
        auto it = dom_cache.find(mask);
        if (it != dom_cache.end()) return it->second;
        std::vector<NodeId> targets;
        if (edge_ground) {
            std::vector<Edge> es;
            for (std::size_t e = 0; e < dag.edge_count(); ++e)
                if (mask & (std::uint64_t{1} << e)) es.push_back(dag.edge(static_cast<EdgeId>(e)));
            targets = edge_start_set(dag, es);
        } else {
            for (std::size_t v = 0; v < dag.node_count(); ++v)
                if (mask & (std::uint64_t{1} << v)) targets.push_back(static_cast<NodeId>(v));
        }
        const std::size_t size = min_dominator_size(dag, targets).size;
        dom_cache.emplace(mask, size);
        return size;
    }

    bool final_terminal_ok(const std::vector<std::uint64_t>& class_masks) {
        if (kind == PartitionKind::SDominatorPartition) return true;
        for (std::uint64_t mask : class_masks) {
            if (!mask) continue;
            std::size_t count;
            if (edge_ground) {
                std::vector<Edge> es;
                for (std::size_t e = 0; e < dag.edge_count(); ++e)
                    if (mask & (std::uint64_t{1} << e)) es.push_back(dag.edge(static_cast<EdgeId>(e)));
                count = edge_terminal_set(dag, es).size();
            } else {
                std::vector<NodeId> vs;
                for (std::size_t v = 0; v < dag.node_count(); ++v)
                    if (mask & (std::uint64_t{1} << v)) vs.push_back(static_cast<NodeId>(v));
                count = terminal_set(dag, vs).size();
            }
            if (count > s) return false;
        }
        return true;
    }

    bool assign(std::size_t pos, std::vector<std::uint64_t>& class_masks,
                std::size_t used_classes) {
        if (pos == order.size()) {
            // Surjectivity: every class must be nonempty.
            if (used_classes != k) return false;
            return final_terminal_ok(class_masks);
        }
        const std::uint32_t el = order[pos];
        // Lower bound from the ordering condition over already-assigned
        // predecessors of this element.
        std::size_t lo = 0;
        if (edge_ground) {
            const NodeId u = dag.edge(el).first;
            for (EdgeId f : dag.in_edge_ids(u)) lo = std::max(lo, assigned[f]);
        } else {
            for (NodeId u : dag.in_neighbors(static_cast<NodeId>(el)))
                lo = std::max(lo, assigned[u]);
        }
        const std::size_t remaining = order.size() - pos;
        for (std::size_t c = lo; c < k; ++c) {
            // Remaining elements must still be able to fill all empty classes.
            const std::size_t empty_after =
                k - used_classes - (class_masks[c] == 0 ? 1 : 0);
            if (remaining - 1 < empty_after) continue;
            class_masks[c] |= std::uint64_t{1} << el;
            assigned[el] = c;
            bool ok = dominator_size(class_masks[c]) <= s;
            if (ok && assign(pos + 1, class_masks,
                             used_classes + (class_masks[c] == (std::uint64_t{1} << el) ? 1 : 0)))
                return true;
            class_masks[c] &= ~(std::uint64_t{1} << el);
        }
        assigned[el] = 0;
        return false;
    }

    bool feasible(std::size_t k_) {
        k = k_;
        std::vector<std::uint64_t> class_masks(k, 0);
        assigned.assign(ground_size(), 0);
        return assign(0, class_masks, 0);
    }
};

}  // namespace

long long min_classes_brute_force(const ComputationDag& dag, std::size_t s,
                                  PartitionKind kind, std::size_t guard, bool force) {
    MinClassSearch search(dag, s, kind);
    const std::size_t ground = search.ground_size();
    if (ground > 64 || (!force && ground > guard))
        throw InstanceTooLarge("ground set of " + std::to_string(ground) +
                               " elements exceeds the brute-force guard");

    // Assignment order along the dependency direction: topological for
    // nodes; edges ordered by the topological position of their head.
    const auto topo = dag.topological_order();
    std::vector<std::size_t> pos(dag.node_count());
    for (std::size_t i = 0; i < topo.size(); ++i) pos[topo[i]] = i;
    if (search.edge_ground) {
        std::vector<std::uint32_t> es(dag.edge_count());
        for (std::uint32_t e = 0; e < dag.edge_count(); ++e) es[e] = e;
        std::sort(es.begin(), es.end(), [&](std::uint32_t a, std::uint32_t b) {
            const auto pa = pos[dag.edge(a).second], pb = pos[dag.edge(b).second];
            return pa != pb ? pa < pb : a < b;
        });
        search.order = std::move(es);
    } else {
        search.order.assign(topo.begin(), topo.end());
    }

    for (std::size_t k = 1; k <= ground; ++k)
        if (search.feasible(k)) return static_cast<long long>(k);
    throw std::logic_error("no valid partition found up to one class per element");
}

long long lower_bound_from_classes(int r, long long min_k) {
    return static_cast<long long>(r) * (min_k - 1);
}

long long spart_counterexample_min_part_bound(const ComputationDag& dag, std::size_t s) {
    // Shape premises: exactly 7 sources, one sink, and 7 disjoint groups
    // where group i is fed by source i alone and feeds the sink alone.
    const auto& sources = dag.sources();
    const auto& sinks = dag.sinks();
    if (sources.size() != 7 || sinks.size() != 1)
        throw std::invalid_argument("not a 7-group counterexample instance");
    const NodeId sink = sinks[0];
    const std::size_t h = (dag.node_count() - 8) / 7;
    if (dag.node_count() != 7 * h + 8)
        throw std::invalid_argument("unexpected node count for the 7-group instance");
    for (NodeId v = 0; v < dag.node_count(); ++v) {
        if (v == sink || dag.is_source(v)) continue;
        // Middle node: unique in-edge from a source, unique out-edge to v.
        if (dag.in_degree(v) != 1 || dag.out_degree(v) != 1 ||
            !dag.is_source(dag.in_neighbors(v)[0]) || dag.out_neighbors(v)[0] != sink)
            throw std::invalid_argument("unexpected middle-node wiring");
    }
    for (NodeId u : sources)
        if (dag.out_degree(u) != h)
            throw std::invalid_argument("groups are not of equal size");

    if (s >= 7) return 1;  // a 7-source dominator fits; the argument yields nothing

    // With S < 7 no single class can see all 7 groups: the class holding the
    // sink admits a dominator of size <= S < 7 only if some group avoids it
    // entirely (one disjoint source-to-sink path per group otherwise). That
    // group's h nodes are terminal in their own classes, each of size <= S,
    // and none of those classes is the sink's.
    return static_cast<long long>((h + s - 1) / s) + 1;
}

AnalyticBound analytic_bound_fft(long long m, long long r) {
    if (m < 2 || (m & (m - 1)) != 0 || r < 2)
        throw std::invalid_argument("fft bound needs m a power of two and r >= 2");
    const double lm = std::log2(static_cast<double>(m));
    const double lr = std::log2(static_cast<double>(r));
    return {static_cast<double>(m) * lm / lr, true};
}

AnalyticBound analytic_bound_matmul(long long m1, long long m2, long long m3, long long r) {
    if (m1 < 1 || m2 < 1 || m3 < 1 || r < 2)
        throw std::invalid_argument("matmul bound needs positive dimensions and r >= 2");
    return {static_cast<double>(m1) * static_cast<double>(m2) * static_cast<double>(m3) /
                std::sqrt(static_cast<double>(r)),
            true};
}

AnalyticBound analytic_bound_attention(long long m, long long d, long long r) {
    if (m < 1 || d < 1 || r < 2)
        throw std::invalid_argument("attention bound needs positive dimensions and r >= 2");
    const double md = static_cast<double>(m) * static_cast<double>(m) * static_cast<double>(d);
    const double a = md / std::sqrt(static_cast<double>(r));
    const double b = md * static_cast<double>(d) / static_cast<double>(r);
    return {std::min(a, b), true};
}

}  // namespace pebble
