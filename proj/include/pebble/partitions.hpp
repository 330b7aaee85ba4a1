#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pebble/dag.hpp"
#include "pebble/game.hpp"

namespace pebble {

struct NodePartition {
    std::vector<std::vector<NodeId>> classes;
};

struct EdgePartition {
    std::vector<std::vector<Edge>> classes;
};

enum class PartitionKind { SPartition, SEdgePartition, SDominatorPartition };

enum class PartitionFailure { Ordering, DominatorSize, TerminalSize };

struct PartitionVerdict {
    bool valid = false;
    std::optional<PartitionFailure> failed_condition;
    std::optional<std::size_t> failing_class;
    std::vector<NodeId> witness_nodes;  // cut or terminal set, when relevant
    std::optional<Edge> witness_edge;   // ordering violations
};

class InstanceTooLarge : public std::runtime_error {
public:
    explicit InstanceTooLarge(const std::string& what) : std::runtime_error(what) {}
};

// D hits every directed path from a source into V0 (endpoints included).
bool is_dominator(const ComputationDag& dag, std::span<const NodeId> dominator,
                  std::span<const NodeId> targets);

struct MinDominator {
    std::size_t size = 0;
    std::vector<NodeId> cut;  // a minimum dominator, ascending ids
};

// Minimum dominator via a minimum vertex cut between a super-source over the
// DAG sources and the target set, with unit node capacities (both sources
// and targets are themselves cuttable).
MinDominator min_dominator_size(const ComputationDag& dag,
                                std::span<const NodeId> targets);

// Nodes of V0 with no out-neighbor inside V0.
std::vector<NodeId> terminal_set(const ComputationDag& dag,
                                 std::span<const NodeId> v0);

// Nodes with at least one in-edge in E0 and no out-edge in E0.
std::vector<NodeId> edge_terminal_set(const ComputationDag& dag,
                                      std::span<const Edge> e0);

std::vector<NodeId> edge_start_set(const ComputationDag& dag,
                                   std::span<const Edge> e0);

bool is_edge_dominator(const ComputationDag& dag, std::span<const NodeId> dominator,
                       std::span<const Edge> e0);

// Checks the class-ordering condition, per-class dominators of size <= S,
// and (except for dominator partitions) per-class terminal sets of size
// <= S. Malformed inputs (not disjoint / not covering) throw; empty classes
// are tolerated and vacuously fine, which extraction can produce.
PartitionVerdict validate_partition(const ComputationDag& dag,
                                    const NodePartition& partition, std::size_t s,
                                    PartitionKind kind);
PartitionVerdict validate_partition(const ComputationDag& dag,
                                    const EdgePartition& partition, std::size_t s,
                                    PartitionKind kind);

// Splits a valid terminal PRBP schedule after every r-th I/O move and groups
// each edge by the subsequence holding its partial compute; trailing free
// moves join the last class. Produces ceil(C/r) classes, C = io cost.
EdgePartition edge_partition_from_schedule(const ComputationDag& dag,
                                           const Schedule& schedule, int r);

// Same split; a non-source node goes to the subsequence marking its last
// in-edge, a source to the subsequence of its first load.
NodePartition node_partition_from_schedule(const ComputationDag& dag,
                                           const Schedule& schedule, int r);

// Minimum class count over all valid partitions of the given kind, by
// ordered-partition enumeration with partial-validity pruning. Guarded to
// ground sets of at most `guard` elements unless force is set.
long long min_classes_brute_force(const ComputationDag& dag, std::size_t s,
                                  PartitionKind kind, std::size_t guard = 9,
                                  bool force = false);

// r * (min_k - 1).
long long lower_bound_from_classes(int r, long long min_k);

// The group-counting argument on the 7-group counterexample DAG: any valid
// S-partition with S < 7 needs at least ceil(h/S) + 1 classes. Verifies the
// structural premises on the instance before returning the bound.
long long spart_counterexample_min_part_bound(const ComputationDag& dag, std::size_t s);

struct AnalyticBound {
    double value = 0.0;
    bool asymptotic = true;  // leading-order expression with constant 1
};

AnalyticBound analytic_bound_fft(long long m, long long r);
AnalyticBound analytic_bound_matmul(long long m1, long long m2, long long m3, long long r);
AnalyticBound analytic_bound_attention(long long m, long long d, long long r);

}  // namespace pebble
