#pragma once

#include <string>

#include "pebble/dag.hpp"
#include "pebble/game.hpp"

namespace pebble {

struct NamedSchedule {
    std::string name;
    Schedule schedule;
    long long claimed_cost = 0;
    std::string claim_source;
};

// Generic topological PRBP sweep that pebbles any DAG with r = 2: each edge
// is marked with at most one loaded input held next to the accumulating
// target, deleting eagerly; a finished value still needed later is saved
// before its red pebble goes. If the previous target feeds the next node its
// dark red pebble is consumed in place, which is what keeps a simple chain
// at the trivial cost.
NamedSchedule streaming_prbp(const ComputationDag& dag);

// The optimal reference schedules for gen_figure1(true) at r = 4:
// 3 I/O steps in RBP, 2 in PRBP.
NamedSchedule figure1_golden(GameKind kind);

// PRBP sweep of gen_figure1_chain(g) at r = 4, trivial cost 2.
NamedSchedule figure1_chain_prbp(int copies);

// Column sweep for gen_matvec(m) keeping the m output accumulators resident:
// io = m^2 + 2m (trivial) with peak m + 3, at r = m + 3.
NamedSchedule matvec_prbp(int m);

// Recursive subtree strategies for gen_kary_tree(k, d) at r = k + 1.
// RBP: k^d + 2k^(d-1) - 1. PRBP: k^d + 2k^(d-k) - 1 for d >= k, and the
// trivial k^d + 1 for d < k (the whole tree then fits the free recursion).
NamedSchedule tree_golden(int k, int depth, GameKind kind);

// Partial-value staging for gen_zipper(d, chain_len) at r = d + 2:
// io = 2d + 1 + 2 * floor((chain_len - 1) / 2); every odd chain node except
// the first stages its group-side partial value.
NamedSchedule zipper_prbp(int d, int chain_len);

// Full-residency sweep of gen_pebble_collector(d, len) at r = d + 2:
// io = min(d, len) + 1, the trivial cost.
NamedSchedule collector_full(int d, int chain_len);

// Group-by-group sweep of gen_spart_counterexample(h) at r = 3: the sink
// accumulates across groups, so io = 8, the trivial cost.
NamedSchedule spart_counterexample_prbp(int group_size);

// Baseline RBP schedule that computes nodes in topological order, saving
// everything; valid for any r >= max in-degree + 1. Used as a search seed.
NamedSchedule rbp_topological_baseline(const ComputationDag& dag, int r);

}  // namespace pebble
