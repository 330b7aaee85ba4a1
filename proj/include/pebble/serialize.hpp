#pragma once

#include <string>

#include "pebble/dag.hpp"
#include "pebble/game.hpp"
#include "pebble/generators.hpp"
#include "pebble/partitions.hpp"
#include "pebble/solver.hpp"
#include "pebble/strategies.hpp"

namespace pebble {

class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// DAG interchange: {"n": int, "edges": [[u,v],...], "labels": [...]?}.
// Emission is canonical: fixed field order, sorted edges, 2-space indent.
std::string dag_to_json(const ComputationDag& dag);
ComputationDag dag_from_json(const std::string& text);

// DOT export, one line per edge, labels as node attributes.
std::string dag_to_dot(const ComputationDag& dag);

// Schedule interchange: array of move records such as {"op":"load","v":3}
// or {"op":"pcompute","u":1,"v":4}. A bare array carries no game/config; the
// object form {"game","r","moves",...} round-trips a NamedSchedule.
std::string moves_to_json(const std::vector<Move>& moves);
std::vector<Move> moves_from_json(const std::string& text);
std::string named_schedule_to_json(const NamedSchedule& named);

struct ParsedSchedule {
    Schedule schedule;
    bool has_config = false;  // object form carried game + r
};
ParsedSchedule schedule_from_json(const std::string& text);

std::string cost_report_to_json(const CostReport& report);

std::string node_partition_to_json(const NodePartition& p);
std::string edge_partition_to_json(const EdgePartition& p);
NodePartition node_partition_from_json(const std::string& text);
EdgePartition edge_partition_from_json(const std::string& text);

std::string solve_result_to_json(const SolveResult& result);

// Undirected graph text format: first line "n m", then m lines "u v".
UndirectedGraph undirected_from_text(const std::string& text);
std::string undirected_to_text(const UndirectedGraph& g);

// FNV-1a over the raw bytes, hex encoded; used for run-manifest digests.
std::string content_digest(const std::string& bytes);

}  // namespace pebble
