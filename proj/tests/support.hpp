#pragma once

// Shared test helpers: deterministic random DAGs and random legal schedules.

#include <algorithm>
#include <optional>
#include <random>
#include <vector>

#include "pebble/dag.hpp"
#include "pebble/game.hpp"

namespace testsupport {

using namespace pebble;

// Random DAG with nodes in [2, max_nodes], edges oriented low id -> high id,
// at most max_edges edges, and no isolated nodes (patched by chaining).
inline ComputationDag random_dag(std::mt19937_64& rng, std::size_t max_nodes = 8,
                                 std::size_t max_edges = 9) {
    std::uniform_int_distribution<std::size_t> nd(2, max_nodes);
    const std::size_t n = nd(rng);
    std::vector<Edge> all;
    for (NodeId u = 0; u < n; ++u)
        for (NodeId v = u + 1; v < n; ++v) all.push_back({u, v});
    std::shuffle(all.begin(), all.end(), rng);

    std::uniform_int_distribution<std::size_t> md(1, std::min(max_edges, all.size()));
    std::size_t want = md(rng);
    std::vector<Edge> edges(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(want));

    // Patch isolated nodes with a chain edge to the next node.
    std::vector<char> touched(n, 0);
    for (auto [u, v] : edges) touched[u] = touched[v] = 1;
    for (NodeId v = 0; v < n; ++v) {
        if (touched[v]) continue;
        const Edge patch = v + 1 < n ? Edge{v, static_cast<NodeId>(v + 1)}
                                     : Edge{static_cast<NodeId>(v - 1), v};
        if (std::find(edges.begin(), edges.end(), patch) == edges.end())
            edges.push_back(patch);
        touched[patch.first] = touched[patch.second] = 1;
    }
    while (edges.size() > max_edges) edges.pop_back();  // patches may overflow; retry below
    for (auto [u, v] : edges) touched[u] = touched[v] = 1;
    bool ok = true;
    std::vector<char> touch2(n, 0);
    for (auto [u, v] : edges) touch2[u] = touch2[v] = 1;
    for (NodeId v = 0; v < n; ++v) ok = ok && touch2[v];
    if (!ok) return random_dag(rng, max_nodes, max_edges);
    return ComputationDag::build(n, std::move(edges));
}

// Random valid terminal schedule: biased move selection over the legal moves
// of the current state, restarting when stuck. Exercises the validator.
inline std::optional<Schedule> random_valid_schedule(const ComputationDag& dag,
                                                     const GameConfig& cfg,
                                                     std::mt19937_64& rng,
                                                     int max_attempts = 50) {
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        Schedule sched;
        sched.config = cfg;
        GameState state = initial_state(dag, cfg);
        const std::size_t move_cap = 40 * (dag.node_count() + dag.edge_count());
        bool done = false;
        for (std::size_t step = 0; step < move_cap; ++step) {
            if (is_terminal(state, dag)) {
                done = true;
                break;
            }
            std::vector<Move> candidates;
            auto consider = [&](const Move& m) {
                GameState probe = state;
                bool legal = true;
                std::visit(
                    [&](auto& s) {
                        legal = !try_apply_move(s, m, dag, cfg).has_value();
                    },
                    probe);
                if (legal) candidates.push_back(m);
            };
            const bool rbp = cfg.kind == GameKind::Rbp;
            for (NodeId v = 0; v < dag.node_count(); ++v) {
                if (rbp && !dag.is_source(v)) consider(Move::compute(v));
                consider(Move::load(v));
                consider(Move::save(v));
                consider(Move::del(v));
            }
            if (!rbp)
                for (auto [u, v] : dag.edges()) consider(Move::pcompute(u, v));
            if (candidates.empty()) break;
            // Bias toward progress: computes first, then saves of sinks.
            std::vector<double> weight;
            for (const Move& m : candidates) {
                double w = 1.0;
                if (m.op == Move::Op::Compute || m.op == Move::Op::PartialCompute) w = 8.0;
                if (m.op == Move::Op::Save && dag.is_sink(m.v)) w = 6.0;
                if (m.op == Move::Op::Delete) w = 2.0;
                weight.push_back(w);
            }
            std::discrete_distribution<std::size_t> pick(weight.begin(), weight.end());
            const Move m = candidates[pick(rng)];
            state = apply_move(state, m, dag, cfg);
            sched.moves.push_back(m);
        }
        if (done || is_terminal(state, dag)) return sched;
    }
    return std::nullopt;
}

}  // namespace testsupport
