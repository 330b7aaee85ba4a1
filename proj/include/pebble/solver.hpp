#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "pebble/dag.hpp"
#include "pebble/game.hpp"

namespace pebble {

struct SolveBudget {
    std::size_t max_states = 10'000'000;       // stored-state / expansion cap
    std::optional<double> max_seconds;         // wall-clock cap
    std::optional<long long> upper_bound_seed; // known achievable io cost, if any
};

enum class SolveStatus { Optimal, BudgetExhausted, Infeasible };

struct SolveResult {
    SolveStatus status = SolveStatus::BudgetExhausted;
    std::optional<long long> opt_cost;
    std::optional<Schedule> witness;
    std::size_t states_expanded = 0;
};

class InfeasibleRbp : public std::runtime_error {
public:
    explicit InfeasibleRbp(const std::string& what) : std::runtime_error(what) {}
};

// Exact optimal io cost for the one-shot games (no sliding, no clear, no
// deletion restrictions) by least-cost search over canonicalized states.
// Save/Load cost 1; compute, partial compute and delete are free. Instances
// are capped at 64 nodes / 128 edges. Deterministic: ties break on search
// progress, then on the lexicographic state encoding.
SolveResult solve_opt(const ComputationDag& dag, const GameConfig& config,
                      const SolveBudget& budget = {});

// Independent oracle: iterative-deepening enumeration of all move sequences
// with io cost at most cost_cap. No canonicalization beyond revisit pruning
// within the current branch. Exponential; meant for instances of ~10 nodes.
SolveResult brute_force_opt(const ComputationDag& dag, const GameConfig& config,
                            long long cost_cap);

struct ModelComparison {
    std::optional<long long> opt_rbp;
    std::optional<long long> opt_prbp;
    bool strict = false;  // opt_prbp < opt_rbp, when both optimal
    SolveStatus rbp_status = SolveStatus::BudgetExhausted;
    SolveStatus prbp_status = SolveStatus::BudgetExhausted;
};

// Solves both games at capacity r. Throws InfeasibleRbp when r < max
// in-degree + 1, where the classic game has no valid pebbling at all.
ModelComparison compare_models(const ComputationDag& dag, int r,
                               const SolveBudget& budget = {});

// The admissible heuristic used by the search, exposed for auditing:
// sources that must still be loaded plus sinks not yet blue.
long long solver_heuristic(const ComputationDag& dag, const GameConfig& config,
                           const GameState& state);

}  // namespace pebble
