#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "pebble/bitset.hpp"
#include "pebble/dag.hpp"

namespace pebble {

// Exact rational, used for the optional per-compute cost epsilon.
struct Rational {
    long long num = 0;
    long long den = 1;

    Rational() = default;
    Rational(long long n, long long d = 1);

    Rational& operator+=(const Rational& o);
    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend bool operator==(const Rational&, const Rational&) = default;
    bool is_zero() const { return num == 0; }
    std::string str() const;
};

enum class GameKind : std::uint8_t { Rbp, Prbp };

enum class PrbpCostSplit : std::uint8_t {
    PerEdge,                 // epsilon per partial compute
    PerEdgeScaledByInDegree  // epsilon / deg_in(target) per partial compute
};

struct GameConfig {
    int capacity = 2;  // r
    GameKind kind = GameKind::Prbp;
    bool sliding = false;     // RBP only: allow the slide variant of compute
    bool allow_clear = false; // PRBP only: allow clearing for re-computation
    bool no_deletion = false; // dark red / red pebbles leave only via save
    Rational compute_cost;    // epsilon, defaults to 0
    PrbpCostSplit cost_split = PrbpCostSplit::PerEdge;

    // Throws std::invalid_argument on contradictory settings.
    void validate() const;
};

// Per-node pebble content in PRBP. Light red never occurs without blue, and
// dark red excludes blue, so four states cover every legal combination.
enum class PebbleState : std::uint8_t {
    None = 0,
    Blue = 1,
    BlueLightRed = 2,
    DarkRed = 3,
};

inline bool has_red(PebbleState s) {
    return s == PebbleState::BlueLightRed || s == PebbleState::DarkRed;
}
inline bool has_blue(PebbleState s) {
    return s == PebbleState::Blue || s == PebbleState::BlueLightRed;
}

struct RbpState {
    Bitset red;
    Bitset blue;
    Bitset computed;  // one-shot bookkeeping
    std::size_t red_count = 0;

    friend bool operator==(const RbpState&, const RbpState&) = default;
};

struct PrbpState {
    std::vector<PebbleState> pebble;
    Bitset marked;  // by edge id
    std::size_t red_count = 0;

    friend bool operator==(const PrbpState&, const PrbpState&) = default;
};

using GameState = std::variant<RbpState, PrbpState>;

struct Move {
    enum class Op : std::uint8_t {
        Save,
        Load,
        Compute,         // RBP
        Slide,           // RBP variant; u = in-neighbor losing its pebble
        PartialCompute,  // PRBP; (u, v) edge
        Delete,
        Clear,           // PRBP variant
    };

    Op op;
    NodeId v = 0;
    NodeId u = 0;

    static Move save(NodeId v) { return {Op::Save, v, 0}; }
    static Move load(NodeId v) { return {Op::Load, v, 0}; }
    static Move compute(NodeId v) { return {Op::Compute, v, 0}; }
    static Move slide(NodeId u, NodeId v) { return {Op::Slide, v, u}; }
    static Move pcompute(NodeId u, NodeId v) { return {Op::PartialCompute, v, u}; }
    static Move del(NodeId v) { return {Op::Delete, v, 0}; }
    static Move clear(NodeId v) { return {Op::Clear, v, 0}; }

    friend bool operator==(const Move&, const Move&) = default;
    std::string str() const;
};

struct Schedule {
    std::vector<Move> moves;
    GameConfig config;
};

struct MoveError {
    std::size_t move_index = 0;
    std::string reason;
};

struct CostReport {
    long long io_cost = 0;  // count of save + load moves
    Rational compute_cost;
    int peak_red = 0;
    bool valid = false;
    bool terminal = false;
    std::optional<MoveError> first_error;
};

class RuleViolation : public std::runtime_error {
public:
    explicit RuleViolation(const std::string& what) : std::runtime_error(what) {}
};

RbpState rbp_initial_state(const ComputationDag& dag);
PrbpState prbp_initial_state(const ComputationDag& dag);
GameState initial_state(const ComputationDag& dag, const GameConfig& config);

// In-place application; returns the violated precondition, or nullopt on
// success. Never modifies the state on rejection.
std::optional<std::string> try_apply_move(RbpState& state, const Move& move,
                                          const ComputationDag& dag,
                                          const GameConfig& config);
std::optional<std::string> try_apply_move(PrbpState& state, const Move& move,
                                          const ComputationDag& dag,
                                          const GameConfig& config);

// Value-semantics variants; throw RuleViolation on an illegal move.
RbpState apply_move(const RbpState& state, const Move& move,
                    const ComputationDag& dag, const GameConfig& config);
PrbpState apply_move(const PrbpState& state, const Move& move,
                     const ComputationDag& dag, const GameConfig& config);
GameState apply_move(const GameState& state, const Move& move,
                     const ComputationDag& dag, const GameConfig& config);

bool is_terminal(const RbpState& state, const ComputationDag& dag);
bool is_terminal(const PrbpState& state, const ComputationDag& dag);
bool is_terminal(const GameState& state, const ComputationDag& dag);

// Replays the schedule from the initial state. Move rejections are reported
// in the CostReport (first failing index + reason), never thrown.
CostReport validate_schedule(const ComputationDag& dag, const GameConfig& config,
                             const Schedule& schedule);

class ScheduleError : public std::runtime_error {
public:
    explicit ScheduleError(const std::string& what) : std::runtime_error(what) {}
};

// Converts a valid one-shot RBP schedule (sliding disabled) into a PRBP
// schedule of identical io_cost: each compute becomes partial computes over
// the in-edges in ascending in-neighbor order; save/load/delete map
// one-to-one. Throws ScheduleError if the input fails RBP validation.
Schedule translate_rbp_to_prbp(const ComputationDag& dag, const Schedule& rbp_schedule);

}  // namespace pebble
