#include "pebble/game.hpp"

#include <algorithm>

namespace pebble {

namespace {

long long checked_mul(long long a, long long b) {
    long long r;
    if (__builtin_mul_overflow(a, b, &r))
        throw std::overflow_error("rational arithmetic overflow");
    return r;
}

long long checked_add(long long a, long long b) {
    long long r;
    if (__builtin_add_overflow(a, b, &r))
        throw std::overflow_error("rational arithmetic overflow");
    return r;
}

}  // namespace

Rational::Rational(long long n, long long d) : num(n), den(d) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
}

Rational& Rational::operator+=(const Rational& o) {
    *this = Rational(checked_add(checked_mul(num, o.den), checked_mul(o.num, den)),
                     checked_mul(den, o.den));
    return *this;
}

std::string Rational::str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
}

void GameConfig::validate() const {
    if (capacity < 1) throw std::invalid_argument("capacity r must be at least 1");
    if (sliding && kind != GameKind::Rbp)
        throw std::invalid_argument("sliding is an RBP-only option");
    if (allow_clear && kind != GameKind::Prbp)
        throw std::invalid_argument("clear is a PRBP-only option");
    if (compute_cost.num < 0)
        throw std::invalid_argument("compute cost epsilon must be nonnegative");
}

std::string Move::str() const {
    switch (op) {
        case Op::Save: return "save " + std::to_string(v);
        case Op::Load: return "load " + std::to_string(v);
        case Op::Compute: return "compute " + std::to_string(v);
        case Op::Slide: return "slide " + std::to_string(u) + "->" + std::to_string(v);
        case Op::PartialCompute:
            return "pcompute (" + std::to_string(u) + "," + std::to_string(v) + ")";
        case Op::Delete: return "delete " + std::to_string(v);
        case Op::Clear: return "clear " + std::to_string(v);
    }
    return "?";
}

RbpState rbp_initial_state(const ComputationDag& dag) {
    RbpState s;
    s.red = Bitset(dag.node_count());
    s.blue = Bitset(dag.node_count());
    s.computed = Bitset(dag.node_count());
    for (NodeId v : dag.sources()) s.blue.set(v);
    return s;
}

PrbpState prbp_initial_state(const ComputationDag& dag) {
    PrbpState s;
    s.pebble.assign(dag.node_count(), PebbleState::None);
    s.marked = Bitset(dag.edge_count());
    for (NodeId v : dag.sources()) s.pebble[v] = PebbleState::Blue;
    return s;
}

GameState initial_state(const ComputationDag& dag, const GameConfig& config) {
    config.validate();
    if (config.kind == GameKind::Rbp) return rbp_initial_state(dag);
    return prbp_initial_state(dag);
}

std::optional<std::string> try_apply_move(RbpState& s, const Move& m,
                                          const ComputationDag& dag,
                                          const GameConfig& cfg) {
    const std::size_t n = dag.node_count();
    const auto r = static_cast<std::size_t>(cfg.capacity);
    if (m.v >= n) return "node id out of range";

    switch (m.op) {
        case Move::Op::Save: {
            if (!s.red.test(m.v)) return "save requires a red pebble on the node";
            s.blue.set(m.v);
            if (cfg.no_deletion) {
                // Saving replaces the red pebble by the blue one.
                s.red.reset(m.v);
                --s.red_count;
            }
            return std::nullopt;
        }
        case Move::Op::Load: {
            if (!s.blue.test(m.v)) return "load requires a blue pebble on the node";
            if (s.red.test(m.v)) return std::nullopt;  // redundant load, still costs 1
            if (s.red_count >= r) return "fast memory full: cannot load";
            s.red.set(m.v);
            ++s.red_count;
            return std::nullopt;
        }
        case Move::Op::Compute: {
            if (dag.is_source(m.v)) return "source nodes cannot be computed";
            if (s.computed.test(m.v)) return "node already computed (one-shot)";
            if (s.red.test(m.v)) return "compute target already holds a red pebble";
            for (NodeId u : dag.in_neighbors(m.v))
                if (!s.red.test(u))
                    return "in-neighbor " + std::to_string(u) + " has no red pebble";
            if (s.red_count >= r) return "fast memory full: cannot compute";
            s.red.set(m.v);
            ++s.red_count;
            s.computed.set(m.v);
            return std::nullopt;
        }
        case Move::Op::Slide: {
            if (!cfg.sliding) return "sliding is disabled";
            if (m.u >= n) return "node id out of range";
            if (dag.is_source(m.v)) return "source nodes cannot be computed";
            if (s.computed.test(m.v)) return "node already computed (one-shot)";
            if (s.red.test(m.v)) return "slide target already holds a red pebble";
            bool u_is_input = false;
            for (NodeId u : dag.in_neighbors(m.v)) {
                if (!s.red.test(u))
                    return "in-neighbor " + std::to_string(u) + " has no red pebble";
                if (u == m.u) u_is_input = true;
            }
            if (!u_is_input) return "slide origin is not an in-neighbor";
            s.red.reset(m.u);
            s.red.set(m.v);
            s.computed.set(m.v);
            return std::nullopt;
        }
        case Move::Op::Delete: {
            if (cfg.no_deletion) return "deletion is disabled";
            if (!s.red.test(m.v)) return "delete requires a red pebble on the node";
            s.red.reset(m.v);
            --s.red_count;
            return std::nullopt;
        }
        case Move::Op::PartialCompute:
            return "partial compute is a PRBP move";
        case Move::Op::Clear:
            return "clear is a PRBP move";
    }
    return "unknown move";
}

namespace {

bool all_in_edges_marked(const PrbpState& s, const ComputationDag& dag, NodeId v) {
    for (EdgeId e : dag.in_edge_ids(v))
        if (!s.marked.test(e)) return false;
    return true;
}

bool all_out_edges_marked(const PrbpState& s, const ComputationDag& dag, NodeId v) {
    for (EdgeId e : dag.out_edge_ids(v))
        if (!s.marked.test(e)) return false;
    return true;
}

}  // namespace

std::optional<std::string> try_apply_move(PrbpState& s, const Move& m,
                                          const ComputationDag& dag,
                                          const GameConfig& cfg) {
    const std::size_t n = dag.node_count();
    const auto r = static_cast<std::size_t>(cfg.capacity);
    if (m.v >= n) return "node id out of range";

    switch (m.op) {
        case Move::Op::Save: {
            if (s.pebble[m.v] != PebbleState::DarkRed)
                return "save requires a dark red pebble";
            s.pebble[m.v] = PebbleState::BlueLightRed;
            return std::nullopt;
        }
        case Move::Op::Load: {
            if (!has_blue(s.pebble[m.v])) return "load requires a blue pebble on the node";
            if (s.pebble[m.v] == PebbleState::BlueLightRed)
                return std::nullopt;  // redundant load, still costs 1
            if (s.red_count >= r) return "fast memory full: cannot load";
            s.pebble[m.v] = PebbleState::BlueLightRed;
            ++s.red_count;
            return std::nullopt;
        }
        case Move::Op::PartialCompute: {
            if (m.u >= n) return "node id out of range";
            auto e = dag.edge_id(m.u, m.v);
            if (!e) return "no edge (" + std::to_string(m.u) + "," + std::to_string(m.v) + ")";
            if (s.marked.test(*e)) return "edge already marked (one-shot)";
            if (!all_in_edges_marked(s, dag, m.u))
                return "origin node is not fully computed";
            if (!has_red(s.pebble[m.u])) return "origin node has no red pebble";
            if (s.pebble[m.v] == PebbleState::Blue)
                return "target holds only a blue pebble; load it first";
            if (s.pebble[m.v] == PebbleState::None) {
                if (s.red_count >= r) return "fast memory full: cannot place a dark red pebble";
                ++s.red_count;
            }
            // A dark red pebble replaces whatever was on the target; a stale
            // blue copy in slow memory is dropped.
            s.pebble[m.v] = PebbleState::DarkRed;
            s.marked.set(*e);
            return std::nullopt;
        }
        case Move::Op::Delete: {
            if (s.pebble[m.v] == PebbleState::BlueLightRed) {
                s.pebble[m.v] = PebbleState::Blue;
                --s.red_count;
                return std::nullopt;
            }
            if (s.pebble[m.v] == PebbleState::DarkRed) {
                if (cfg.no_deletion)
                    return "dark red pebbles may only leave via save";
                if (!all_out_edges_marked(s, dag, m.v))
                    return "dark red delete requires all out-edges marked";
                s.pebble[m.v] = PebbleState::None;
                --s.red_count;
                return std::nullopt;
            }
            return "delete requires a red pebble on the node";
        }
        case Move::Op::Clear: {
            if (!cfg.allow_clear) return "clear is disabled";
            if (dag.is_source(m.v) || dag.is_sink(m.v))
                return "clear applies to internal nodes only";
            if (!all_in_edges_marked(s, dag, m.v))
                return "clear requires all in-edges marked";
            if (has_red(s.pebble[m.v])) --s.red_count;
            s.pebble[m.v] = PebbleState::None;
            for (EdgeId e : dag.in_edge_ids(m.v)) s.marked.reset(e);
            return std::nullopt;
        }
        case Move::Op::Compute:
            return "compute is an RBP move";
        case Move::Op::Slide:
            return "slide is an RBP move";
    }
    return "unknown move";
}

RbpState apply_move(const RbpState& state, const Move& move,
                    const ComputationDag& dag, const GameConfig& config) {
    RbpState next = state;
    if (auto err = try_apply_move(next, move, dag, config))
        throw RuleViolation(move.str() + ": " + *err);
    return next;
}

PrbpState apply_move(const PrbpState& state, const Move& move,
                     const ComputationDag& dag, const GameConfig& config) {
    PrbpState next = state;
    if (auto err = try_apply_move(next, move, dag, config))
        throw RuleViolation(move.str() + ": " + *err);
    return next;
}

GameState apply_move(const GameState& state, const Move& move,
                     const ComputationDag& dag, const GameConfig& config) {
    return std::visit(
        [&](const auto& s) -> GameState { return apply_move(s, move, dag, config); },
        state);
}

bool is_terminal(const RbpState& state, const ComputationDag& dag) {
    for (NodeId v : dag.sinks())
        if (!state.blue.test(v)) return false;
    return true;
}

bool is_terminal(const PrbpState& state, const ComputationDag& dag) {
    if (!state.marked.all()) return false;
    for (NodeId v : dag.sinks())
        if (!has_blue(state.pebble[v])) return false;
    return true;
}

bool is_terminal(const GameState& state, const ComputationDag& dag) {
    return std::visit([&](const auto& s) { return is_terminal(s, dag); }, state);
}

namespace {

bool is_io(const Move& m) {
    return m.op == Move::Op::Save || m.op == Move::Op::Load;
}

template <typename State>
CostReport replay(const ComputationDag& dag, const GameConfig& cfg,
                  const Schedule& schedule, State state) {
    CostReport report;
    for (std::size_t i = 0; i < schedule.moves.size(); ++i) {
        const Move& m = schedule.moves[i];
        if (auto err = try_apply_move(state, m, dag, cfg)) {
            report.first_error = MoveError{i, m.str() + ": " + *err};
            report.valid = false;
            report.terminal = is_terminal(state, dag);
            return report;
        }
        if (is_io(m)) ++report.io_cost;
        if (!cfg.compute_cost.is_zero()) {
            if (m.op == Move::Op::Compute || m.op == Move::Op::Slide) {
                report.compute_cost += cfg.compute_cost;
            } else if (m.op == Move::Op::PartialCompute) {
                if (cfg.cost_split == PrbpCostSplit::PerEdge)
                    report.compute_cost += cfg.compute_cost;
                else
                    report.compute_cost +=
                        Rational(cfg.compute_cost.num,
                                 checked_mul(cfg.compute_cost.den,
                                             static_cast<long long>(dag.in_degree(m.v))));
            }
        }
        report.peak_red = std::max(report.peak_red, static_cast<int>(state.red_count));
    }
    report.valid = true;
    report.terminal = is_terminal(state, dag);
    return report;
}

}  // namespace

CostReport validate_schedule(const ComputationDag& dag, const GameConfig& config,
                             const Schedule& schedule) {
    config.validate();
    if (config.kind == GameKind::Rbp)
        return replay(dag, config, schedule, rbp_initial_state(dag));
    return replay(dag, config, schedule, prbp_initial_state(dag));
}

Schedule translate_rbp_to_prbp(const ComputationDag& dag, const Schedule& rbp_schedule) {
    GameConfig in_cfg = rbp_schedule.config;
    if (in_cfg.kind != GameKind::Rbp)
        throw ScheduleError("translation input must be an RBP schedule");
    if (in_cfg.sliding)
        throw ScheduleError("translation requires the sliding variant disabled");
    CostReport check = validate_schedule(dag, in_cfg, rbp_schedule);
    if (!check.valid)
        throw ScheduleError("translation input fails RBP validation: " +
                            check.first_error->reason);

    GameConfig out_cfg = in_cfg;
    out_cfg.kind = GameKind::Prbp;
    out_cfg.sliding = false;

    Schedule out;
    out.config = out_cfg;

    RbpState rbp = rbp_initial_state(dag);
    PrbpState sim = prbp_initial_state(dag);

    // Dark red pebbles whose RBP counterpart was deleted while some out-edge
    // was still unmarked; their delete is emitted once the marks catch up.
    std::vector<NodeId> pending;

    auto emit = [&](const Move& m) {
        if (auto err = try_apply_move(sim, m, dag, out_cfg))
            throw ScheduleError("translated move " + m.str() + " rejected: " + *err);
        out.moves.push_back(m);
    };
    auto flush_pending = [&]() {
        for (std::size_t i = 0; i < pending.size();) {
            if (all_out_edges_marked(sim, dag, pending[i])) {
                emit(Move::del(pending[i]));
                pending.erase(pending.begin() + static_cast<std::ptrdiff_t>(i));
            } else {
                ++i;
            }
        }
    };

    for (const Move& m : rbp_schedule.moves) {
        switch (m.op) {
            case Move::Op::Load:
                emit(Move::load(m.v));
                break;
            case Move::Op::Save:
                if (sim.pebble[m.v] == PebbleState::DarkRed) {
                    emit(Move::save(m.v));
                } else {
                    // Redundant RBP save (the node is already blue). PRBP has
                    // no pebble to save, so spend the I/O on a redundant load
                    // instead, which keeps both state and cost aligned.
                    emit(Move::load(m.v));
                }
                break;
            case Move::Op::Compute:
                for (NodeId u : dag.in_neighbors(m.v)) emit(Move::pcompute(u, m.v));
                flush_pending();
                break;
            case Move::Op::Delete:
                if (sim.pebble[m.v] == PebbleState::BlueLightRed) {
                    emit(Move::del(m.v));
                } else if (all_out_edges_marked(sim, dag, m.v)) {
                    emit(Move::del(m.v));
                } else {
                    pending.push_back(m.v);
                }
                break;
            case Move::Op::Slide:
            case Move::Op::PartialCompute:
            case Move::Op::Clear:
                throw ScheduleError("unexpected move in RBP input: " + m.str());
        }
        if (auto err = try_apply_move(rbp, m, dag, in_cfg))
            throw ScheduleError("input move rejected on replay: " + *err);
    }
    return out;
}

}  // namespace pebble
