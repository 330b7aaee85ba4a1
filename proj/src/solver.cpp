#include "pebble/solver.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cassert>
#include <chrono>
#include <queue>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "pebble/strategies.hpp"

namespace pebble {

namespace {

constexpr std::size_t kMaxSolverNodes = 64;
constexpr std::size_t kMaxSolverEdges = 128;

// ---------------------------------------------------------------------------
// Packed states: 256 bits cover both games at solver scale.
//   classic:  w0 = red, w1 = blue, w2 = computed
//   partial:  w0/w1 = per-node 2-bit status, w2/w3 = marked edges
// Status values match PebbleState: 0 none, 1 blue, 2 blue+light red,
// 3 dark red. "Has red" is exactly bit 1 of the pair.
// ---------------------------------------------------------------------------
struct Packed {
    std::array<std::uint64_t, 4> w{};
    friend bool operator==(const Packed&, const Packed&) = default;
    bool operator<(const Packed& o) const { return w < o.w; }
};

struct PackedHash {
    std::size_t operator()(const Packed& p) const {
        std::uint64_t h = 0x9e3779b97f4a7c15ull;
        for (auto word : p.w) {
            h ^= word + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
            h *= 0xff51afd7ed558ccdull;
        }
        return static_cast<std::size_t>(h);
    }
};

constexpr std::uint64_t kRedBits = 0xaaaaaaaaaaaaaaaaull;  // bit 1 of each pair

inline std::uint64_t bit(std::size_t i) { return std::uint64_t{1} << i; }

inline unsigned pr_status(const Packed& s, std::size_t i) {
    return static_cast<unsigned>((s.w[i >> 5] >> ((i & 31) * 2)) & 3u);
}
inline void pr_set_status(Packed& s, std::size_t i, unsigned st) {
    auto& word = s.w[i >> 5];
    const unsigned shift = (i & 31) * 2;
    word = (word & ~(std::uint64_t{3} << shift)) | (std::uint64_t{st} << shift);
}
inline bool pr_marked(const Packed& s, std::size_t e) {
    return (s.w[2 + (e >> 6)] >> (e & 63)) & 1u;
}
inline void pr_mark(Packed& s, std::size_t e) { s.w[2 + (e >> 6)] |= bit(e & 63); }

struct Ctx {
    const ComputationDag* dag = nullptr;
    GameKind kind = GameKind::Rbp;
    std::size_t r = 0;
    std::size_t n = 0, m = 0;
    std::uint64_t node_all = 0;
    std::uint64_t source_mask = 0, sink_mask = 0;
    std::vector<std::uint64_t> in_nbr, out_nbr;
    std::vector<std::array<std::uint64_t, 2>> in_edges, out_edges;
    std::array<std::uint64_t, 2> all_edges{};

    static Ctx make(const ComputationDag& dag, const GameConfig& cfg) {
        if (dag.node_count() > kMaxSolverNodes || dag.edge_count() > kMaxSolverEdges)
            throw std::invalid_argument(
                "solver handles at most 64 nodes and 128 edges");
        Ctx c;
        c.dag = &dag;
        c.kind = cfg.kind;
        c.r = static_cast<std::size_t>(cfg.capacity);
        c.n = dag.node_count();
        c.m = dag.edge_count();
        c.node_all = c.n == 64 ? ~std::uint64_t{0} : bit(c.n) - 1;
        c.in_nbr.assign(c.n, 0);
        c.out_nbr.assign(c.n, 0);
        c.in_edges.assign(c.n, {0, 0});
        c.out_edges.assign(c.n, {0, 0});
        for (std::size_t e = 0; e < c.m; ++e) {
            auto [u, v] = dag.edge(static_cast<EdgeId>(e));
            c.in_nbr[v] |= bit(u);
            c.out_nbr[u] |= bit(v);
            c.in_edges[v][e >> 6] |= bit(e & 63);
            c.out_edges[u][e >> 6] |= bit(e & 63);
            c.all_edges[e >> 6] |= bit(e & 63);
        }
        for (NodeId v : dag.sources()) c.source_mask |= bit(v);
        for (NodeId v : dag.sinks()) c.sink_mask |= bit(v);
        return c;
    }

    Packed initial() const {
        Packed s;
        if (kind == GameKind::Rbp) {
            s.w[1] = source_mask;
        } else {
            std::uint64_t src = source_mask;
            while (src) {
                const auto v = static_cast<std::size_t>(std::countr_zero(src));
                src &= src - 1;
                pr_set_status(s, v, 1);  // blue
            }
        }
        return s;
    }

    std::size_t red_count(const Packed& s) const {
        if (kind == GameKind::Rbp) return static_cast<std::size_t>(std::popcount(s.w[0]));
        return static_cast<std::size_t>(std::popcount(s.w[0] & kRedBits) +
                                        std::popcount(s.w[1] & kRedBits));
    }

    bool edges_all_marked(const Packed& s, const std::array<std::uint64_t, 2>& mask) const {
        return (mask[0] & ~s.w[2]) == 0 && (mask[1] & ~s.w[3]) == 0;
    }

    bool terminal(const Packed& s) const {
        if (kind == GameKind::Rbp) return (sink_mask & ~s.w[1]) == 0;
        if (s.w[2] != all_edges[0] || s.w[3] != all_edges[1]) return false;
        std::uint64_t sinks = sink_mask;
        while (sinks) {
            const auto v = static_cast<std::size_t>(std::countr_zero(sinks));
            sinks &= sinks - 1;
            const unsigned st = pr_status(s, v);
            if (st != 1 && st != 2) return false;
        }
        return true;
    }

    // Admissible lower bound on the remaining io cost: every source that is
    // not red but still feeds an unfinished consumer must be loaded again
    // (sources cannot be computed, so only a load puts a red pebble there),
    // and every sink that is not blue, or that will turn dark red again
    // because an in-edge is still unmarked, must be saved. All these future
    // moves are distinct.
    long long heuristic(const Packed& s) const {
        long long h = 0;
        if (kind == GameKind::Rbp) {
            std::uint64_t src = source_mask & ~s.w[0];
            while (src) {
                const auto v = static_cast<std::size_t>(std::countr_zero(src));
                src &= src - 1;
                if (out_nbr[v] & ~s.w[2]) ++h;
            }
            h += std::popcount(sink_mask & ~s.w[1]);
        } else {
            std::uint64_t src = source_mask;
            while (src) {
                const auto v = static_cast<std::size_t>(std::countr_zero(src));
                src &= src - 1;
                if (pr_status(s, v) == 1 && !edges_all_marked(s, out_edges[v])) ++h;
            }
            std::uint64_t snk = sink_mask;
            while (snk) {
                const auto v = static_cast<std::size_t>(std::countr_zero(snk));
                snk &= snk - 1;
                const unsigned st = pr_status(s, v);
                if (st != 1 && st != 2) {
                    ++h;
                } else if (!edges_all_marked(s, in_edges[v])) {
                    ++h;  // a pending partial compute will re-darken this sink
                }
            }
        }
        return h;
    }

    long long progress(const Packed& s) const {
        if (kind == GameKind::Rbp) return std::popcount(s.w[2]);
        return std::popcount(s.w[2]) + std::popcount(s.w[3]);
    }
};

// Encoded (optional delete; move) pair for parent links.
struct Step {
    bool has_del = false;
    std::uint8_t del_node = 0;
    Move move{Move::Op::Save, 0, 0};
};

std::uint64_t encode_step(const Step& st) {
    return (std::uint64_t{st.has_del} << 40) | (std::uint64_t{st.del_node} << 32) |
           (std::uint64_t{static_cast<std::uint8_t>(st.move.op)} << 16) |
           (std::uint64_t{static_cast<std::uint8_t>(st.move.u)} << 8) |
           std::uint64_t{static_cast<std::uint8_t>(st.move.v)};
}

Step decode_step(std::uint64_t x) {
    Step st;
    st.has_del = (x >> 40) & 1;
    st.del_node = static_cast<std::uint8_t>((x >> 32) & 0xff);
    st.move.op = static_cast<Move::Op>((x >> 16) & 0xff);
    st.move.u = static_cast<NodeId>((x >> 8) & 0xff);
    st.move.v = static_cast<NodeId>(x & 0xff);
    return st;
}

// ---------------------------------------------------------------------------
// Transition enumeration with lazy deletes.
//
// Deletes have no effect other than freeing a red slot: no rule demands the
// absence of a pebble (the partial-compute target may keep a dark red
// pebble), and the legality of a dark-red delete only ever improves as marks
// grow. Hence any schedule rewrites at equal cost into one where each delete
// sits immediately before the capacity-bound move it enables — each move
// adds at most one red pebble, so one delete always suffices — and deletes
// that never become necessary are dropped. The search therefore emits plain
// moves while a slot is free and (delete x; move) pairs otherwise.
// ---------------------------------------------------------------------------
template <typename Fn>
void for_each_deletable(const Ctx& c, const Packed& s, std::uint64_t exclude, Fn&& fn) {
    if (c.kind == GameKind::Rbp) {
        // An unsaved sink is never deleted: its one-shot value could not be
        // recomputed, so the pebbling could never terminate afterwards.
        std::uint64_t red = s.w[0] & ~exclude & ~(c.sink_mask & ~s.w[1]);
        while (red) {
            const auto x = static_cast<std::size_t>(std::countr_zero(red));
            red &= red - 1;
            fn(x);
        }
        return;
    }
    for (std::size_t x = 0; x < c.n; ++x) {
        if (exclude & bit(x)) continue;
        const unsigned st = pr_status(s, x);
        if (st == 2) {
            fn(x);
        } else if (st == 3 && !(c.sink_mask & bit(x)) &&
                   c.edges_all_marked(s, c.out_edges[x])) {
            // Same sink guard as above: a dark red sink must be saved, not
            // dropped, or the terminal condition is unreachable.
            fn(x);
        }
    }
}

Packed apply_delete(const Ctx& c, Packed s, std::size_t x) {
    if (c.kind == GameKind::Rbp) {
        s.w[0] &= ~bit(x);
    } else {
        pr_set_status(s, x, pr_status(s, x) == 2 ? 1u : 0u);
    }
    return s;
}

// fn(cost, step, next_state)
template <typename Fn>
void expand(const Ctx& c, const Packed& s, Fn&& fn) {
    const std::size_t rc = c.red_count(s);
    const bool full = rc >= c.r;

    auto emit_with_capacity = [&](int cost, Move mv, std::uint64_t exclude,
                                  auto&& apply) {
        if (!full) {
            Step st{false, 0, mv};
            fn(cost, st, apply(s));
            return;
        }
        for_each_deletable(c, s, exclude, [&](std::size_t x) {
            Step st{true, static_cast<std::uint8_t>(x), mv};
            fn(cost, st, apply(apply_delete(c, s, x)));
        });
    };

    if (c.kind == GameKind::Rbp) {
        const std::uint64_t red = s.w[0], blue = s.w[1], computed = s.w[2];
        // Computes (free). The target never holds a red pebble beforehand in
        // the one-shot game, so a slot is always required.
        for (std::size_t v = 0; v < c.n; ++v) {
            if (c.source_mask & bit(v)) continue;
            if (computed & bit(v)) continue;
            if (c.in_nbr[v] & ~red) continue;
            emit_with_capacity(0, Move::compute(static_cast<NodeId>(v)), c.in_nbr[v],
                               [&](Packed t) {
                                   t.w[0] |= bit(v);
                                   t.w[2] |= bit(v);
                                   return t;
                               });
        }
        // Loads (cost 1): only of values some unfinished consumer still needs;
        // a load no future compute uses could be dropped from any schedule.
        std::uint64_t cand = blue & ~red;
        while (cand) {
            const auto v = static_cast<std::size_t>(std::countr_zero(cand));
            cand &= cand - 1;
            if (!(c.out_nbr[v] & ~computed)) continue;
            emit_with_capacity(1, Move::load(static_cast<NodeId>(v)), 0,
                               [&](Packed t) {
                                   t.w[0] |= bit(v);
                                   return t;
                               });
        }
        // Saves (cost 1, no slot needed): of sinks, or of values a future
        // load might still serve; saving anything else could be dropped.
        std::uint64_t sv = red & ~blue;
        while (sv) {
            const auto v = static_cast<std::size_t>(std::countr_zero(sv));
            sv &= sv - 1;
            if (!(c.sink_mask & bit(v)) && !(c.out_nbr[v] & ~computed)) continue;
            Packed t = s;
            t.w[1] |= bit(v);
            fn(1, Step{false, 0, Move::save(static_cast<NodeId>(v))}, t);
        }
        return;
    }

    // Partial computes (free).
    for (std::size_t e = 0; e < c.m; ++e) {
        if (pr_marked(s, e)) continue;
        const auto [u, v] = c.dag->edge(static_cast<EdgeId>(e));
        const unsigned su = pr_status(s, u);
        if (su != 2 && su != 3) continue;
        if (!c.edges_all_marked(s, c.in_edges[u])) continue;
        const unsigned tv = pr_status(s, v);
        if (tv == 1) continue;  // blue only: must be loaded first
        auto apply = [&](Packed t) {
            pr_set_status(t, v, 3);
            pr_mark(t, e);
            return t;
        };
        if (tv == 0) {
            emit_with_capacity(0, Move::pcompute(u, v), bit(u) | bit(v), apply);
        } else {
            fn(0, Step{false, 0, Move::pcompute(u, v)}, apply(s));
        }
    }
    // Loads (cost 1): only onto nodes with an unmarked incident edge; the
    // red pebble is otherwise unusable and the load could be dropped.
    for (std::size_t v = 0; v < c.n; ++v) {
        if (pr_status(s, v) != 1) continue;
        const bool useful = !c.edges_all_marked(s, c.in_edges[v]) ||
                            !c.edges_all_marked(s, c.out_edges[v]);
        if (!useful) continue;
        emit_with_capacity(1, Move::load(static_cast<NodeId>(v)), bit(v),
                           [&](Packed t) {
                               pr_set_status(t, v, 2);
                               return t;
                           });
    }
    // Saves (cost 1): of dark red sinks, or of dark red values still touched
    // by unmarked edges (the partial value must survive its eviction).
    for (std::size_t v = 0; v < c.n; ++v) {
        if (pr_status(s, v) != 3) continue;
        const bool useful = (c.sink_mask & bit(v)) ||
                            !c.edges_all_marked(s, c.in_edges[v]) ||
                            !c.edges_all_marked(s, c.out_edges[v]);
        if (!useful) continue;
        Packed t = s;
        pr_set_status(t, v, 2);
        fn(1, Step{false, 0, Move::save(static_cast<NodeId>(v))}, t);
    }
}

// Pointwise dominance at equal marks/computed:
// a state with strictly more pebbles can mimic any continuation of the
// lesser one, shedding its surplus through the lazy-delete transitions the
// moment capacity binds. Surplus pebbles are free to shed: an extra classic
// red, a light red next to blue where only blue remains, or a dark red on a
// node whose out-edges are all marked where nothing remains.
bool dominates(const Ctx& c, const Packed& a, const Packed& b) {
    if (c.kind == GameKind::Rbp) {
        if (a.w[2] != b.w[2]) return false;
        return (b.w[0] & ~a.w[0]) == 0 && (b.w[1] & ~a.w[1]) == 0;
    }
    if (a.w[2] != b.w[2] || a.w[3] != b.w[3]) return false;
    for (std::size_t v = 0; v < c.n; ++v) {
        const unsigned sa = pr_status(a, v), sb = pr_status(b, v);
        if (sa == sb) continue;
        if (sa == 2 && sb == 1) continue;
        if (sa == 3 && sb == 0 && c.edges_all_marked(a, c.out_edges[v])) continue;
        return false;
    }
    return true;
}

std::uint64_t bucket_key(const Ctx& c, const Packed& s) {
    if (c.kind == GameKind::Rbp) return s.w[2];
    return s.w[2] * 0x9e3779b97f4a7c15ull ^ s.w[3];
}

void check_solver_config(const GameConfig& cfg) {
    cfg.validate();
    if (cfg.sliding || cfg.allow_clear || cfg.no_deletion)
        throw std::invalid_argument(
            "the solver covers the plain one-shot games only (no sliding, "
            "clear, or no-deletion variants)");
}

// Upper bound from a constructive schedule; search states with f above it
// can be discarded because a witness of that cost already exists.
long long constructive_upper_bound(const ComputationDag& dag, const GameConfig& cfg) {
    if (cfg.kind == GameKind::Prbp) return streaming_prbp(dag).claimed_cost;
    return rbp_topological_baseline(dag, cfg.capacity).claimed_cost;
}

}  // namespace

long long solver_heuristic(const ComputationDag& dag, const GameConfig& config,
                           const GameState& state) {
    Ctx c = Ctx::make(dag, config);
    Packed p;
    if (const auto* rbp = std::get_if<RbpState>(&state)) {
        for (std::size_t v = 0; v < c.n; ++v) {
            if (rbp->red.test(v)) p.w[0] |= bit(v);
            if (rbp->blue.test(v)) p.w[1] |= bit(v);
            if (rbp->computed.test(v)) p.w[2] |= bit(v);
        }
    } else {
        const auto& s = std::get<PrbpState>(state);
        for (std::size_t v = 0; v < c.n; ++v)
            pr_set_status(p, v, static_cast<unsigned>(s.pebble[v]));
        for (std::size_t e = 0; e < c.m; ++e)
            if (s.marked.test(e)) pr_mark(p, e);
    }
    return c.heuristic(p);
}

SolveResult solve_opt(const ComputationDag& dag, const GameConfig& config,
                      const SolveBudget& budget) {
    check_solver_config(config);
    const DagStats st = dag.stats();
    SolveResult result;
    if (config.kind == GameKind::Rbp &&
        static_cast<std::size_t>(config.capacity) < st.max_in_degree + 1) {
        result.status = SolveStatus::Infeasible;
        return result;
    }
    if (config.kind == GameKind::Prbp && config.capacity < 2) {
        // Marking any edge needs red pebbles on both endpoints at once.
        result.status = SolveStatus::Infeasible;
        return result;
    }

    Ctx ctx = Ctx::make(dag, config);
    long long ub = constructive_upper_bound(dag, config);
    if (budget.upper_bound_seed) ub = std::min(ub, *budget.upper_bound_seed);

    std::vector<Packed> states;
    std::vector<std::uint32_t> gs;
    std::vector<std::uint32_t> parent;
    std::vector<std::uint64_t> via;
    std::vector<std::uint8_t> pruned;
    std::unordered_map<Packed, std::uint32_t, PackedHash> index;
    std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> buckets;
    constexpr std::size_t kBucketScanCap = 96;

    struct QEntry {
        long long f;
        long long neg_progress;
        std::uint32_t idx;
        std::uint32_t g_at_push;
    };
    auto cmp = [&](const QEntry& a, const QEntry& b) {
        if (a.f != b.f) return a.f > b.f;
        if (a.neg_progress != b.neg_progress) return a.neg_progress > b.neg_progress;
        return states[b.idx] < states[a.idx];
    };
    std::priority_queue<QEntry, std::vector<QEntry>, decltype(cmp)> open(cmp);

    auto add_state = [&](const Packed& s, std::uint32_t g, std::uint32_t par,
                         std::uint64_t step) {
        auto it = index.find(s);
        if (it != index.end()) {
            if (g < gs[it->second]) {
                gs[it->second] = g;
                parent[it->second] = par;
                via[it->second] = step;
                pruned[it->second] = 0;
                const long long f = g + ctx.heuristic(s);
                if (f <= ub) open.push({f, -ctx.progress(s), it->second, g});
            }
            return;
        }
        const long long f = g + ctx.heuristic(s);
        if (f > ub) return;
        // Dominance pruning within the same marks/computed bucket.
        auto& bucket = buckets[bucket_key(ctx, s)];
        std::size_t scanned = 0;
        for (std::uint32_t cand : bucket) {
            if (scanned++ >= kBucketScanCap) break;
            if (pruned[cand]) continue;
            if (gs[cand] <= g && dominates(ctx, states[cand], s)) return;
        }
        scanned = 0;
        for (std::uint32_t cand : bucket) {
            if (scanned++ >= kBucketScanCap) break;
            if (pruned[cand]) continue;
            if (g <= gs[cand] && dominates(ctx, s, states[cand])) pruned[cand] = 1;
        }
        const auto idx = static_cast<std::uint32_t>(states.size());
        states.push_back(s);
        gs.push_back(g);
        parent.push_back(par);
        via.push_back(step);
        pruned.push_back(0);
        index.emplace(s, idx);
        bucket.push_back(idx);
        open.push({f, -ctx.progress(s), idx, g});
    };

    const Packed init = ctx.initial();
    add_state(init, 0, ~std::uint32_t{0}, 0);

    const auto t0 = std::chrono::steady_clock::now();
    std::size_t expanded = 0;
    while (!open.empty()) {
        const QEntry top = open.top();
        open.pop();
        const std::uint32_t idx = top.idx;
        if (top.g_at_push != gs[idx] || pruned[idx]) continue;
        const Packed cur = states[idx];

        if (ctx.terminal(cur)) {
            result.status = SolveStatus::Optimal;
            result.opt_cost = gs[idx];
            Schedule w;
            w.config = config;
            std::vector<std::uint64_t> steps;
            for (std::uint32_t at = idx; parent[at] != ~std::uint32_t{0}; at = parent[at])
                steps.push_back(via[at]);
            for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
                const Step s = decode_step(*it);
                if (s.has_del) w.moves.push_back(Move::del(s.del_node));
                w.moves.push_back(s.move);
            }
            result.witness = std::move(w);
            result.states_expanded = expanded;
            return result;
        }

        if (++expanded > budget.max_states || states.size() > budget.max_states * 2) {
            result.status = SolveStatus::BudgetExhausted;
            result.states_expanded = expanded;
            return result;
        }
        if (budget.max_seconds && (expanded & 1023) == 0) {
            const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
            if (dt.count() > *budget.max_seconds) {
                result.status = SolveStatus::BudgetExhausted;
                result.states_expanded = expanded;
                return result;
            }
        }

        const auto g = gs[idx];
        expand(ctx, cur, [&](int cost, const Step& step, const Packed& next) {
            add_state(next, g + static_cast<std::uint32_t>(cost), idx, encode_step(step));
        });
    }

    // The open set ran dry below the upper bound. With a correct bound this
    // is unreachable for feasible games; it can only mean the caller seeded
    // an unachievable upper bound. Report conservatively.
    result.status = SolveStatus::BudgetExhausted;
    result.states_expanded = expanded;
    return result;
}

// ---------------------------------------------------------------------------
// Brute-force oracle. Runs on engine states through the public move rules,
// sharing nothing with the packed search above except the move vocabulary.
// ---------------------------------------------------------------------------
namespace {

struct EngineHash {
    std::size_t operator()(const RbpState& s) const {
        std::uint64_t h = 14695981039346656037ull;
        auto mix = [&](std::uint64_t x) {
            h ^= x;
            h *= 1099511628211ull;
        };
        for (auto w : s.red.words()) mix(w);
        for (auto w : s.blue.words()) mix(w ^ 0x5555555555555555ull);
        for (auto w : s.computed.words()) mix(w ^ 0x3333333333333333ull);
        return static_cast<std::size_t>(h);
    }
    std::size_t operator()(const PrbpState& s) const {
        std::uint64_t h = 14695981039346656037ull;
        auto mix = [&](std::uint64_t x) {
            h ^= x;
            h *= 1099511628211ull;
        };
        for (auto p : s.pebble) mix(static_cast<std::uint64_t>(p) + 17);
        for (auto w : s.marked.words()) mix(w ^ 0x0f0f0f0f0f0f0f0full);
        return static_cast<std::size_t>(h);
    }
};

template <typename State>
struct BruteSearch {
    const ComputationDag& dag;
    const GameConfig& cfg;
    std::vector<Move> candidates;
    std::unordered_set<State, EngineHash> path;
    std::vector<Move> stack;
    std::size_t visited = 0;
    long long bound = 0;

    BruteSearch(const ComputationDag& d, const GameConfig& c) : dag(d), cfg(c) {
        // Every syntactically possible move; the engine rejects illegal ones.
        for (NodeId v = 0; v < dag.node_count(); ++v) {
            if (cfg.kind == GameKind::Rbp && !dag.is_source(v))
                candidates.push_back(Move::compute(v));
        }
        if (cfg.kind == GameKind::Prbp)
            for (auto [u, v] : dag.edges()) candidates.push_back(Move::pcompute(u, v));
        for (NodeId v = 0; v < dag.node_count(); ++v) candidates.push_back(Move::load(v));
        for (NodeId v = 0; v < dag.node_count(); ++v) candidates.push_back(Move::save(v));
        for (NodeId v = 0; v < dag.node_count(); ++v) candidates.push_back(Move::del(v));
    }

    // Trivial-cost pruning only: unfinished sources still need loads,
    // unsaved (or to-be-redarkened) sinks still need saves.
    long long remaining_lb(const State& s) const {
        long long h = 0;
        if constexpr (std::is_same_v<State, RbpState>) {
            for (NodeId v : dag.sources()) {
                if (s.red.test(v)) continue;
                bool needed = false;
                for (NodeId w : dag.out_neighbors(v))
                    if (!s.computed.test(w)) { needed = true; break; }
                if (needed) ++h;
            }
            for (NodeId v : dag.sinks())
                if (!s.blue.test(v)) ++h;
        } else {
            for (NodeId v : dag.sources()) {
                if (s.pebble[v] != PebbleState::Blue) continue;
                for (EdgeId e : dag.out_edge_ids(v))
                    if (!s.marked.test(e)) { ++h; break; }
            }
            for (NodeId v : dag.sinks()) {
                if (!has_blue(s.pebble[v])) {
                    ++h;
                    continue;
                }
                for (EdgeId e : dag.in_edge_ids(v))
                    if (!s.marked.test(e)) { ++h; break; }
            }
        }
        return h;
    }

    bool dfs(const State& s, long long io) {
        if (is_terminal(s, dag)) return true;
        if (io + remaining_lb(s) > bound) return false;
        ++visited;
        for (const Move& m : candidates) {
            State next = s;
            if (try_apply_move(next, m, dag, cfg)) continue;  // rejected
            if (path.contains(next)) continue;
            const long long cost =
                (m.op == Move::Op::Save || m.op == Move::Op::Load) ? 1 : 0;
            path.insert(next);
            stack.push_back(m);
            if (dfs(next, io + cost)) return true;
            stack.pop_back();
            path.erase(next);
        }
        return false;
    }
};

template <typename State>
SolveResult brute_force_run(const ComputationDag& dag, const GameConfig& cfg,
                            State initial, long long cost_cap) {
    SolveResult result;
    BruteSearch<State> search(dag, cfg);
    const long long start = search.remaining_lb(initial);
    for (long long bound = start; bound <= cost_cap; ++bound) {
        search.bound = bound;
        search.path.clear();
        search.path.insert(initial);
        search.stack.clear();
        if (search.dfs(initial, 0)) {
            result.status = SolveStatus::Optimal;
            result.opt_cost = bound;
            Schedule w;
            w.config = cfg;
            w.moves = search.stack;
            result.witness = std::move(w);
            result.states_expanded = search.visited;
            return result;
        }
    }
    result.status = SolveStatus::BudgetExhausted;
    result.states_expanded = search.visited;
    return result;
}

}  // namespace

SolveResult brute_force_opt(const ComputationDag& dag, const GameConfig& config,
                            long long cost_cap) {
    check_solver_config(config);
    const DagStats st = dag.stats();
    if (config.kind == GameKind::Rbp &&
        static_cast<std::size_t>(config.capacity) < st.max_in_degree + 1) {
        SolveResult r;
        r.status = SolveStatus::Infeasible;
        return r;
    }
    if (config.kind == GameKind::Prbp && config.capacity < 2) {
        SolveResult r;
        r.status = SolveStatus::Infeasible;
        return r;
    }
    if (config.kind == GameKind::Rbp)
        return brute_force_run(dag, config, rbp_initial_state(dag), cost_cap);
    return brute_force_run(dag, config, prbp_initial_state(dag), cost_cap);
}

ModelComparison compare_models(const ComputationDag& dag, int r,
                               const SolveBudget& budget) {
    const DagStats st = dag.stats();
    if (static_cast<std::size_t>(r) < st.max_in_degree + 1)
        throw InfeasibleRbp("classic pebbling needs r >= max in-degree + 1 (here " +
                            std::to_string(st.max_in_degree + 1) + ")");
    GameConfig rbp;
    rbp.kind = GameKind::Rbp;
    rbp.capacity = r;
    GameConfig prbp;
    prbp.kind = GameKind::Prbp;
    prbp.capacity = r;

    ModelComparison out;
    SolveResult a = solve_opt(dag, rbp, budget);
    SolveResult b = solve_opt(dag, prbp, budget);
    out.rbp_status = a.status;
    out.prbp_status = b.status;
    out.opt_rbp = a.opt_cost;
    out.opt_prbp = b.opt_cost;
    out.strict = a.status == SolveStatus::Optimal && b.status == SolveStatus::Optimal &&
                 *b.opt_cost < *a.opt_cost;
    return out;
}

}  // namespace pebble
