#include "pebble/strategies.hpp"

#include <algorithm>
#include <cassert>
#include <functional>

#include "pebble/generators.hpp"

namespace pebble {

namespace {

GameConfig prbp_config(int r) {
    GameConfig cfg;
    cfg.kind = GameKind::Prbp;
    cfg.capacity = r;
    return cfg;
}

GameConfig rbp_config(int r) {
    GameConfig cfg;
    cfg.kind = GameKind::Rbp;
    cfg.capacity = r;
    return cfg;
}

}  // namespace

NamedSchedule streaming_prbp(const ComputationDag& dag) {
    NamedSchedule out;
    out.name = "streaming";
    out.claim_source = "topological sweep, r = 2";
    out.schedule.config = prbp_config(2);
    auto& moves = out.schedule.moves;

    // has_unmarked_out counts down as we mark edges, so "still needed"
    // can be decided without replaying.
    std::vector<std::size_t> unmarked_out(dag.node_count());
    for (NodeId v = 0; v < dag.node_count(); ++v) unmarked_out[v] = dag.out_degree(v);

    long long io = 0;
    NodeId prev = 0;
    bool have_prev = false;  // previous target still holding a dark red pebble

    for (NodeId v : dag.topological_order()) {
        if (dag.is_source(v)) continue;
        auto ins = dag.in_neighbors(v);
        std::vector<NodeId> order(ins.begin(), ins.end());
        // Consume the resident previous target first when it feeds v.
        if (have_prev) {
            auto it = std::find(order.begin(), order.end(), prev);
            if (it != order.end()) {
                std::rotate(order.begin(), it, it + 1);
            } else {
                // prev is not an input of v; retire its pebble, saving first
                // if the value is still needed.
                if (unmarked_out[prev] > 0) {
                    moves.push_back(Move::save(prev));
                    ++io;
                }
                moves.push_back(Move::del(prev));
                have_prev = false;
            }
        }
        for (std::size_t i = 0; i < order.size(); ++i) {
            NodeId u = order[i];
            const bool resident = have_prev && i == 0;
            if (!resident) {
                moves.push_back(Move::load(u));
                ++io;
            }
            moves.push_back(Move::pcompute(u, v));
            --unmarked_out[u];
            if (resident) {
                have_prev = false;  // dark red pebble consumed below
                if (unmarked_out[u] > 0) {
                    moves.push_back(Move::save(u));
                    ++io;
                }
                moves.push_back(Move::del(u));
            } else {
                moves.push_back(Move::del(u));  // light red; blue copy stays
            }
        }
        if (dag.is_sink(v)) {
            moves.push_back(Move::save(v));
            ++io;
            moves.push_back(Move::del(v));
        } else {
            prev = v;
            have_prev = true;
        }
    }
    if (have_prev) moves.push_back(Move::del(prev));  // out-edges all marked by now
    out.claimed_cost = io;
    return out;
}

NamedSchedule figure1_golden(GameKind kind) {
    // Node ids in gen_figure1(true):
    // u0=0 u1=1 u2=2 w1=3 w2=4 w3=5 w4=6 v1=7 v2=8 v0=9
    NamedSchedule out;
    out.schedule.config = kind == GameKind::Rbp ? rbp_config(4) : prbp_config(4);
    auto& mv = out.schedule.moves;
    if (kind == GameKind::Rbp) {
        out.name = "figure1-rbp";
        out.claimed_cost = 3;
        out.claim_source = "optimal classic pebbling at r = 4";
        mv = {
            Move::load(0),    Move::compute(1), Move::del(0),     Move::compute(3),
            Move::compute(4), Move::compute(5), Move::del(3),     Move::del(4),
            Move::compute(6), Move::del(5),     Move::del(1),     Move::load(0),
            Move::compute(2), Move::del(0),     Move::compute(7), Move::compute(8),
            Move::del(6),     Move::del(2),     Move::compute(9), Move::save(9),
        };
    } else {
        out.name = "figure1-prbp";
        out.claimed_cost = 2;
        out.claim_source = "optimal partial-computing pebbling at r = 4";
        mv = {
            Move::load(0),        Move::pcompute(0, 1), Move::pcompute(0, 2),
            Move::del(0),         Move::pcompute(1, 3), Move::pcompute(3, 5),
            Move::del(3),         Move::pcompute(1, 4), Move::pcompute(4, 5),
            Move::del(4),         Move::pcompute(1, 6), Move::pcompute(5, 6),
            Move::del(1),         Move::del(5),         Move::pcompute(6, 7),
            Move::pcompute(6, 8), Move::pcompute(2, 7), Move::pcompute(2, 8),
            Move::del(6),         Move::del(2),         Move::pcompute(7, 9),
            Move::pcompute(8, 9), Move::save(9),
        };
    }
    return out;
}

NamedSchedule figure1_chain_prbp(int copies) {
    if (copies < 1) throw ParamError("figure1 chain strategy needs at least one copy");
    NamedSchedule out;
    out.name = "figure1-chain-prbp";
    out.claimed_cost = 2;
    out.claim_source = "trivial-cost partial-computing sweep at r = 4";
    out.schedule.config = prbp_config(4);
    auto& mv = out.schedule.moves;

    const auto g = static_cast<std::size_t>(copies);
    mv.push_back(Move::load(0));
    mv.push_back(Move::pcompute(0, 1));
    mv.push_back(Move::pcompute(0, 2));
    mv.push_back(Move::del(0));
    NodeId u1 = 1, u2 = 2, next = 3;
    for (std::size_t i = 0; i < g; ++i) {
        NodeId w1 = next, w2 = next + 1, w3 = next + 2, w4 = next + 3;
        NodeId v1 = next + 4, v2 = next + 5;
        next += 6;
        const Move gadget[] = {
            Move::pcompute(u1, w1), Move::pcompute(w1, w3), Move::del(w1),
            Move::pcompute(u1, w2), Move::pcompute(w2, w3), Move::del(w2),
            Move::pcompute(u1, w4), Move::pcompute(w3, w4), Move::del(u1),
            Move::del(w3),          Move::pcompute(w4, v1), Move::pcompute(w4, v2),
            Move::pcompute(u2, v1), Move::pcompute(u2, v2), Move::del(w4),
            Move::del(u2),
        };
        mv.insert(mv.end(), std::begin(gadget), std::end(gadget));
        u1 = v1;
        u2 = v2;
    }
    const auto v0 = static_cast<NodeId>(6 * g + 3);
    mv.push_back(Move::pcompute(u1, v0));
    mv.push_back(Move::pcompute(u2, v0));
    mv.push_back(Move::del(u1));
    mv.push_back(Move::del(u2));
    mv.push_back(Move::save(v0));
    return out;
}

NamedSchedule matvec_prbp(int m) {
    if (m < 1) throw ParamError("matvec strategy needs m >= 1");
    const auto mm = static_cast<std::size_t>(m);
    NamedSchedule out;
    out.name = "matvec-prbp";
    out.claimed_cost = static_cast<long long>(mm * mm + 2 * mm);
    out.claim_source = "trivial-cost column sweep with resident accumulators";
    out.schedule.config = prbp_config(m + 3);
    auto& mv = out.schedule.moves;

    const std::size_t a0 = mm, p0 = mm + mm * mm, y0 = mm + 2 * mm * mm;
    for (std::size_t i = 0; i < mm; ++i) {
        mv.push_back(Move::load(static_cast<NodeId>(i)));  // x_i
        for (std::size_t j = 0; j < mm; ++j) {
            const auto a = static_cast<NodeId>(a0 + j * mm + i);
            const auto p = static_cast<NodeId>(p0 + j * mm + i);
            const auto y = static_cast<NodeId>(y0 + j);
            mv.push_back(Move::load(a));
            mv.push_back(Move::pcompute(a, p));
            mv.push_back(Move::pcompute(static_cast<NodeId>(i), p));
            mv.push_back(Move::del(a));
            mv.push_back(Move::pcompute(p, y));
            mv.push_back(Move::del(p));
        }
        mv.push_back(Move::del(static_cast<NodeId>(i)));
    }
    for (std::size_t j = 0; j < mm; ++j) {
        mv.push_back(Move::save(static_cast<NodeId>(y0 + j)));
        mv.push_back(Move::del(static_cast<NodeId>(y0 + j)));
    }
    return out;
}

namespace {

struct TreeLayout {
    int k;
    int depth;
    std::vector<std::size_t> level_off;

    NodeId id(int level, std::size_t pos) const {
        return static_cast<NodeId>(level_off[static_cast<std::size_t>(level)] + pos);
    }
    NodeId child(int level, std::size_t pos, int c) const {
        return id(level + 1, pos * static_cast<std::size_t>(k) + static_cast<std::size_t>(c));
    }
};

// Classic game, r = k + 1: the first k - 1 child subtrees are computed and
// saved, the last stays resident, then the saved siblings are reloaded and
// the parent computed. Nodes whose children are leaves cost no extra I/O.
// Pre: no red pebbles held at entry; post: a single red pebble on `v`.
void tree_rbp_emit(const TreeLayout& t, int level, std::size_t pos,
                   std::vector<Move>& mv) {
    const int k = t.k;
    const NodeId v = t.id(level, pos);
    if (level + 1 == t.depth) {
        for (int c = 0; c < k; ++c) mv.push_back(Move::load(t.child(level, pos, c)));
        mv.push_back(Move::compute(v));
        for (int c = 0; c < k; ++c) mv.push_back(Move::del(t.child(level, pos, c)));
        return;
    }
    for (int c = 0; c + 1 < k; ++c) {
        tree_rbp_emit(t, level + 1, pos * static_cast<std::size_t>(k) + static_cast<std::size_t>(c), mv);
        mv.push_back(Move::save(t.child(level, pos, c)));
        mv.push_back(Move::del(t.child(level, pos, c)));
    }
    tree_rbp_emit(t, level + 1, pos * static_cast<std::size_t>(k) + static_cast<std::size_t>(k - 1), mv);
    for (int c = 0; c + 1 < k; ++c) mv.push_back(Move::load(t.child(level, pos, c)));
    mv.push_back(Move::compute(v));
    for (int c = 0; c < k; ++c) mv.push_back(Move::del(t.child(level, pos, c)));
}

// Partial computing: a depth-j subtree is computed free of I/O with j + 1
// red pebbles by aggregating one child at a time. Above that, the partial
// value of v is staged to slow memory between child subtrees, costing
// 2(k - 1) per node. Pre: no red pebbles at entry; post: dark red on v.
void tree_prbp_emit(const TreeLayout& t, int level, std::size_t pos,
                    std::vector<Move>& mv) {
    const int k = t.k;
    const NodeId v = t.id(level, pos);
    const int subtree_depth = t.depth - level;
    if (subtree_depth == 1) {
        for (int c = 0; c < k; ++c) {
            const NodeId leaf = t.child(level, pos, c);
            mv.push_back(Move::load(leaf));
            mv.push_back(Move::pcompute(leaf, v));
            mv.push_back(Move::del(leaf));
        }
        return;
    }
    const bool free_zone = subtree_depth <= t.k;
    for (int c = 0; c < k; ++c) {
        const NodeId ch = t.child(level, pos, c);
        if (!free_zone && c > 0) {
            tree_prbp_emit(t, level + 1, pos * static_cast<std::size_t>(k) + static_cast<std::size_t>(c), mv);
            mv.push_back(Move::load(v));
            mv.push_back(Move::pcompute(ch, v));
            mv.push_back(Move::del(ch));
            if (c + 1 < k) {
                mv.push_back(Move::save(v));
                mv.push_back(Move::del(v));
            }
        } else {
            tree_prbp_emit(t, level + 1, pos * static_cast<std::size_t>(k) + static_cast<std::size_t>(c), mv);
            mv.push_back(Move::pcompute(ch, v));
            mv.push_back(Move::del(ch));
            if (!free_zone && c + 1 < k) {
                mv.push_back(Move::save(v));
                mv.push_back(Move::del(v));
            }
        }
    }
}

}  // namespace

NamedSchedule tree_golden(int k, int depth, GameKind kind) {
    if (k < 2 || depth < 1) throw ParamError("tree strategy needs k >= 2, depth >= 1");
    TreeLayout t{k, depth, {}};
    t.level_off.resize(static_cast<std::size_t>(depth) + 2);
    std::size_t pow = 1;
    for (int l = 0; l <= depth; ++l) {
        t.level_off[static_cast<std::size_t>(l) + 1] = t.level_off[static_cast<std::size_t>(l)] + pow;
        pow *= static_cast<std::size_t>(k);
    }
    const auto leaves = static_cast<long long>(pow / static_cast<std::size_t>(k));

    auto ipow = [](long long base, int e) {
        long long r = 1;
        while (e-- > 0) r *= base;
        return r;
    };

    NamedSchedule out;
    out.schedule.config = kind == GameKind::Rbp ? rbp_config(k + 1) : prbp_config(k + 1);
    if (kind == GameKind::Rbp) {
        out.name = "tree-rbp";
        out.claimed_cost = ipow(k, depth) + 2 * ipow(k, depth - 1) - 1;
        out.claim_source = "k^d + 2k^(d-1) - 1 at r = k + 1";
        tree_rbp_emit(t, 0, 0, out.schedule.moves);
    } else {
        out.name = "tree-prbp";
        out.claimed_cost = depth >= k ? ipow(k, depth) + 2 * ipow(k, depth - k) - 1
                                      : leaves + 1;
        out.claim_source = depth >= k ? "k^d + 2k^(d-k) - 1 at r = k + 1"
                                      : "trivial cost; the whole tree fits the free recursion";
        tree_prbp_emit(t, 0, 0, out.schedule.moves);
    }
    out.schedule.moves.push_back(Move::save(t.id(0, 0)));
    return out;
}

NamedSchedule zipper_prbp(int d, int chain_len) {
    if (d < 1 || chain_len < 2)
        throw ParamError("zipper strategy needs d >= 1 and chain_len >= 2");
    const auto dd = static_cast<std::size_t>(d);
    const auto len = static_cast<std::size_t>(chain_len);

    NamedSchedule out;
    out.name = "zipper-prbp";
    out.claim_source = "stage odd partial values once, then stream with the even group";
    out.schedule.config = prbp_config(d + 2);
    auto& mv = out.schedule.moves;

    auto group0 = [&](std::size_t i) { return static_cast<NodeId>(i); };
    auto group1 = [&](std::size_t i) { return static_cast<NodeId>(dd + i); };
    auto chain = [&](std::size_t i) { return static_cast<NodeId>(2 * dd + i - 1); };  // 1-based

    // Phase 1: hold the odd-side group; finish c_1 fully and stage every
    // other odd node's group-side partial value.
    for (std::size_t i = 0; i < dd; ++i) mv.push_back(Move::load(group1(i)));
    for (std::size_t i = 1; i <= len; i += 2) {
        for (std::size_t s = 0; s < dd; ++s) mv.push_back(Move::pcompute(group1(s), chain(i)));
        if (i == 1) continue;  // c_1 is complete; it stays resident
        mv.push_back(Move::save(chain(i)));
        mv.push_back(Move::del(chain(i)));
    }
    for (std::size_t i = 0; i < dd; ++i) mv.push_back(Move::del(group1(i)));

    // Phase 2: hold the even-side group and walk the chain, reloading the
    // staged partial values at odd positions.
    for (std::size_t i = 0; i < dd; ++i) mv.push_back(Move::load(group0(i)));
    for (std::size_t i = 2; i <= len; ++i) {
        if (i % 2 == 1) mv.push_back(Move::load(chain(i)));
        mv.push_back(Move::pcompute(chain(i - 1), chain(i)));
        mv.push_back(Move::del(chain(i - 1)));
        if (i % 2 == 0)
            for (std::size_t s = 0; s < dd; ++s) mv.push_back(Move::pcompute(group0(s), chain(i)));
    }
    for (std::size_t i = 0; i < dd; ++i) mv.push_back(Move::del(group0(i)));
    mv.push_back(Move::save(chain(len)));

    out.claimed_cost = static_cast<long long>(2 * dd + 1 + 2 * ((len - 1) / 2));
    return out;
}

NamedSchedule collector_full(int d, int chain_len) {
    if (d < 1 || chain_len < 1)
        throw ParamError("collector strategy needs d >= 1 and chain_len >= 1");
    const auto dd = static_cast<std::size_t>(d);
    const auto len = static_cast<std::size_t>(chain_len);
    const std::size_t used = std::min(dd, len);

    NamedSchedule out;
    out.name = "collector-full";
    out.claimed_cost = static_cast<long long>(used + 1);
    out.claim_source = "trivial cost with all sources resident at r = d + 2";
    out.schedule.config = prbp_config(d + 2);
    auto& mv = out.schedule.moves;

    for (std::size_t i = 0; i < used; ++i) mv.push_back(Move::load(static_cast<NodeId>(i)));
    auto chain = [&](std::size_t i) { return static_cast<NodeId>(used + i - 1); };
    for (std::size_t i = 1; i <= len; ++i) {
        if (i >= 2) {
            mv.push_back(Move::pcompute(chain(i - 1), chain(i)));
            mv.push_back(Move::del(chain(i - 1)));
        }
        mv.push_back(Move::pcompute(static_cast<NodeId>((i - 1) % dd), chain(i)));
    }
    for (std::size_t i = 0; i < used; ++i) mv.push_back(Move::del(static_cast<NodeId>(i)));
    mv.push_back(Move::save(chain(len)));
    return out;
}

NamedSchedule spart_counterexample_prbp(int group_size) {
    if (group_size < 1) throw ParamError("group size must be >= 1");
    const auto h = static_cast<std::size_t>(group_size);
    NamedSchedule out;
    out.name = "spart-counterexample-prbp";
    out.claimed_cost = 8;
    out.claim_source = "trivial cost; the sink accumulates across groups at r = 3";
    out.schedule.config = prbp_config(3);
    auto& mv = out.schedule.moves;

    const auto sink = static_cast<NodeId>(7 * h + 7);
    for (std::size_t i = 0; i < 7; ++i) {
        mv.push_back(Move::load(static_cast<NodeId>(i)));
        for (std::size_t j = 0; j < h; ++j) {
            const auto w = static_cast<NodeId>(7 + i * h + j);
            mv.push_back(Move::pcompute(static_cast<NodeId>(i), w));
            mv.push_back(Move::pcompute(w, sink));
            mv.push_back(Move::del(w));
        }
        mv.push_back(Move::del(static_cast<NodeId>(i)));
    }
    mv.push_back(Move::save(sink));
    return out;
}

NamedSchedule rbp_topological_baseline(const ComputationDag& dag, int r) {
    NamedSchedule out;
    out.name = "rbp-topological-baseline";
    out.claim_source = "save-everything topological order";
    out.schedule.config = rbp_config(r);
    auto& mv = out.schedule.moves;
    long long io = 0;
    for (NodeId v : dag.topological_order()) {
        if (dag.is_source(v)) continue;
        for (NodeId u : dag.in_neighbors(v)) {
            mv.push_back(Move::load(u));
            ++io;
        }
        mv.push_back(Move::compute(v));
        mv.push_back(Move::save(v));
        ++io;
        for (NodeId u : dag.in_neighbors(v)) mv.push_back(Move::del(u));
        mv.push_back(Move::del(v));
    }
    out.claimed_cost = io;
    return out;
}

}  // namespace pebble
