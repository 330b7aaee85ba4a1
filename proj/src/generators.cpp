#include "pebble/generators.hpp"

#include <algorithm>
#include <array>
#include <cassert>

namespace pebble {

namespace {

std::vector<Edge> figure1_core_edges(NodeId u1, NodeId u2, NodeId w1, NodeId w2,
                                     NodeId w3, NodeId w4, NodeId v1, NodeId v2) {
    return {
        {u1, w1}, {u1, w2}, {u1, w4},
        {w1, w3}, {w2, w3},
        {w3, w4},
        {w4, v1}, {w4, v2},
        {u2, v1}, {u2, v2},
    };
}

}  // namespace

ComputationDag gen_figure1(bool with_endpoints) {
    if (!with_endpoints) {
        // u1=0 u2=1 w1=2 w2=3 w3=4 w4=5 v1=6 v2=7
        return ComputationDag::build(
            8, figure1_core_edges(0, 1, 2, 3, 4, 5, 6, 7),
            {"u1", "u2", "w1", "w2", "w3", "w4", "v1", "v2"});
    }
    // u0=0 u1=1 u2=2 w1=3 w2=4 w3=5 w4=6 v1=7 v2=8 v0=9
    std::vector<Edge> edges = figure1_core_edges(1, 2, 3, 4, 5, 6, 7, 8);
    edges.insert(edges.end(), {{0, 1}, {0, 2}, {7, 9}, {8, 9}});
    return ComputationDag::build(
        10, std::move(edges),
        {"u0", "u1", "u2", "w1", "w2", "w3", "w4", "v1", "v2", "v0"});
}

ComputationDag gen_figure1_chain(int copies) {
    if (copies < 1) throw ParamError("figure1 chain needs at least one copy");
    const auto g = static_cast<std::size_t>(copies);
    const std::size_t n = 6 * g + 4;

    std::vector<Edge> edges;
    std::vector<std::string> labels(n);
    labels[0] = "u0";
    labels[n - 1] = "v0";

    NodeId u1 = 1, u2 = 2;  // interface nodes of the current copy
    labels[u1] = "g1.u1";
    labels[u2] = "g1.u2";
    edges.push_back({0, u1});
    edges.push_back({0, u2});
    NodeId next = 3;
    for (std::size_t i = 0; i < g; ++i) {
        NodeId w1 = next, w2 = next + 1, w3 = next + 2, w4 = next + 3;
        NodeId v1 = next + 4, v2 = next + 5;
        next += 6;
        const std::string p = "g" + std::to_string(i + 1) + ".";
        labels[w1] = p + "w1";
        labels[w2] = p + "w2";
        labels[w3] = p + "w3";
        labels[w4] = p + "w4";
        labels[v1] = (i + 1 < g ? "g" + std::to_string(i + 2) + ".u1" : p + "v1");
        labels[v2] = (i + 1 < g ? "g" + std::to_string(i + 2) + ".u2" : p + "v2");
        auto core = figure1_core_edges(u1, u2, w1, w2, w3, w4, v1, v2);
        edges.insert(edges.end(), core.begin(), core.end());
        u1 = v1;  // merged into the next copy's interface
        u2 = v2;
    }
    edges.push_back({u1, static_cast<NodeId>(n - 1)});
    edges.push_back({u2, static_cast<NodeId>(n - 1)});
    return ComputationDag::build(n, std::move(edges), std::move(labels));
}

ComputationDag gen_matvec(int m) {
    if (m < 1) throw ParamError("matvec needs m >= 1");
    const auto mm = static_cast<std::size_t>(m);
    // x_i: [0, m); A_{j,i}: m + (j-1)m + (i-1); products p_{j,i} follow;
    // sinks y_j last.
    const std::size_t a0 = mm, p0 = mm + mm * mm, y0 = mm + 2 * mm * mm;
    const std::size_t n = y0 + mm;
    std::vector<Edge> edges;
    std::vector<std::string> labels(n);
    for (std::size_t i = 0; i < mm; ++i) labels[i] = "x" + std::to_string(i + 1);
    for (std::size_t j = 0; j < mm; ++j) {
        labels[y0 + j] = "y" + std::to_string(j + 1);
        for (std::size_t i = 0; i < mm; ++i) {
            const auto a = static_cast<NodeId>(a0 + j * mm + i);
            const auto p = static_cast<NodeId>(p0 + j * mm + i);
            labels[a] = "A" + std::to_string(j + 1) + "," + std::to_string(i + 1);
            labels[p] = "p" + std::to_string(j + 1) + "," + std::to_string(i + 1);
            edges.push_back({static_cast<NodeId>(i), p});
            edges.push_back({a, p});
            edges.push_back({p, static_cast<NodeId>(y0 + j)});
        }
    }
    return ComputationDag::build(n, std::move(edges), std::move(labels));
}

ComputationDag gen_zipper(int d, int chain_len) {
    if (d < 1 || chain_len < 1) throw ParamError("zipper needs d >= 1 and chain_len >= 1");
    const auto dd = static_cast<std::size_t>(d);
    const auto len = static_cast<std::size_t>(chain_len);
    // Group 0 feeds even chain positions, group 1 odd ones. A single-node
    // chain touches only group 1; its partner group is left out entirely.
    const bool both_groups = len >= 2;
    const std::size_t group1_base = both_groups ? dd : 0;
    const std::size_t chain_base = both_groups ? 2 * dd : dd;
    const std::size_t n = chain_base + len;

    std::vector<Edge> edges;
    std::vector<std::string> labels(n);
    if (both_groups)
        for (std::size_t i = 0; i < dd; ++i) labels[i] = "a" + std::to_string(i + 1);
    for (std::size_t i = 0; i < dd; ++i)
        labels[group1_base + i] = "b" + std::to_string(i + 1);
    for (std::size_t i = 1; i <= len; ++i) {
        const auto c = static_cast<NodeId>(chain_base + i - 1);
        labels[c] = "c" + std::to_string(i);
        if (i >= 2) edges.push_back({static_cast<NodeId>(c - 1), c});
        const std::size_t base = (i % 2 == 1) ? group1_base : 0;
        for (std::size_t k = 0; k < dd; ++k)
            edges.push_back({static_cast<NodeId>(base + k), c});
    }
    return ComputationDag::build(n, std::move(edges), std::move(labels));
}

ComputationDag gen_kary_tree(int k, int depth) {
    if (k < 2 || depth < 1) throw ParamError("k-ary tree needs k >= 2 and depth >= 1");
    const auto kk = static_cast<std::size_t>(k);
    // Level offsets: level l starts at (k^l - 1) / (k - 1); root is id 0.
    std::vector<std::size_t> level_off(static_cast<std::size_t>(depth) + 2);
    std::size_t pow = 1;
    for (std::size_t l = 0; l <= static_cast<std::size_t>(depth); ++l) {
        level_off[l + 1] = level_off[l] + pow;
        if (level_off[l + 1] > ComputationDag::kMaxNodes)
            throw ParamError("k-ary tree too large");
        pow *= kk;
    }
    const std::size_t n = level_off[static_cast<std::size_t>(depth) + 1];
    std::vector<Edge> edges;
    for (std::size_t l = 0; l < static_cast<std::size_t>(depth); ++l) {
        const std::size_t width = level_off[l + 1] - level_off[l];
        for (std::size_t p = 0; p < width; ++p) {
            const auto parent = static_cast<NodeId>(level_off[l] + p);
            for (std::size_t c = 0; c < kk; ++c)
                edges.push_back({static_cast<NodeId>(level_off[l + 1] + p * kk + c), parent});
        }
    }
    return ComputationDag::build(n, std::move(edges));
}

ComputationDag gen_pebble_collector(int d, int chain_len) {
    if (d < 1 || chain_len < 1)
        throw ParamError("pebble collector needs d >= 1 and chain_len >= 1");
    const auto dd = static_cast<std::size_t>(d);
    const auto len = static_cast<std::size_t>(chain_len);
    const std::size_t used_sources = std::min(dd, len);
    const std::size_t n = used_sources + len;
    std::vector<Edge> edges;
    std::vector<std::string> labels(n);
    for (std::size_t i = 0; i < used_sources; ++i) labels[i] = "u" + std::to_string(i + 1);
    for (std::size_t i = 1; i <= len; ++i) {
        const auto c = static_cast<NodeId>(used_sources + i - 1);
        labels[c] = "c" + std::to_string(i);
        if (i >= 2) edges.push_back({static_cast<NodeId>(c - 1), c});
        edges.push_back({static_cast<NodeId>((i - 1) % dd), c});
    }
    return ComputationDag::build(n, std::move(edges), std::move(labels));
}

ComputationDag gen_spart_counterexample(int group_size) {
    if (group_size < 1) throw ParamError("group size must be >= 1");
    const auto h = static_cast<std::size_t>(group_size);
    const std::size_t n = 7 * h + 8;
    const auto sink = static_cast<NodeId>(n - 1);
    std::vector<Edge> edges;
    std::vector<std::string> labels(n);
    labels[n - 1] = "v";
    for (std::size_t i = 0; i < 7; ++i) {
        labels[i] = "u" + std::to_string(i + 1);
        for (std::size_t j = 0; j < h; ++j) {
            const auto w = static_cast<NodeId>(7 + i * h + j);
            labels[w] = "H" + std::to_string(i + 1) + "." + std::to_string(j + 1);
            edges.push_back({static_cast<NodeId>(i), w});
            edges.push_back({w, sink});
        }
    }
    return ComputationDag::build(n, std::move(edges), std::move(labels));
}

ComputationDag gen_fft(int m) {
    if (m < 2 || (m & (m - 1)) != 0)
        throw ParamError("fft needs m to be a power of two, m >= 2");
    const auto mm = static_cast<std::size_t>(m);
    std::size_t levels = 0;
    while ((std::size_t{1} << levels) < mm) ++levels;  // log2(m)
    const std::size_t n = mm * (levels + 1);
    std::vector<Edge> edges;
    for (std::size_t l = 0; l < levels; ++l) {
        for (std::size_t j = 0; j < mm; ++j) {
            const auto from = static_cast<NodeId>(l * mm + j);
            edges.push_back({from, static_cast<NodeId>((l + 1) * mm + j)});
            edges.push_back({from, static_cast<NodeId>((l + 1) * mm + (j ^ (std::size_t{1} << l)))});
        }
    }
    return ComputationDag::build(n, std::move(edges));
}

ComputationDag gen_matmul(int m1, int m2, int m3) {
    if (m1 < 1 || m2 < 1 || m3 < 1) throw ParamError("matmul needs all dimensions >= 1");
    const auto a_count = static_cast<std::size_t>(m1) * static_cast<std::size_t>(m2);
    const auto b_count = static_cast<std::size_t>(m2) * static_cast<std::size_t>(m3);
    const auto p_count = a_count * static_cast<std::size_t>(m3);
    const auto c_count = static_cast<std::size_t>(m1) * static_cast<std::size_t>(m3);
    const std::size_t b0 = a_count, p0 = a_count + b_count, c0 = p0 + p_count;
    const std::size_t n = c0 + c_count;
    std::vector<Edge> edges;
    auto a_id = [&](int i, int j) { return static_cast<NodeId>(i * m2 + j); };
    auto b_id = [&](int j, int k) { return static_cast<NodeId>(b0 + static_cast<std::size_t>(j) * m3 + k); };
    auto p_id = [&](int i, int j, int k) {
        return static_cast<NodeId>(p0 + (static_cast<std::size_t>(i) * m2 + j) * m3 + k);
    };
    auto c_id = [&](int i, int k) { return static_cast<NodeId>(c0 + static_cast<std::size_t>(i) * m3 + k); };
    for (int i = 0; i < m1; ++i)
        for (int j = 0; j < m2; ++j)
            for (int k = 0; k < m3; ++k) {
                edges.push_back({a_id(i, j), p_id(i, j, k)});
                edges.push_back({b_id(j, k), p_id(i, j, k)});
                edges.push_back({p_id(i, j, k), c_id(i, k)});
            }
    return ComputationDag::build(n, std::move(edges));
}

ComputationDag gen_attention(int m, int d) {
    if (m < 1 || d < 1) throw ParamError("attention needs m >= 1 and d >= 1");
    const auto q_count = static_cast<std::size_t>(m) * static_cast<std::size_t>(d);
    const auto prod_count = static_cast<std::size_t>(m) * m * d;
    const auto root_count = static_cast<std::size_t>(m) * m;
    const std::size_t k0 = q_count, p0 = 2 * q_count, r0 = p0 + prod_count,
                      e0 = r0 + root_count;
    const std::size_t n = e0 + root_count;
    std::vector<Edge> edges;
    auto q_id = [&](int i, int t) { return static_cast<NodeId>(static_cast<std::size_t>(i) * d + t); };
    auto k_id = [&](int j, int t) { return static_cast<NodeId>(k0 + static_cast<std::size_t>(j) * d + t); };
    auto p_id = [&](int i, int j, int t) {
        return static_cast<NodeId>(p0 + (static_cast<std::size_t>(i) * m + j) * d + t);
    };
    auto r_id = [&](int i, int j) { return static_cast<NodeId>(r0 + static_cast<std::size_t>(i) * m + j); };
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            for (int t = 0; t < d; ++t) {
                edges.push_back({q_id(i, t), p_id(i, j, t)});
                edges.push_back({k_id(j, t), p_id(i, j, t)});
                edges.push_back({p_id(i, j, t), r_id(i, j)});
            }
            edges.push_back({r_id(i, j), static_cast<NodeId>(e0 + static_cast<std::size_t>(i) * m + j)});
        }
    return ComputationDag::build(n, std::move(edges));
}

UndirectedGraph UndirectedGraph::build(std::size_t node_count,
                                       std::vector<std::pair<NodeId, NodeId>> edges) {
    for (auto& [u, v] : edges) {
        if (u >= node_count || v >= node_count)
            throw NotSimpleGraph("edge endpoint out of range");
        if (u == v) throw NotSimpleGraph("self loop");
        if (u > v) std::swap(u, v);
    }
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
        throw NotSimpleGraph("duplicate edge");
    return UndirectedGraph{node_count, std::move(edges)};
}

std::vector<std::vector<NodeId>> UndirectedGraph::adjacency() const {
    std::vector<std::vector<NodeId>> adj(node_count);
    for (auto [u, v] : edges) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    return adj;
}

ReductionDag gen_maxinset_reduction(const UndirectedGraph& g0, NodeId v0, int b) {
    const auto n0 = static_cast<long long>(g0.node_count);
    if (n0 < 1) throw ParamError("reduction needs a nonempty graph");
    if (v0 >= g0.node_count) throw ParamError("v0 out of range");
    if (b <= 3) throw ParamError("reduction needs b > 3");

    const long long e0 = static_cast<long long>(g0.edges.size());
    const int r = b + static_cast<int>(4 * n0) + 5;
    const int gs = r - 2;  // = b + 4*n0 + 3, the group size
    assert(r > b + 7);     // holds for every n0 >= 1; required downstream
    // Smallest ell0 with ell0 / (2(r-2)) - (r-1) > n0*b + 2*e0 + 6.
    const long long gap = n0 * b + 2 * e0 + 6;
    const long long ell0 = 2LL * (r - 2) * (gap + (r - 1)) + 1;
    const long long ell = 2 * ell0 + n0 + (r - 2);

    // Group slot layout (1-based): [1, b] merged, (b, b+3n0] anchors,
    // (b+3n0, b+4n0] cross slots, the final three are the Z slots.
    const int anchors_beg = b, anchors_end = b + static_cast<int>(3 * n0);
    const int cross_beg = anchors_end, cross_end = b + static_cast<int>(4 * n0);

    const auto adj = g0.adjacency();

    ReductionDag out;
    ReductionMeta& meta = out.meta;
    meta.r = r;
    meta.group_size = gs;
    meta.ell0 = ell0;
    meta.ell = ell;

    std::vector<Edge> edges;
    std::vector<ReductionRole> roles;
    std::vector<std::string> role_labels;
    auto new_node = [&](ReductionRole role, std::string label) {
        roles.push_back(role);
        role_labels.push_back(std::move(label));
        return static_cast<NodeId>(roles.size() - 1);
    };

    // Group member ids, per g0 node: members[u][0] = H1(u), members[u][1] = H2(u).
    // Cross slots of H2 groups are filled later with partner chain nodes.
    constexpr NodeId kUnset = ~NodeId{0};
    std::vector<std::array<std::vector<NodeId>, 2>> members(g0.node_count);

    for (NodeId u = 0; u < g0.node_count; ++u) {
        const std::string pu = "u" + std::to_string(u);
        members[u][0].assign(static_cast<std::size_t>(gs), kUnset);
        members[u][1].assign(static_cast<std::size_t>(gs), kUnset);
        for (int s = 0; s < gs; ++s) {
            ReductionRole role;
            std::string what;
            if (s < b) {
                role = ReductionRole::MergedSource;
                what = "merged";
            } else if (s < anchors_end) {
                role = ReductionRole::AnchorSource;
                what = "anchor";
            } else if (s < cross_end) {
                role = ReductionRole::CrossSource;
                what = "cross";
            } else {
                role = ReductionRole::ZSource;
                what = "z";
            }
            if (s < b) {
                NodeId id = new_node(role, pu + ".shared." + what + std::to_string(s + 1));
                members[u][0][static_cast<std::size_t>(s)] = id;
                members[u][1][static_cast<std::size_t>(s)] = id;
            } else {
                members[u][0][static_cast<std::size_t>(s)] =
                    new_node(role, pu + ".H1." + what + std::to_string(s + 1));
                if (role == ReductionRole::CrossSource) {
                    // H2 cross slots host partner chain nodes when used; the
                    // id is assigned after the chains exist.
                    continue;
                }
                members[u][1][static_cast<std::size_t>(s)] =
                    new_node(role, pu + ".H2." + what + std::to_string(s + 1));
            }
        }
    }

    // Chains. chain[u][g][i] is the i-th (0-based) chain node of Hg+1(u).
    std::vector<std::array<std::vector<NodeId>, 2>> chain(g0.node_count);
    for (NodeId u = 0; u < g0.node_count; ++u)
        for (int g = 0; g < 2; ++g) {
            chain[u][static_cast<std::size_t>(g)].reserve(static_cast<std::size_t>(ell));
            const std::string p =
                "u" + std::to_string(u) + ".H" + std::to_string(g + 1) + ".c";
            for (long long i = 0; i < ell; ++i)
                chain[u][static_cast<std::size_t>(g)].push_back(new_node(
                    ReductionRole::ChainNode, p + std::to_string(i + 1)));
        }

    // Cross wiring: the j-th middle chain node of H1(u) (middle part starts
    // after the initial r-2 nodes and the first long part) stands in for a
    // cross slot of H2(x), where x is u's j-th neighbor in ascending order.
    const long long middle_base = (r - 2) + ell0;  // 0-based index of middle part
    for (NodeId u = 0; u < g0.node_count; ++u) {
        int j = 0;
        for (NodeId x : adj[u]) {
            const NodeId mid = chain[u][0][static_cast<std::size_t>(middle_base + j)];
            roles[mid] = ReductionRole::MiddleChainNode;
            role_labels[mid] += "(slot of u" + std::to_string(x) + ".H2)";
            // x's cross slots are consumed in ascending order of the
            // neighbor id u that provides the stand-in node.
            int slot = cross_beg;
            while (members[x][1][static_cast<std::size_t>(slot)] != kUnset) ++slot;
            assert(slot < cross_end);
            members[x][1][static_cast<std::size_t>(slot)] = mid;
            ++j;
        }
    }
    // Unused cross slots of H2 groups become plain sources.
    for (NodeId u = 0; u < g0.node_count; ++u)
        for (int s = cross_beg; s < cross_end; ++s)
            if (members[u][1][static_cast<std::size_t>(s)] == kUnset)
                members[u][1][static_cast<std::size_t>(s)] = new_node(
                    ReductionRole::CrossSource,
                    "u" + std::to_string(u) + ".H2.cross" + std::to_string(s + 1));

    // Chain edges: node i reads node i-1 and the group member (i-1) mod gs.
    for (NodeId u = 0; u < g0.node_count; ++u)
        for (int g = 0; g < 2; ++g) {
            const auto& ch = chain[u][static_cast<std::size_t>(g)];
            const auto& mem = members[u][static_cast<std::size_t>(g)];
            for (long long i = 0; i < ell; ++i) {
                if (i > 0) edges.push_back({ch[static_cast<std::size_t>(i - 1)], ch[static_cast<std::size_t>(i)]});
                edges.push_back({mem[static_cast<std::size_t>(i % gs)], ch[static_cast<std::size_t>(i)]});
            }
        }

    // Extra sink w fed by the Z slots of H1(v0) and H2(v0).
    const NodeId w = new_node(ReductionRole::ExtraSink, "w");
    meta.extra_sink = w;
    for (int s = cross_end; s < gs; ++s) {
        meta.z1.push_back(members[v0][0][static_cast<std::size_t>(s)]);
        meta.z2.push_back(members[v0][1][static_cast<std::size_t>(s)]);
    }
    for (NodeId z : meta.z1) edges.push_back({z, w});
    for (NodeId z : meta.z2) edges.push_back({z, w});

    meta.role_labels = role_labels;
    out.dag = ComputationDag::build(roles.size(), std::move(edges), std::move(role_labels));
    meta.roles = std::move(roles);
    return out;
}

}  // namespace pebble
