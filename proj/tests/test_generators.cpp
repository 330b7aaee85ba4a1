#include <doctest.h>

#include <algorithm>
#include <set>

#include "pebble/generators.hpp"

using namespace pebble;

TEST_CASE("figure1 without endpoints") {
    auto dag = gen_figure1(false);
    CHECK(dag.node_count() == 8);
    CHECK(dag.edge_count() == 10);
    CHECK(dag.sources() == std::vector<NodeId>{0, 1});  // the interface pair
    CHECK(dag.sinks() == std::vector<NodeId>{6, 7});
}

TEST_CASE("figure1 chain") {
    // One copy is exactly the endpointed gadget.
    auto one = gen_figure1_chain(1);
    auto fig1 = gen_figure1(true);
    CHECK(one.node_count() == fig1.node_count());
    CHECK(one.edges() == fig1.edges());

    auto three = gen_figure1_chain(3);
    CHECK(three.node_count() == 22);  // 6g + 4
    CHECK(three.edge_count() == 34);  // 10g + 4
    CHECK(three.sources() == std::vector<NodeId>{0});
    CHECK(three.sinks() == std::vector<NodeId>{21});
    CHECK(three.stats().max_in_degree == 2);
    CHECK(three.stats().max_out_degree == 3);

    CHECK_THROWS_AS(gen_figure1_chain(0), ParamError);
}

TEST_CASE("matvec counts") {
    auto m3 = gen_matvec(3);
    auto st = m3.stats();
    CHECK(st.source_count == 12);
    CHECK(st.node_count == 24);
    CHECK(st.sink_count == 3);
    CHECK(st.trivial_cost == 15);
    for (NodeId v : m3.sinks()) CHECK(m3.in_degree(v) == 3);

    auto m1 = gen_matvec(1);
    CHECK(m1.stats().source_count == 2);
    CHECK(m1.node_count() == 4);

    CHECK(gen_matvec(2).stats().max_in_degree == 2);
    CHECK_THROWS_AS(gen_matvec(0), ParamError);
}

TEST_CASE("zipper shape") {
    auto z = gen_zipper(3, 4);
    CHECK(z.node_count() == 10);  // 2d sources + chain
    CHECK(z.stats().source_count == 6);
    CHECK(z.stats().max_in_degree == 4);  // previous chain node + one group

    // Chain node 1 reads group 1, chain node 2 reads group 0 and node 1.
    auto first = z.in_neighbors(6);
    CHECK(std::vector<NodeId>(first.begin(), first.end()) == std::vector<NodeId>{3, 4, 5});
    auto second = z.in_neighbors(7);
    CHECK(std::vector<NodeId>(second.begin(), second.end()) ==
          std::vector<NodeId>{0, 1, 2, 6});

    // Single-node chain: the untouched group would be isolated, so it is
    // omitted; one group of d sources plus the chain node remain.
    auto tiny = gen_zipper(1, 1);
    CHECK(tiny.node_count() == 2);
    CHECK(tiny.stats().source_count == 1);

    CHECK_THROWS_AS(gen_zipper(0, 3), ParamError);
}

TEST_CASE("k-ary trees") {
    auto t23 = gen_kary_tree(2, 3);
    CHECK(t23.node_count() == 15);
    CHECK(t23.stats().source_count == 8);
    CHECK(t23.stats().trivial_cost == 9);
    CHECK(t23.sinks() == std::vector<NodeId>{0});

    CHECK(gen_kary_tree(2, 1).node_count() == 3);

    auto t32 = gen_kary_tree(3, 2);
    CHECK(t32.node_count() == 13);
    CHECK(t32.stats().source_count == 9);

    CHECK_THROWS_AS(gen_kary_tree(1, 3), ParamError);
}

TEST_CASE("pebble collector wiring") {
    auto c = gen_pebble_collector(3, 6);
    CHECK(c.stats().source_count == 3);
    for (NodeId s = 0; s < 3; ++s) CHECK(c.out_degree(s) == 2);  // periodic reuse

    auto ladder = gen_pebble_collector(1, 2);
    CHECK(ladder.node_count() == 3);

    auto acc = gen_pebble_collector(2, 8);
    CHECK(acc.node_count() == 10);
    CHECK(acc.stats().trivial_cost == 3);
    CHECK(acc.stats().max_in_degree == 2);

    CHECK_THROWS_AS(gen_pebble_collector(0, 1), ParamError);
}

TEST_CASE("seven-group counterexample") {
    auto h3 = gen_spart_counterexample(3);
    CHECK(h3.node_count() == 29);  // 7h + 8
    CHECK(h3.stats().trivial_cost == 8);
    CHECK(gen_spart_counterexample(1).node_count() == 15);
    auto h2 = gen_spart_counterexample(2);
    CHECK(h2.stats().source_count == 7);
    CHECK(h2.stats().sink_count == 1);
    CHECK(h2.stats().max_in_degree == 14);  // the sink reads every middle node
}

TEST_CASE("fft butterflies") {
    auto f8 = gen_fft(8);
    CHECK(f8.node_count() == 32);  // four layers of eight
    CHECK(f8.stats().source_count == 8);
    CHECK(f8.stats().sink_count == 8);
    CHECK(f8.edge_count() == 48);

    auto f2 = gen_fft(2);
    CHECK(f2.node_count() == 4);
    CHECK(f2.edge_count() == 4);  // complete bipartite on two columns

    auto f4 = gen_fft(4);
    for (NodeId v = 4; v < 12; ++v) CHECK(f4.in_degree(v) == 2);

    CHECK_THROWS_AS(gen_fft(3), ParamError);
    CHECK_THROWS_AS(gen_fft(0), ParamError);
}

TEST_CASE("fft recursion consistency") {
    // The first log2(m) layers are two disjoint copies of the half-size
    // butterfly, on columns [0, m/2) and [m/2, m).
    const int m = 8;
    auto big = gen_fft(m);
    auto half = gen_fft(m / 2);
    std::set<Edge> expect;
    for (auto [u, v] : half.edges()) {
        const NodeId lu = u % (m / 2), lv = v % (m / 2);
        const NodeId layer_u = u / (m / 2), layer_v = v / (m / 2);
        for (int copy = 0; copy < 2; ++copy) {
            const NodeId off = static_cast<NodeId>(copy * (m / 2));
            expect.insert({layer_u * m + lu + off, layer_v * m + lv + off});
        }
    }
    std::set<Edge> got;
    for (auto [u, v] : big.edges())
        if (v < static_cast<NodeId>(m * 3)) got.insert({u, v});  // below the top layer
    CHECK(got == expect);
}

TEST_CASE("matmul counts and matvec correspondence") {
    auto tiny = gen_matmul(1, 1, 1);
    CHECK(tiny.node_count() == 4);
    CHECK(tiny.stats().source_count == 2);
    CHECK(tiny.stats().sink_count == 1);

    auto mm = gen_matmul(2, 3, 2);
    CHECK(mm.stats().source_count == 12);
    CHECK(mm.node_count() == 12 + 12 + 4);
    for (NodeId v : mm.sinks()) CHECK(mm.in_degree(v) == 3);

    // (2 x 2) * (2 x 1) is the m = 2 matrix-vector product up to renaming:
    // A_(i,j) -> A, B_(j,1) -> x, products and sinks in matching order.
    auto mv = gen_matvec(2);
    auto m221 = gen_matmul(2, 2, 1);
    REQUIRE(mv.node_count() == m221.node_count());
    // matvec ids: x_i = i; A_(j,i) = 2 + 2j + i; p_(j,i) = 6 + 2j + i; y_j = 10 + j.
    // matmul ids: A_(i,j) = 2i + j; B_(j,0) = 4 + j; P_(i,j,0) = 6 + 2i + j; C_(i,0) = 10 + i.
    auto map_mv_to_mm = [](NodeId v) -> NodeId {
        if (v < 2) return static_cast<NodeId>(4 + v);          // x_i -> B_(i,0)
        if (v < 6) {                                           // A_(j,i) -> A_(j,i)
            const NodeId j = (v - 2) / 2, i = (v - 2) % 2;
            return static_cast<NodeId>(2 * j + i);
        }
        return v;  // products and sinks line up positionally
    };
    std::set<Edge> mapped;
    for (auto [u, v] : mv.edges()) mapped.insert({map_mv_to_mm(u), map_mv_to_mm(v)});
    std::set<Edge> target(m221.edges().begin(), m221.edges().end());
    CHECK(mapped == target);
}

TEST_CASE("attention counts and disjoint trees") {
    auto tiny = gen_attention(1, 1);
    CHECK(tiny.node_count() == 4);  // q, k, product, root, exp? q+k = 2 sources

    auto a22 = gen_attention(2, 2);
    auto st = a22.stats();
    CHECK(st.source_count == 8);
    CHECK(st.sink_count == 4);
    CHECK(a22.node_count() == 24);
    // Roots have in-degree d and exactly one outgoing edge.
    for (NodeId v = 16; v < 20; ++v) {
        CHECK(a22.in_degree(v) == 2);
        CHECK(a22.out_degree(v) == 1);
    }
    // Internal products belong to exactly one root each.
    for (NodeId v = 8; v < 16; ++v) CHECK(a22.out_degree(v) == 1);
}

TEST_CASE("reduction instance structure") {
    auto single = UndirectedGraph::build(1, {});
    auto red1 = gen_maxinset_reduction(single, 0, 4);
    CHECK(red1.meta.r == 13);        // b + 4*n0 + 5
    CHECK(red1.meta.group_size == 11);

    auto edge = UndirectedGraph::build(2, {{0, 1}});
    auto red = gen_maxinset_reduction(edge, 0, 4);
    CHECK(red.meta.r == 17);
    CHECK(red.meta.group_size == 15);
    CHECK(red.meta.ell0 == 961);
    CHECK(red.meta.ell == 2 * 961 + 2 + 15);

    // The gap inequality holds strictly and fails for ell0 - 1.
    const long long r = red.meta.r, e0 = 1, n0 = 2, b = 4;
    const long long rhs = n0 * b + 2 * e0 + 6;
    CHECK(red.meta.ell0 > 2 * (r - 2) * (rhs + r - 1));
    CHECK_FALSE(red.meta.ell0 - 1 > 2 * (r - 2) * (rhs + r - 1));

    // The extra sink reads three nodes from each designated group.
    CHECK(red.dag.in_degree(red.meta.extra_sink) == 6);
    CHECK(red.meta.z1.size() == 3);
    CHECK(red.meta.z2.size() == 3);

    // Structural audit: two chains per g0 node, each of length ell; chain
    // node i reads group slot (i-1) mod gs and its predecessor.
    long long chain_nodes = 0;
    for (auto role : red.meta.roles)
        chain_nodes += role == ReductionRole::ChainNode || role == ReductionRole::MiddleChainNode;
    CHECK(chain_nodes == 2 * n0 * red.meta.ell);

    // One middle chain node of each gadget side stands in for the partner
    // group of the single g0 edge.
    long long middles = 0;
    for (auto role : red.meta.roles) middles += role == ReductionRole::MiddleChainNode;
    CHECK(middles == 2 * e0);

    // Merged sources are shared: b per g0 node.
    long long merged = 0;
    for (auto role : red.meta.roles) merged += role == ReductionRole::MergedSource;
    CHECK(merged == n0 * b);

    CHECK_THROWS_AS(gen_maxinset_reduction(edge, 5, 4), ParamError);
    CHECK_THROWS_AS(gen_maxinset_reduction(edge, 0, 3), ParamError);
}

TEST_CASE("reduction node count matches the closed form") {
    // n = n0 * (2*gs - b + 2*ell) - 2*|E0| + 1
    for (auto [n0, edges, b] : std::vector<std::tuple<int, std::vector<std::pair<NodeId, NodeId>>, int>>{
             {1, {}, 4},
             {2, {{0, 1}}, 4},
             {3, {{0, 1}, {1, 2}}, 5},
         }) {
        auto g0 = UndirectedGraph::build(static_cast<std::size_t>(n0), edges);
        auto red = gen_maxinset_reduction(g0, 0, b);
        const long long gs = red.meta.group_size;
        const long long expect =
            n0 * (2 * gs - b + 2 * red.meta.ell) - 2 * static_cast<long long>(edges.size()) + 1;
        CHECK(static_cast<long long>(red.dag.node_count()) == expect);
    }
}
