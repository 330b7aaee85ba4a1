#include <doctest.h>

#include <random>
#include <set>
#include <functional>

#include "pebble/dag.hpp"
#include "pebble/generators.hpp"
#include "support.hpp"

using namespace pebble;

namespace {

// Exhaustive path oracle for reachable_avoiding: recursive enumeration of
// directed paths from sources, independent of the BFS in the library.
bool path_exists_oracle(const ComputationDag& dag, const std::vector<NodeId>& targets,
                        const std::vector<NodeId>& blocked) {
    std::set<NodeId> blocked_set(blocked.begin(), blocked.end());
    std::set<NodeId> target_set(targets.begin(), targets.end());
    std::vector<NodeId> stack;
    std::function<bool(NodeId)> walk = [&](NodeId v) -> bool {
        if (blocked_set.count(v)) return false;
        if (target_set.count(v)) return true;
        for (NodeId w : dag.out_neighbors(v))
            if (walk(w)) return true;
        return false;
    };
    for (NodeId s : dag.sources())
        if (walk(s)) return true;
    return false;
}

}  // namespace

TEST_CASE("minimal chain builds with the expected stats") {
    auto dag = ComputationDag::build(2, {{0, 1}});
    auto st = dag.stats();
    CHECK(st.source_count == 1);
    CHECK(st.sink_count == 1);
    CHECK(st.trivial_cost == 2);
    CHECK(st.edge_count == 1);
}

TEST_CASE("figure1 DAG endpoints and counts") {
    auto dag = gen_figure1(true);
    CHECK(dag.node_count() == 10);
    CHECK(dag.edge_count() == 14);
    auto st = dag.stats();
    CHECK(dag.sources() == std::vector<NodeId>{0});
    CHECK(dag.sinks() == std::vector<NodeId>{9});
    CHECK(st.trivial_cost == 2);
    CHECK(st.max_in_degree == 2);   // every join reads exactly two values
    CHECK(st.max_out_degree == 3);  // u1 feeds w1, w2 and w4
}

TEST_CASE("build rejections") {
    CHECK_THROWS_AS(ComputationDag::build(2, {{0, 1}, {1, 0}}), DagError);
    CHECK_THROWS_AS(ComputationDag::build(2, {{0, 0}}), DagError);
    CHECK_THROWS_AS(ComputationDag::build(2, {{0, 1}, {0, 1}}), DagError);
    CHECK_THROWS_AS(ComputationDag::build(3, {{0, 1}}), DagError);  // node 2 isolated
    CHECK_THROWS_AS(ComputationDag::build(2, {{0, 5}}), DagError);
    CHECK_THROWS_AS(ComputationDag::build((std::size_t{1} << 22) + 1, {}), DagError);

    try {
        ComputationDag::build(2, {{0, 1}, {1, 0}});
    } catch (const DagError& e) {
        CHECK(e.kind() == DagErrorKind::CycleDetected);
    }
}

TEST_CASE("stats on the named instances") {
    CHECK(gen_spart_counterexample(3).stats().trivial_cost == 8);
    CHECK(gen_matvec(3).stats().trivial_cost == 15);  // m^2 + 2m
    CHECK(ComputationDag::build(2, {{0, 1}}).stats().trivial_cost == 2);
}

TEST_CASE("topological order respects edges") {
    auto chain = ComputationDag::build(3, {{0, 1}, {1, 2}});
    CHECK(chain.topological_order() == std::vector<NodeId>{0, 1, 2});

    auto fig1 = gen_figure1(true);
    auto order = fig1.topological_order();
    CHECK(order.front() == 0);
    CHECK(order.back() == 9);
    std::vector<std::size_t> pos(fig1.node_count());
    for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = i;
    for (auto [u, v] : fig1.edges()) CHECK(pos[u] < pos[v]);

    // Two independent sources joined on one sink: both orders are fine, the
    // implementation breaks ties by ascending id.
    auto join = ComputationDag::build(3, {{0, 2}, {1, 2}});
    CHECK(join.topological_order() == std::vector<NodeId>{0, 1, 2});
}

TEST_CASE("topological order is a valid permutation on every family") {
    std::vector<ComputationDag> dags;
    dags.push_back(gen_figure1(true));
    dags.push_back(gen_figure1(false));
    dags.push_back(gen_figure1_chain(3));
    dags.push_back(gen_matvec(2));
    dags.push_back(gen_zipper(3, 4));
    dags.push_back(gen_kary_tree(2, 3));
    dags.push_back(gen_pebble_collector(2, 8));
    dags.push_back(gen_spart_counterexample(2));
    dags.push_back(gen_fft(8));
    dags.push_back(gen_matmul(2, 3, 2));
    dags.push_back(gen_attention(2, 2));
    for (const auto& dag : dags) {
        auto order = dag.topological_order();
        REQUIRE(order.size() == dag.node_count());
        std::vector<char> seen(dag.node_count(), 0);
        std::vector<std::size_t> pos(dag.node_count());
        for (std::size_t i = 0; i < order.size(); ++i) {
            CHECK(!seen[order[i]]);
            seen[order[i]] = 1;
            pos[order[i]] = i;
        }
        for (auto [u, v] : dag.edges()) CHECK(pos[u] < pos[v]);
    }
}

TEST_CASE("reachable_avoiding basics") {
    auto chain = ComputationDag::build(3, {{0, 1}, {1, 2}});
    NodeId two = 2, one = 1;
    CHECK(!chain.reachable_avoiding({&two, 1}, {&one, 1}));
    CHECK(chain.reachable_avoiding({&two, 1}, {}));

    auto diamond = ComputationDag::build(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}});
    NodeId three = 3;
    CHECK(diamond.reachable_avoiding({&three, 1}, {&one, 1}));  // path through 2
}

TEST_CASE("reachable_avoiding agrees with path enumeration on random DAGs") {
    std::mt19937_64 rng(20250810);
    for (int iter = 0; iter < 150; ++iter) {
        auto dag = testsupport::random_dag(rng, 8, 12);
        std::uniform_int_distribution<NodeId> nd(0, static_cast<NodeId>(dag.node_count() - 1));
        std::vector<NodeId> targets{nd(rng)};
        std::vector<NodeId> blocked;
        for (NodeId v = 0; v < dag.node_count(); ++v)
            if (rng() % 3 == 0) blocked.push_back(v);
        CHECK(dag.reachable_avoiding(targets, blocked) ==
              path_exists_oracle(dag, targets, blocked));
    }
}
