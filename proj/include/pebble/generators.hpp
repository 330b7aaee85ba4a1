#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "pebble/dag.hpp"

namespace pebble {

class ParamError : public std::invalid_argument {
public:
    explicit ParamError(const std::string& what) : std::invalid_argument(what) {}
};

class NotSimpleGraph : public std::invalid_argument {
public:
    explicit NotSimpleGraph(const std::string& what) : std::invalid_argument(what) {}
};

// The 10-node example DAG (u0, u1, u2, w1..w4, v1, v2, v0) on which partial
// computing beats the classic game at r = 4. Node ids follow that listing
// order. Without endpoints, u0/v0 and their four edges are dropped and the
// remaining eight nodes are renumbered.
ComputationDag gen_figure1(bool with_endpoints);

// g serial copies of the 8-node core gadget: v1/v2 of copy i merge into
// u1/u2 of copy i+1; a single source u0 is prepended and a sink v0 appended.
// n = 6g + 4.
ComputationDag gen_figure1_chain(int copies);

// Matrix-vector product A*x = y for an m x m matrix: m^2 + m sources,
// m^2 products of in-degree 2, m sinks of in-degree m.
ComputationDag gen_matvec(int m);

// Two groups of d sources and a chain; chain node i (1-based) reads the
// previous chain node plus every source of group (i mod 2). For
// chain_len == 1 the untouched group is omitted so no node is isolated.
ComputationDag gen_zipper(int d, int chain_len);

// Complete k-ary in-tree of depth d: k^d leaf sources, edges toward the
// root sink, n = (k^(d+1) - 1) / (k - 1).
ComputationDag gen_kary_tree(int k, int depth);

// Pebble collector: d sources and a chain of len nodes; chain node i
// (1-based) reads the previous chain node and source ((i-1) mod d) + 1.
// Sources beyond the chain length are omitted so no node is isolated.
ComputationDag gen_pebble_collector(int d, int chain_len);

// Seven sources u_i, seven groups H_i of `group_size` middle nodes
// (u_i feeds all of H_i), one sink fed by every middle node. n = 7h + 8.
ComputationDag gen_spart_counterexample(int group_size);

// m-point butterfly graph, m a power of two: log2(m)+1 layers of m nodes;
// layer l node j feeds layer l+1 nodes j and j xor 2^l.
ComputationDag gen_fft(int m);

// Standard (m1 x m2) * (m2 x m3) matrix multiplication DAG: both input
// matrices as sources, m1*m2*m3 in-degree-2 products, m1*m3 output sinks of
// in-degree m2.
ComputationDag gen_matmul(int m1, int m2, int m3);

// The Q * K^T portion of self-attention for m x d inputs, truncated after a
// per-entry exponentiation layer: 2md sources, m^2*d products, m^2 roots of
// in-degree d, one exp sink per root.
ComputationDag gen_attention(int m, int d);

struct UndirectedGraph {
    std::size_t node_count = 0;
    std::vector<std::pair<NodeId, NodeId>> edges;  // normalized u < v, sorted

    static UndirectedGraph build(std::size_t node_count,
                                 std::vector<std::pair<NodeId, NodeId>> edges);
    std::vector<std::vector<NodeId>> adjacency() const;
};

// Roles of nodes in the hardness-reduction DAG.
enum class ReductionRole : std::uint8_t {
    MergedSource,    // shared between H1(u) and H2(u)
    AnchorSource,    // belongs to one group only
    CrossSource,     // cross slot that stayed a plain source
    ZSource,         // one of the three tail slots of a group
    ChainNode,
    MiddleChainNode, // chain node standing in for a partner-group slot
    ExtraSink,       // the node w
};

struct ReductionMeta {
    int r = 0;            // b + 4*n0 + 5
    int group_size = 0;   // r - 2
    long long ell0 = 0;   // shortest long-part length satisfying the gap bound
    long long ell = 0;    // full chain length: 2*ell0 + n0 + (r - 2)
    std::vector<ReductionRole> roles;      // per node of the emitted DAG
    std::vector<std::string> role_labels;  // human-readable per-node roles
    NodeId extra_sink = 0;                 // w
    std::vector<NodeId> z1, z2;            // inputs of w
};

struct ReductionDag {
    ComputationDag dag;
    ReductionMeta meta;
};

// The decision-problem reduction instance built from an undirected graph
// g0 with designated vertex v0 and padding parameter b > 3. Two pebble
// collector gadgets per g0 node, chains laid out as initial part (r-2),
// long part ell0, middle part n0, long part ell0; per-g0-edge cross wiring
// plants middle chain nodes into the partner groups.
ReductionDag gen_maxinset_reduction(const UndirectedGraph& g0, NodeId v0, int b);

struct GeneratorInfo {
    std::string family;
    std::map<std::string, long long> parameters;
};

}  // namespace pebble
