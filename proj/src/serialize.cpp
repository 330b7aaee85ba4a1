#include "pebble/serialize.hpp"

#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace pebble {

using Json = nlohmann::ordered_json;

namespace {

Json parse(const std::string& text) {
    Json j = Json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ParseError("malformed JSON");
    return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json move_to_json_obj(const Move& m) {
    Json o;
    switch (m.op) {
        case Move::Op::Save: o["op"] = "save"; o["v"] = m.v; break;
        case Move::Op::Load: o["op"] = "load"; o["v"] = m.v; break;
        case Move::Op::Compute: o["op"] = "compute"; o["v"] = m.v; break;
        case Move::Op::Slide: o["op"] = "slide"; o["u"] = m.u; o["v"] = m.v; break;
        case Move::Op::PartialCompute:
            o["op"] = "pcompute"; o["u"] = m.u; o["v"] = m.v; break;
        case Move::Op::Delete: o["op"] = "delete"; o["v"] = m.v; break;
        case Move::Op::Clear: o["op"] = "clear"; o["v"] = m.v; break;
    }
    return o;
}

Move move_from_json_obj(const Json& o) {
    if (!o.is_object() || !o.contains("op"))
        throw ParseError("move record must be an object with an \"op\" field");
    const std::string op = o.at("op").get<std::string>();
    auto node = [&](const char* key) -> NodeId {
        if (!o.contains(key)) throw ParseError("move \"" + op + "\" needs field " + key);
        return o.at(key).get<NodeId>();
    };
    if (op == "save") return Move::save(node("v"));
    if (op == "load") return Move::load(node("v"));
    if (op == "compute") return Move::compute(node("v"));
    if (op == "slide") return Move::slide(node("u"), node("v"));
    if (op == "pcompute") return Move::pcompute(node("u"), node("v"));
    if (op == "delete") return Move::del(node("v"));
    if (op == "clear") return Move::clear(node("v"));
    throw ParseError("unknown move op \"" + op + "\"");
}

Json moves_array(const std::vector<Move>& moves) {
    Json a = Json::array();
    for (const Move& m : moves) a.push_back(move_to_json_obj(m));
    return a;
}

std::vector<Move> moves_from_array(const Json& a) {
    if (!a.is_array()) throw ParseError("expected an array of move records");
    std::vector<Move> moves;
    for (const Json& o : a) moves.push_back(move_from_json_obj(o));
    return moves;
}

}  // namespace

std::string dag_to_json(const ComputationDag& dag) {
    Json j;
    j["n"] = dag.node_count();
    Json edges = Json::array();
    for (auto [u, v] : dag.edges()) edges.push_back(Json::array({u, v}));
    j["edges"] = std::move(edges);
    if (dag.has_labels()) j["labels"] = dag.labels();
    return dump(j);
}

ComputationDag dag_from_json(const std::string& text) {
    Json j = parse(text);
    if (!j.is_object() || !j.contains("n") || !j.contains("edges"))
        throw ParseError("DAG file needs fields \"n\" and \"edges\"");
    std::vector<Edge> edges;
    for (const Json& e : j.at("edges")) {
        if (!e.is_array() || e.size() != 2) throw ParseError("edges must be [u, v] pairs");
        edges.push_back({e[0].get<NodeId>(), e[1].get<NodeId>()});
    }
    std::vector<std::string> labels;
    if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
    try {
        return ComputationDag::build(j.at("n").get<std::size_t>(), std::move(edges),
                                     std::move(labels));
    } catch (const DagError& e) {
        throw ParseError(std::string("invalid DAG: ") + e.what());
    }
}

std::string dag_to_dot(const ComputationDag& dag) {
    std::ostringstream out;
    out << "digraph dag {\n";
    if (dag.has_labels())
        for (NodeId v = 0; v < dag.node_count(); ++v)
            out << "  " << v << " [label=\"" << dag.label(v) << "\"];\n";
    for (auto [u, v] : dag.edges()) out << "  " << u << " -> " << v << ";\n";
    out << "}\n";
    return out.str();
}

std::string moves_to_json(const std::vector<Move>& moves) {
    return dump(moves_array(moves));
}

std::vector<Move> moves_from_json(const std::string& text) {
    return moves_from_array(parse(text));
}

std::string named_schedule_to_json(const NamedSchedule& named) {
    Json j;
    j["name"] = named.name;
    j["game"] = named.schedule.config.kind == GameKind::Rbp ? "rbp" : "prbp";
    j["r"] = named.schedule.config.capacity;
    j["claimed_cost"] = named.claimed_cost;
    j["claim_source"] = named.claim_source;
    j["moves"] = moves_array(named.schedule.moves);
    return dump(j);
}

ParsedSchedule schedule_from_json(const std::string& text) {
    Json j = parse(text);
    ParsedSchedule out;
    if (j.is_array()) {
        out.schedule.moves = moves_from_array(j);
        return out;
    }
    if (!j.is_object() || !j.contains("moves"))
        throw ParseError("schedule file must be a move array or an object with \"moves\"");
    out.schedule.moves = moves_from_array(j.at("moves"));
    if (j.contains("game")) {
        const std::string game = j.at("game").get<std::string>();
        if (game != "rbp" && game != "prbp") throw ParseError("unknown game \"" + game + "\"");
        out.schedule.config.kind = game == "rbp" ? GameKind::Rbp : GameKind::Prbp;
        out.has_config = true;
    }
    if (j.contains("r")) {
        out.schedule.config.capacity = j.at("r").get<int>();
        out.has_config = true;
    }
    return out;
}

std::string cost_report_to_json(const CostReport& report) {
    Json j;
    j["io_cost"] = report.io_cost;
    j["compute_cost"] = Json{{"num", report.compute_cost.num}, {"den", report.compute_cost.den}};
    j["peak_red"] = report.peak_red;
    j["valid"] = report.valid;
    j["terminal"] = report.terminal;
    if (report.first_error) {
        j["first_error"] =
            Json{{"index", report.first_error->move_index}, {"reason", report.first_error->reason}};
    } else {
        j["first_error"] = nullptr;
    }
    return dump(j);
}

std::string node_partition_to_json(const NodePartition& p) {
    Json j;
    j["kind"] = "nodes";
    Json classes = Json::array();
    for (const auto& cl : p.classes) classes.push_back(cl);
    j["classes"] = std::move(classes);
    return dump(j);
}

std::string edge_partition_to_json(const EdgePartition& p) {
    Json j;
    j["kind"] = "edges";
    Json classes = Json::array();
    for (const auto& cl : p.classes) {
        Json c = Json::array();
        for (const Edge& e : cl) c.push_back(Json::array({e.first, e.second}));
        classes.push_back(std::move(c));
    }
    j["classes"] = std::move(classes);
    return dump(j);
}

NodePartition node_partition_from_json(const std::string& text) {
    Json j = parse(text);
    if (!j.is_object() || j.value("kind", "") != "nodes" || !j.contains("classes"))
        throw ParseError("expected a node partition object");
    NodePartition p;
    for (const Json& cl : j.at("classes")) p.classes.push_back(cl.get<std::vector<NodeId>>());
    return p;
}

EdgePartition edge_partition_from_json(const std::string& text) {
    Json j = parse(text);
    if (!j.is_object() || j.value("kind", "") != "edges" || !j.contains("classes"))
        throw ParseError("expected an edge partition object");
    EdgePartition p;
    for (const Json& cl : j.at("classes")) {
        std::vector<Edge> edges;
        for (const Json& e : cl) edges.push_back({e[0].get<NodeId>(), e[1].get<NodeId>()});
        p.classes.push_back(std::move(edges));
    }
    return p;
}

std::string solve_result_to_json(const SolveResult& result) {
    Json j;
    switch (result.status) {
        case SolveStatus::Optimal: j["status"] = "optimal"; break;
        case SolveStatus::BudgetExhausted: j["status"] = "budget_exhausted"; break;
        case SolveStatus::Infeasible: j["status"] = "infeasible"; break;
    }
    if (result.opt_cost) j["opt_cost"] = *result.opt_cost; else j["opt_cost"] = nullptr;
    j["states_expanded"] = result.states_expanded;
    return dump(j);
}

UndirectedGraph undirected_from_text(const std::string& text) {
    std::istringstream in(text);
    std::size_t n = 0, m = 0;
    if (!(in >> n >> m)) throw ParseError("undirected graph header must be \"n m\"");
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (std::size_t i = 0; i < m; ++i) {
        NodeId u, v;
        if (!(in >> u >> v)) throw ParseError("expected " + std::to_string(m) + " edge lines");
        edges.push_back({u, v});
    }
    try {
        return UndirectedGraph::build(n, std::move(edges));
    } catch (const NotSimpleGraph& e) {
        throw ParseError(std::string("invalid graph: ") + e.what());
    }
}

std::string undirected_to_text(const UndirectedGraph& g) {
    std::ostringstream out;
    out << g.node_count << ' ' << g.edges.size() << '\n';
    for (auto [u, v] : g.edges) out << u << ' ' << v << '\n';
    return out.str();
}

std::string content_digest(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

}  // namespace pebble
