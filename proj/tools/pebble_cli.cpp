// Command-line front end: generation, schedule verification, exact solving,
// model comparison, partition tooling, lower bounds and the hardness
// reduction, over stable JSON interchange formats.
//
// Exit codes: 0 success, 1 semantic failure (invalid or non-terminal
// schedule, invalid partition), 2 budget exhausted, 3 infeasible, 4 usage or
// parse errors.

#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pebble/dag.hpp"
#include "pebble/game.hpp"
#include "pebble/generators.hpp"
#include "pebble/partitions.hpp"
#include "pebble/reductions.hpp"
#include "pebble/serialize.hpp"
#include "pebble/solver.hpp"
#include "pebble/strategies.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

using pebble::ComputationDag;
using pebble::GameConfig;
using pebble::GameKind;
using Json = nlohmann::ordered_json;

struct RunLog {
    std::string command;
    std::vector<std::string> argv;
    std::map<std::string, std::string> input_digests;
    std::vector<std::string> outputs;
};

RunLog g_log;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw pebble::ParseError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    std::string text = buf.str();
    g_log.input_digests[path] = pebble::content_digest(text);
    return text;
}

void write_output(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw pebble::ParseError("cannot write " + path);
    out << text;
    g_log.outputs.push_back(path);
}

// Primary output goes to --out when given, to stdout otherwise. The run
// manifest always goes to stderr; its timestamp lives in a separate field so
// the primary outputs stay byte-reproducible.
void emit_primary(const std::optional<std::string>& out_path, const std::string& text) {
    if (out_path)
        write_output(*out_path, text);
    else
        std::cout << text;
}

void emit_manifest() {
    Json j;
    j["command"] = g_log.command;
    j["parameters"] = g_log.argv;
    j["artifact_version"] = kVersion;
    Json digests = Json::object();
    for (const auto& [path, digest] : g_log.input_digests) digests[path] = digest;
    j["input_digests"] = std::move(digests);
    j["outputs"] = g_log.outputs;
    j["timestamp"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(
            std::chrono::system_clock::now().time_since_epoch())
            .count();
    std::cerr << j.dump() << "\n";
}

GameKind parse_game(const std::string& name) {
    if (name == "rbp") return GameKind::Rbp;
    if (name == "prbp") return GameKind::Prbp;
    throw CLI::ValidationError("--game must be rbp or prbp");
}

pebble::Rational parse_rational(const std::string& text) {
    const auto slash = text.find('/');
    if (slash == std::string::npos) return pebble::Rational(std::stoll(text));
    return pebble::Rational(std::stoll(text.substr(0, slash)),
                            std::stoll(text.substr(slash + 1)));
}

int exit_code_for(pebble::SolveStatus status) {
    switch (status) {
        case pebble::SolveStatus::Optimal: return 0;
        case pebble::SolveStatus::BudgetExhausted: return 2;
        case pebble::SolveStatus::Infeasible: return 3;
    }
    return 4;
}

Json stats_to_json(const ComputationDag& dag) {
    const auto st = dag.stats();
    Json j;
    j["n"] = st.node_count;
    j["edge_count"] = st.edge_count;
    j["max_in_degree"] = st.max_in_degree;
    j["max_out_degree"] = st.max_out_degree;
    j["source_count"] = st.source_count;
    j["sink_count"] = st.sink_count;
    j["trivial_cost"] = st.trivial_cost;
    return j;
}

std::string dag_with_meta(const ComputationDag& dag, const std::string& family,
                          const Json& params, const Json& extra = Json::object()) {
    Json j = Json::parse(pebble::dag_to_json(dag));
    Json meta;
    meta["family"] = family;
    meta["parameters"] = params;
    meta["stats"] = stats_to_json(dag);
    for (auto it = extra.begin(); it != extra.end(); ++it) meta[it.key()] = it.value();
    j["meta"] = std::move(meta);
    return j.dump(2) + "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"red-blue pebbling toolkit: exact games, generators, solvers, "
                 "partitions and lower bounds"};
    app.require_subcommand(1);
    for (int i = 0; i < argc; ++i) g_log.argv.push_back(argv[i]);

    long long seed = 0;
    app.add_option("--seed", seed, "seed recorded for randomized sweeps");

    // ---- gen ----------------------------------------------------------------
    auto* gen = app.add_subcommand("gen", "emit a DAG family instance");
    std::string gen_family;
    gen->add_option("family", gen_family,
                    "figure1|figure1-chain|matvec|zipper|kary|collector|spart|fft|"
                    "matmul|attention")
        ->required();
    bool endpoints = true;
    int p_m = 0, p_k = 0, p_d = 0, p_len = 0, p_g = 1, p_h = 1;
    int p_m1 = 1, p_m2 = 1, p_m3 = 1;
    std::optional<std::string> out_path, dot_path;
    gen->add_flag("--endpoints,!--no-endpoints", endpoints, "include u0/v0 (figure1)");
    gen->add_option("--m", p_m, "size parameter (matvec, fft, attention)");
    gen->add_option("--k", p_k, "arity (kary)");
    gen->add_option("--d", p_d, "depth / group size");
    gen->add_option("--len", p_len, "chain length (zipper, collector)");
    gen->add_option("--g", p_g, "gadget copies (figure1-chain)");
    gen->add_option("--h", p_h, "group size (spart)");
    gen->add_option("--m1", p_m1, "rows of the first matrix (matmul)");
    gen->add_option("--m2", p_m2, "inner dimension (matmul)");
    gen->add_option("--m3", p_m3, "columns of the second matrix (matmul)");
    gen->add_option("--out", out_path, "write the DAG here instead of stdout");
    gen->add_option("--dot", dot_path, "also write a DOT rendering");

    // ---- verify -------------------------------------------------------------
    auto* verify = app.add_subcommand("verify", "replay a schedule and report costs");
    std::string v_dag, v_sched, v_game = "prbp", v_epsilon = "0", v_split = "per-edge";
    int v_r = 2;
    bool v_sliding = false, v_clear = false, v_nodel = false;
    verify->add_option("--dag", v_dag)->required();
    verify->add_option("--schedule", v_sched)->required();
    verify->add_option("--game", v_game, "rbp|prbp (overridden by the file, if set there)");
    verify->add_option("--r", v_r, "fast memory capacity");
    verify->add_flag("--sliding", v_sliding);
    verify->add_flag("--allow-clear", v_clear);
    verify->add_flag("--no-deletion", v_nodel);
    verify->add_option("--epsilon", v_epsilon, "compute cost, integer or p/q");
    verify->add_option("--cost-split", v_split, "per-edge|per-indegree");

    // ---- solve --------------------------------------------------------------
    auto* solve = app.add_subcommand("solve", "exact optimal io cost");
    std::string s_dag, s_game = "prbp";
    int s_r = 2;
    std::size_t s_budget = 10'000'000;
    std::optional<double> s_seconds;
    std::optional<long long> s_ub;
    std::optional<std::string> s_witness;
    solve->add_option("--dag", s_dag)->required();
    solve->add_option("--game", s_game);
    solve->add_option("--r", s_r)->required();
    solve->add_option("--budget-states", s_budget);
    solve->add_option("--budget-seconds", s_seconds);
    solve->add_option("--upper-bound", s_ub, "known achievable cost, prunes the search");
    solve->add_option("--witness", s_witness, "write the optimal schedule here");

    // ---- compare ------------------------------------------------------------
    auto* compare = app.add_subcommand("compare", "optimal costs of both games");
    std::string c_dag;
    int c_r = 2;
    std::size_t c_budget = 10'000'000;
    std::optional<double> c_seconds;
    compare->add_option("--dag", c_dag)->required();
    compare->add_option("--r", c_r)->required();
    compare->add_option("--budget-states", c_budget);
    compare->add_option("--budget-seconds", c_seconds);

    // ---- golden -------------------------------------------------------------
    auto* golden = app.add_subcommand("golden", "emit a reference schedule");
    std::string g_family, g_game = "prbp";
    std::optional<std::string> g_dag_path, g_out;
    int g_m = 1, g_k = 2, g_d = 1, g_len = 2, g_g = 1, g_h = 1;
    golden->add_option("family", g_family,
                       "figure1|figure1-chain|matvec|tree|zipper|collector|spart|streaming")
        ->required();
    golden->add_option("--game", g_game, "rbp|prbp (figure1, tree)");
    golden->add_option("--m", g_m);
    golden->add_option("--k", g_k);
    golden->add_option("--d", g_d);
    golden->add_option("--len", g_len);
    golden->add_option("--g", g_g);
    golden->add_option("--h", g_h);
    golden->add_option("--dag", g_dag_path, "input DAG (streaming)");
    golden->add_option("--out", g_out);

    // ---- partition ----------------------------------------------------------
    auto* partition = app.add_subcommand("partition", "partition tooling");
    partition->require_subcommand(1);
    auto* px_edges = partition->add_subcommand("extract-edges",
                                               "edge classes from a PRBP schedule");
    auto* px_nodes = partition->add_subcommand("extract-nodes",
                                               "node classes from a PRBP schedule");
    std::string px_dag, px_sched;
    int px_r = 2;
    std::optional<std::string> px_out;
    for (auto* cmd : {px_edges, px_nodes}) {
        cmd->add_option("--dag", px_dag)->required();
        cmd->add_option("--schedule", px_sched)->required();
        cmd->add_option("--r", px_r)->required();
        cmd->add_option("--out", px_out);
    }
    auto* pv = partition->add_subcommand("validate", "check the three conditions");
    std::string pv_dag, pv_part, pv_kind = "spart";
    std::size_t pv_s = 1;
    pv->add_option("--dag", pv_dag)->required();
    pv->add_option("--partition", pv_part)->required();
    pv->add_option("--s", pv_s)->required();
    pv->add_option("--kind", pv_kind, "spart|separt|sdom");
    auto* pm = partition->add_subcommand("min", "brute-force minimum class count");
    std::string pm_dag, pm_kind = "spart";
    std::size_t pm_s = 1;
    bool pm_force = false;
    pm->add_option("--dag", pm_dag)->required();
    pm->add_option("--s", pm_s)->required();
    pm->add_option("--kind", pm_kind, "spart|separt|sdom");
    pm->add_flag("--force", pm_force, "override the 9-element ground-set guard");

    // ---- bound --------------------------------------------------------------
    auto* bound = app.add_subcommand("bound", "asymptotic or class-count lower bounds");
    std::string b_family;
    int b_m = 0, b_d = 0, b_m1 = 0, b_m2 = 0, b_m3 = 0, b_r = 2;
    std::optional<long long> b_mink;
    std::string b_kind = "edge";
    bound->add_option("--family", b_family, "fft|matmul|attention");
    bound->add_option("--m", b_m);
    bound->add_option("--d", b_d);
    bound->add_option("--m1", b_m1);
    bound->add_option("--m2", b_m2);
    bound->add_option("--m3", b_m3);
    bound->add_option("--r", b_r)->required();
    bound->add_option("--min-k", b_mink, "certified class count; emits r*(k-1)");
    bound->add_option("--kind", b_kind, "edge|dom (annotation for --min-k)");

    // ---- reduce -------------------------------------------------------------
    auto* reduce = app.add_subcommand("reduce",
                                      "hardness-reduction DAG plus the brute-force answer");
    std::string r_g0;
    int r_v0 = 0, r_b = 4;
    std::optional<std::string> r_out;
    reduce->add_option("--g0", r_g0, "undirected graph file (\"n m\" then edges)")->required();
    reduce->add_option("--v0", r_v0)->required();
    reduce->add_option("--b", r_b, "padding parameter, > 3");
    reduce->add_option("--out", r_out, "write the reduction DAG here");

    CLI11_PARSE(app, argc, argv);
    g_log.command = app.get_subcommands().front()->get_name();

    try {
        if (*gen) {
            ComputationDag dag = [&]() -> ComputationDag {
                if (gen_family == "figure1") return pebble::gen_figure1(endpoints);
                if (gen_family == "figure1-chain") return pebble::gen_figure1_chain(p_g);
                if (gen_family == "matvec") return pebble::gen_matvec(p_m);
                if (gen_family == "zipper") return pebble::gen_zipper(p_d, p_len);
                if (gen_family == "kary") return pebble::gen_kary_tree(p_k, p_d);
                if (gen_family == "collector") return pebble::gen_pebble_collector(p_d, p_len);
                if (gen_family == "spart") return pebble::gen_spart_counterexample(p_h);
                if (gen_family == "fft") return pebble::gen_fft(p_m);
                if (gen_family == "matmul") return pebble::gen_matmul(p_m1, p_m2, p_m3);
                if (gen_family == "attention") return pebble::gen_attention(p_m, p_d);
                throw pebble::ParamError("unknown family \"" + gen_family + "\"");
            }();
            Json params;
            for (auto* opt : gen->get_options())
                if (opt->count() && opt->get_name() != "--out" && opt->get_name() != "--dot")
                    params[opt->get_name()] = opt->as<std::string>();
            emit_primary(out_path, dag_with_meta(dag, gen_family, params));
            if (dot_path) write_output(*dot_path, pebble::dag_to_dot(dag));
            emit_manifest();
            return 0;
        }

        if (*verify) {
            ComputationDag dag = pebble::dag_from_json(read_file(v_dag));
            auto parsed = pebble::schedule_from_json(read_file(v_sched));
            GameConfig cfg;
            cfg.kind = parse_game(v_game);
            cfg.capacity = v_r;
            if (parsed.has_config) cfg = parsed.schedule.config;
            cfg.sliding = v_sliding;
            cfg.allow_clear = v_clear;
            cfg.no_deletion = v_nodel;
            cfg.compute_cost = parse_rational(v_epsilon);
            if (v_split == "per-indegree")
                cfg.cost_split = pebble::PrbpCostSplit::PerEdgeScaledByInDegree;
            else if (v_split != "per-edge")
                throw pebble::ParamError("--cost-split must be per-edge or per-indegree");
            parsed.schedule.config = cfg;
            const auto report = pebble::validate_schedule(dag, cfg, parsed.schedule);
            emit_primary(std::nullopt, pebble::cost_report_to_json(report));
            emit_manifest();
            return report.valid && report.terminal ? 0 : 1;
        }

        if (*solve) {
            ComputationDag dag = pebble::dag_from_json(read_file(s_dag));
            GameConfig cfg;
            cfg.kind = parse_game(s_game);
            cfg.capacity = s_r;
            pebble::SolveBudget budget;
            budget.max_states = s_budget;
            budget.max_seconds = s_seconds;
            budget.upper_bound_seed = s_ub;
            const auto result = pebble::solve_opt(dag, cfg, budget);
            emit_primary(std::nullopt, pebble::solve_result_to_json(result));
            if (s_witness && result.witness)
                write_output(*s_witness, pebble::moves_to_json(result.witness->moves));
            emit_manifest();
            return exit_code_for(result.status);
        }

        if (*compare) {
            ComputationDag dag = pebble::dag_from_json(read_file(c_dag));
            pebble::SolveBudget budget;
            budget.max_states = c_budget;
            budget.max_seconds = c_seconds;
            const auto cmp = pebble::compare_models(dag, c_r, budget);
            Json j;
            j["dag"] = c_dag;
            j["r"] = c_r;
            if (cmp.opt_rbp) j["opt_rbp"] = *cmp.opt_rbp; else j["opt_rbp"] = nullptr;
            if (cmp.opt_prbp) j["opt_prbp"] = *cmp.opt_prbp; else j["opt_prbp"] = nullptr;
            j["strict"] = cmp.strict;
            emit_primary(std::nullopt, j.dump(2) + "\n");
            emit_manifest();
            if (cmp.rbp_status != pebble::SolveStatus::Optimal ||
                cmp.prbp_status != pebble::SolveStatus::Optimal)
                return 2;
            return 0;
        }

        if (*golden) {
            pebble::NamedSchedule named = [&]() -> pebble::NamedSchedule {
                if (g_family == "figure1") return pebble::figure1_golden(parse_game(g_game));
                if (g_family == "figure1-chain") return pebble::figure1_chain_prbp(g_g);
                if (g_family == "matvec") return pebble::matvec_prbp(g_m);
                if (g_family == "tree")
                    return pebble::tree_golden(g_k, g_d, parse_game(g_game));
                if (g_family == "zipper") return pebble::zipper_prbp(g_d, g_len);
                if (g_family == "collector") return pebble::collector_full(g_d, g_len);
                if (g_family == "spart") return pebble::spart_counterexample_prbp(g_h);
                if (g_family == "streaming") {
                    if (!g_dag_path)
                        throw pebble::ParamError("streaming needs --dag");
                    return pebble::streaming_prbp(pebble::dag_from_json(read_file(*g_dag_path)));
                }
                throw pebble::ParamError("unknown golden family \"" + g_family + "\"");
            }();
            emit_primary(g_out, pebble::named_schedule_to_json(named));
            emit_manifest();
            return 0;
        }

        if (*px_edges || *px_nodes) {
            ComputationDag dag = pebble::dag_from_json(read_file(px_dag));
            auto parsed = pebble::schedule_from_json(read_file(px_sched));
            parsed.schedule.config.kind = GameKind::Prbp;
            parsed.schedule.config.capacity = px_r;
            std::string text;
            if (*px_edges) {
                const auto part = pebble::edge_partition_from_schedule(dag, parsed.schedule, px_r);
                text = pebble::edge_partition_to_json(part);
            } else {
                const auto part = pebble::node_partition_from_schedule(dag, parsed.schedule, px_r);
                text = pebble::node_partition_to_json(part);
            }
            emit_primary(px_out, text);
            emit_manifest();
            return 0;
        }

        if (*pv || *pm) {
            const bool validating = static_cast<bool>(*pv);
            const std::string kind_name = validating ? pv_kind : pm_kind;
            pebble::PartitionKind kind;
            if (kind_name == "spart") kind = pebble::PartitionKind::SPartition;
            else if (kind_name == "separt") kind = pebble::PartitionKind::SEdgePartition;
            else if (kind_name == "sdom") kind = pebble::PartitionKind::SDominatorPartition;
            else throw pebble::ParamError("--kind must be spart, separt or sdom");

            if (validating) {
                ComputationDag dag = pebble::dag_from_json(read_file(pv_dag));
                const std::string text = read_file(pv_part);
                pebble::PartitionVerdict verdict;
                if (kind == pebble::PartitionKind::SEdgePartition)
                    verdict = pebble::validate_partition(
                        dag, pebble::edge_partition_from_json(text), pv_s, kind);
                else
                    verdict = pebble::validate_partition(
                        dag, pebble::node_partition_from_json(text), pv_s, kind);
                Json j;
                j["valid"] = verdict.valid;
                if (verdict.failed_condition) {
                    switch (*verdict.failed_condition) {
                        case pebble::PartitionFailure::Ordering: j["failed"] = "ordering"; break;
                        case pebble::PartitionFailure::DominatorSize:
                            j["failed"] = "dominator_size";
                            break;
                        case pebble::PartitionFailure::TerminalSize:
                            j["failed"] = "terminal_size";
                            break;
                    }
                    j["failing_class"] = *verdict.failing_class;
                    j["witness_nodes"] = verdict.witness_nodes;
                    if (verdict.witness_edge)
                        j["witness_edge"] =
                            Json::array({verdict.witness_edge->first, verdict.witness_edge->second});
                }
                emit_primary(std::nullopt, j.dump(2) + "\n");
                emit_manifest();
                return verdict.valid ? 0 : 1;
            }
            ComputationDag dag = pebble::dag_from_json(read_file(pm_dag));
            const long long k = pebble::min_classes_brute_force(dag, pm_s, kind, 9, pm_force);
            Json j;
            j["min_classes"] = k;
            j["s"] = pm_s;
            j["kind"] = kind_name;
            emit_primary(std::nullopt, j.dump(2) + "\n");
            emit_manifest();
            return 0;
        }

        if (*bound) {
            Json j;
            if (b_mink) {
                j["value"] = pebble::lower_bound_from_classes(b_r, *b_mink);
                j["asymptotic"] = false;
                j["kind"] = b_kind;
                j["min_k"] = *b_mink;
            } else {
                pebble::AnalyticBound ab;
                if (b_family == "fft") ab = pebble::analytic_bound_fft(b_m, b_r);
                else if (b_family == "matmul")
                    ab = pebble::analytic_bound_matmul(b_m1, b_m2, b_m3, b_r);
                else if (b_family == "attention")
                    ab = pebble::analytic_bound_attention(b_m, b_d, b_r);
                else throw pebble::ParamError("--family must be fft, matmul or attention");
                j["family"] = b_family;
                j["value"] = ab.value;
                j["asymptotic"] = ab.asymptotic;
            }
            emit_primary(std::nullopt, j.dump(2) + "\n");
            emit_manifest();
            return 0;
        }

        if (*reduce) {
            const auto g0 = pebble::undirected_from_text(read_file(r_g0));
            const auto red = pebble::gen_maxinset_reduction(
                g0, static_cast<pebble::NodeId>(r_v0), r_b);
            Json extra;
            extra["reduction"] = Json{{"r", red.meta.r},
                                      {"group_size", red.meta.group_size},
                                      {"ell0", red.meta.ell0},
                                      {"ell", red.meta.ell},
                                      {"extra_sink", red.meta.extra_sink},
                                      {"z1", red.meta.z1},
                                      {"z2", red.meta.z2}};
            Json params;
            params["v0"] = r_v0;
            params["b"] = r_b;
            const std::string dag_text =
                dag_with_meta(red.dag, "maxinset-reduction", params, extra);
            if (r_out)
                write_output(*r_out, dag_text);
            Json j;
            j["maxinset_vertex"] = pebble::maxinset_vertex(g0, static_cast<pebble::NodeId>(r_v0));
            j["r"] = red.meta.r;
            j["group_size"] = red.meta.group_size;
            j["ell0"] = red.meta.ell0;
            j["ell"] = red.meta.ell;
            j["n"] = red.dag.node_count();
            emit_primary(std::nullopt, j.dump(2) + "\n");
            emit_manifest();
            return 0;
        }
    } catch (const pebble::InfeasibleRbp& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        emit_manifest();
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        emit_manifest();
        return 4;
    }
    return 4;
}
