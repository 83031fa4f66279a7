#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "rvm/ccpp.hpp"
#include "rvm/clique.hpp"
#include "rvm/cliquecontract.hpp"
#include "rvm/graph.hpp"
#include "rvm/hconnroute.hpp"
#include "rvm/io.hpp"
#include "rvm/maxroute.hpp"
#include "rvm/oracle.hpp"
#include "rvm/permutation.hpp"
#include "rvm/sat_reduction.hpp"
#include "rvm/schedule.hpp"
#include "rvm/treeroute.hpp"
#include "rvm/twostep.hpp"

using nlohmann::ordered_json;
using namespace rvm;

namespace {

constexpr int kOk = 0;         // computed an affirmative answer
constexpr int kNo = 1;         // computed "no / none"
constexpr int kInputError = 2; // unreadable or invalid input
constexpr int kExhausted = 3;  // budget ran out before the answer settled

// Options shared by every subcommand. Output stays deterministic: JSON never
// carries wall-clock readings, so identical inputs and seeds give identical
// bytes. --threads is accepted for forward compatibility; every routine in
// the library is currently single-threaded.
struct Common {
    std::string format = "json";
    int threads = 1;
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--format", c.format, "output format (json|text)")
        ->check(CLI::IsMember({"json", "text"}));
    cmd->add_option("--threads", c.threads, "worker threads (accepted; unused)")
        ->check(CLI::PositiveNumber);
}

struct BudgetOpts {
    long long max_states = 10'000'000;
    double time_limit = 60.0;
    int max_depth = -1;
};

void add_budget(CLI::App* cmd, BudgetOpts& b, bool with_depth = false) {
    cmd->add_option("--max-states", b.max_states, "search state cap")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--time-limit", b.time_limit, "search time cap in seconds")
        ->check(CLI::PositiveNumber);
    if (with_depth)
        cmd->add_option("--max-depth", b.max_depth,
                        "stop expanding beyond this schedule length (-1 = off)");
}

SearchBudget to_budget(const BudgetOpts& b) {
    SearchBudget out;
    out.max_states = b.max_states;
    out.time_limit_seconds = b.time_limit;
    out.max_depth = b.max_depth;
    return out;
}

ordered_json schedule_json(const Schedule& s) {
    ordered_json steps = ordered_json::array();
    for (const auto& step : s.steps) {
        ordered_json pairs = ordered_json::array();
        for (const auto& [u, v] : step.pairs) pairs.push_back({u, v});
        steps.push_back(pairs);
    }
    return steps;
}

std::string schedule_text(const Schedule& s) {
    std::ostringstream out;
    write_schedule(out, s);
    return out.str();
}

void emit(const Common& c, const ordered_json& j, const std::string& text) {
    if (c.format == "json")
        std::cout << j.dump(2) << "\n";
    else
        std::cout << text;
}

// Routing commands double-check their own output before printing it.
void assert_valid(const Graph& g, const Permutation& pi, const Schedule& s,
                  const char* who) {
    auto rep = verify_schedule(g, pi, s);
    if (!rep.valid)
        throw std::logic_error(std::string(who) + " produced an invalid schedule: " +
                               rep.reason);
}

int run_verify(const Common& c, const std::string& graph_path,
               const std::string& perm_path, const std::string& sched_path) {
    Graph g = read_graph_file(graph_path);
    Permutation pi = read_permutation_file(perm_path);
    Schedule s = read_schedule_file(sched_path);
    auto rep = verify_schedule(g, pi, s);
    ordered_json j{{"valid", rep.valid},
                   {"steps", s.length()},
                   {"first_bad_step", rep.first_bad_step},
                   {"reason", rep.reason}};
    std::ostringstream text;
    if (rep.valid)
        text << "valid: " << s.length() << " steps\n";
    else
        text << "invalid: " << rep.reason << "\n";
    emit(c, j, text.str());
    return rep.valid ? kOk : kNo;
}

int run_rt_exact(const Common& c, const std::string& graph_path,
                 const std::string& perm_path, const BudgetOpts& b) {
    Graph g = read_graph_file(graph_path);
    Permutation pi = read_permutation_file(perm_path);
    auto r = routing_time_exact(g, pi, to_budget(b));
    if (r.exhausted) {
        ordered_json j{{"exhausted", true},
                       {"lower_bound", r.value},
                       {"states_visited", r.states_visited}};
        emit(c, j, "exhausted: routing time > " + std::to_string(r.value) + "\n");
        return kExhausted;
    }
    assert_valid(g, pi, r.witness, "rt-exact");
    ordered_json j{{"routing_time", r.value},
                   {"states_visited", r.states_visited},
                   {"schedule", schedule_json(r.witness)}};
    emit(c, j,
         "routing time " + std::to_string(r.value) + "\n" + schedule_text(r.witness));
    return kOk;
}

int run_routing_number(const Common& c, const std::string& graph_path,
                       const BudgetOpts& b) {
    Graph g = read_graph_file(graph_path);
    auto r = routing_number_exact(g, to_budget(b));
    if (r.exhausted) {
        ordered_json j{{"exhausted", true},
                       {"lower_bound", r.value},
                       {"states_visited", r.states_visited}};
        emit(c, j, "exhausted: routing number >= " + std::to_string(r.value) + "\n");
        return kExhausted;
    }
    ordered_json j{{"routing_number", r.value},
                   {"states_visited", r.states_visited},
                   {"hardest_permutation", r.witness.image()}};
    std::ostringstream text;
    text << "routing number " << r.value << "\n";
    emit(c, j, text.str());
    return kOk;
}

int run_rt2(const Common& c, const std::string& graph_path,
            const std::string& perm_path) {
    Graph g = read_graph_file(graph_path);
    Permutation pi = read_permutation_file(perm_path);
    auto s = route_in_two(g, pi);
    if (!s) {
        emit(c, ordered_json{{"routable_in_two", false}}, "not routable in two steps\n");
        return kNo;
    }
    assert_valid(g, pi, *s, "rt2");
    ordered_json j{{"routable_in_two", true},
                   {"routable_in", s->length()},
                   {"schedule", schedule_json(*s)}};
    emit(c, j,
         "routable in " + std::to_string(s->length()) + " steps\n" + schedule_text(*s));
    return kOk;
}

int run_route_tree(const Common& c, const std::string& graph_path,
                   const std::string& perm_path, int root) {
    Graph g = read_graph_file(graph_path);
    Permutation pi = read_permutation_file(perm_path);
    RootedTree t = RootedTree::build(g, root);
    Schedule s = route_tree(t, pi);
    assert_valid(g, pi, s, "route-tree");
    ordered_json j{{"steps", s.length()}, {"schedule", schedule_json(s)}};
    emit(c, j, std::to_string(s.length()) + " steps\n" + schedule_text(s));
    return kOk;
}

int run_route_hconn(const Common& c, const std::string& graph_path,
                    const std::string& perm_path, const std::string& partition_path,
                    int h, bool pipelined, const BudgetOpts& b) {
    Graph g = read_graph_file(graph_path);
    Permutation pi = read_permutation_file(perm_path);

    ConnectedPartition part;
    if (!partition_path.empty()) {
        for (auto& line : read_partition_file(partition_path)) {
            if (line.empty()) throw std::invalid_argument("empty partition block");
            part.ports.push_back(line.front());
            std::sort(line.begin(), line.end());
            part.blocks.push_back(std::move(line));
        }
    } else {
        if (h < 1) throw std::invalid_argument("route-hconn needs --partition or --h");
        // pick the cheapest order-h ports subgraph, then grow balanced
        // connected blocks around its vertices
        auto ports = best_port_subgraph(g, h, to_budget(b));
        if (ports.exhausted) {
            emit(c, ordered_json{{"exhausted", true}}, "exhausted in port search\n");
            return kExhausted;
        }
        std::vector<int> sizes(h, g.n() / h);
        for (int i = 0; i < g.n() % h; ++i) sizes[i]++;
        auto found = find_partition(g, sizes, ports.vertices, to_budget(b));
        if (found.exhausted) {
            emit(c, ordered_json{{"exhausted", true}}, "exhausted in partition search\n");
            return kExhausted;
        }
        part = found.partition;
    }
    check_partition(g, part);

    HConnOptions opts;
    opts.pipelined = pipelined;
    Graph ports_graph = g.induced(part.ports);
    Schedule s = route_hconnected(g, pi, part, ports_graph, opts);
    assert_valid(g, pi, s, "route-hconn");
    ordered_json j{{"steps", s.length()},
                   {"ports", part.ports},
                   {"blocks", part.blocks},
                   {"schedule", schedule_json(s)}};
    emit(c, j, std::to_string(s.length()) + " steps\n" + schedule_text(s));
    return kOk;
}

int run_route_kappa(const Common& c, const std::string& graph_path,
                    const std::string& perm_path, std::vector<int> clique) {
    Graph g = read_graph_file(graph_path);
    Permutation pi = read_permutation_file(perm_path);
    if (clique.empty()) clique = max_clique_exact(g);
    CliqueContractionStats stats;
    Schedule s = route_via_clique_contraction(g, pi, clique, &stats);
    assert_valid(g, pi, s, "route-kappa");
    ordered_json j{{"steps", s.length()},
                   {"clique", clique},
                   {"stats",
                    ordered_json{{"exchange_steps", stats.exchange_steps},
                                 {"planned_steps", stats.planned_steps},
                                 {"super_vertex_steps", stats.super_vertex_steps},
                                 {"expanded_steps", stats.expanded_steps},
                                 {"cleanup_steps", stats.cleanup_steps}}},
                   {"schedule", schedule_json(s)}};
    emit(c, j, std::to_string(s.length()) + " steps\n" + schedule_text(s));
    return kOk;
}

int run_maxroute(const Common& c, const std::string& graph_path,
                 const std::string& perm_path, int k, const std::string& mode,
                 unsigned seed, const BudgetOpts& b) {
    Graph g = read_graph_file(graph_path);
    Permutation pi = read_permutation_file(perm_path);
    MaxRouteMode m =
        mode == "greedy" ? MaxRouteMode::kGreedy : MaxRouteMode::kExact;
    MaxRoutabilityResult r;
    try {
        r = max_routability(g, pi, k, m, to_budget(b), seed);
    } catch (const std::runtime_error& e) {
        emit(c, ordered_json{{"exhausted", true}, {"reason", e.what()}},
             std::string("exhausted: ") + e.what() + "\n");
        return kExhausted;
    }
    ordered_json j{{"m", r.m},
                   {"n", g.n()},
                   {"mode", mode},
                   {"clique_graph_size", r.clique_graph_size},
                   {"schedule", schedule_json(r.schedule)}};
    emit(c, j,
         std::to_string(r.m) + " of " + std::to_string(g.n()) + " pebbles in " +
             std::to_string(k) + " steps\n" + schedule_text(r.schedule));
    return kOk;
}

int run_max_agree(const Common& c, const std::string& graph_path,
                  const std::string& perm_path, int k, const BudgetOpts& b) {
    Graph g = read_graph_file(graph_path);
    Permutation pi = read_permutation_file(perm_path);
    auto r = max_agreements_exact(g, pi, k, to_budget(b));
    if (r.exhausted) {
        ordered_json j{{"exhausted", true},
                       {"best_so_far", r.value},
                       {"states_visited", r.states_visited}};
        emit(c, j, "exhausted: best found " + std::to_string(r.value) + "\n");
        return kExhausted;
    }
    ordered_json j{{"max_agreements", r.value},
                   {"n", g.n()},
                   {"states_visited", r.states_visited},
                   {"schedule", schedule_json(r.witness)}};
    emit(c, j, std::to_string(r.value) + " of " + std::to_string(g.n()) + "\n");
    return kOk;
}

const char* role_field(GadgetRole role) { return gadget_role_name(role); }

int run_reduce_sat(const Common& c, const std::string& cnf_path, int chain_len,
                   const std::string& graph_out, const std::string& perm_out,
                   const std::string& prov_out) {
    CnfFormula f = read_dimacs_cnf_file(cnf_path);
    auto inst = build_sat_instance(f, chain_len);
    write_graph_file(graph_out, inst.graph);
    write_permutation_file(perm_out, inst.pi);

    if (!prov_out.empty()) {
        ordered_json prov;
        prov["chain_len"] = inst.chain_len;
        prov["vertices"] = ordered_json::array();
        for (size_t v = 0; v < inst.provenance.size(); ++v) {
            const auto& p = inst.provenance[v];
            prov["vertices"].push_back(ordered_json{{"v", v},
                                                    {"role", role_field(p.role)},
                                                    {"variable", p.variable},
                                                    {"clause", p.clause},
                                                    {"index", p.index},
                                                    {"chain", p.chain}});
        }
        prov["clauses"] = ordered_json::array();
        for (const auto& cg : inst.clause_gadgets)
            prov["clauses"].push_back(ordered_json{{"a", cg.a},
                                                   {"b", cg.b},
                                                   {"literal_vertex", cg.literal_vertex},
                                                   {"slot_chain", cg.slot_chain}});
        prov["variables"] = ordered_json::array();
        for (const auto& vg : inst.variables) {
            ordered_json hexes = ordered_json::array();
            for (const auto& hx : vg.hexagons)
                hexes.push_back(ordered_json{
                    {"a", hx.a}, {"b", hx.b}, {"pos", hx.pos}, {"neg", hx.neg}});
            prov["variables"].push_back(ordered_json{{"variable", vg.variable},
                                                     {"corners", vg.corners},
                                                     {"hexagons", hexes},
                                                     {"internal_chain", vg.internal_chain},
                                                     {"wiring_chain", vg.wiring_chain}});
        }
        prov["chains"] = ordered_json::array();
        for (const auto& ch : inst.chains)
            prov["chains"].push_back(
                ordered_json{{"corners", ch.corners}, {"pairs", ch.pairs}});
        std::ofstream out(prov_out);
        if (!out) throw std::invalid_argument("cannot write " + prov_out);
        out << prov.dump(2) << "\n";
    }

    ordered_json j{{"vertices", inst.graph.n()},
                   {"edges", inst.graph.m()},
                   {"chains", inst.chains.size()},
                   {"clauses", f.clauses.size()},
                   {"graph_file", graph_out},
                   {"perm_file", perm_out}};
    std::ostringstream text;
    text << "reduction instance: " << inst.graph.n() << " vertices, "
         << inst.graph.m() << " edges\n";
    emit(c, j, text.str());
    return kOk;
}

int run_reduce_ccpp(const Common& c, const std::string& cnf_path,
                    const std::string& graph_out, const std::string& colors_out) {
    CnfFormula f = read_dimacs_cnf_file(cnf_path);
    auto inst = build_ccpp_instance(f);
    write_graph_file(graph_out, inst.graph);
    std::ofstream out(colors_out);
    if (!out) throw std::invalid_argument("cannot write " + colors_out);
    write_coloring(out, inst.coloring);

    ordered_json j{{"vertices", inst.graph.n()},
                   {"edges", inst.graph.m()},
                   {"colors", inst.num_colors},
                   {"graph_file", graph_out},
                   {"colors_file", colors_out}};
    std::ostringstream text;
    text << "partition instance: " << inst.graph.n() << " vertices, "
         << inst.num_colors << " colors\n";
    emit(c, j, text.str());
    return kOk;
}

int run_ccpp_solve(const Common& c, const std::string& graph_path,
                   const std::string& colors_path, int t, const BudgetOpts& b) {
    Graph g = read_graph_file(graph_path);
    std::vector<int> coloring = read_coloring_file(colors_path, g.n());
    auto r = ccpp_solve_exact(g, coloring, t, to_budget(b));
    if (r.exhausted) {
        ordered_json j{{"exhausted", true}, {"states_visited", r.states_visited}};
        emit(c, j, "exhausted\n");
        return kExhausted;
    }
    if (!r.found) {
        ordered_json j{{"found", false}, {"states_visited", r.states_visited}};
        emit(c, j, "no valid partition with blocks <= " + std::to_string(t) + "\n");
        return kNo;
    }
    if (!verify_ccpp_partition(g, coloring, r.partition, t))
        throw std::logic_error("ccpp-solve produced an invalid partition");
    size_t biggest = 0;
    for (const auto& blk : r.partition.blocks) biggest = std::max(biggest, blk.size());
    ordered_json j{{"found", true},
                   {"max_block", biggest},
                   {"states_visited", r.states_visited},
                   {"blocks", r.partition.blocks}};
    std::ostringstream text;
    text << r.partition.blocks.size() << " blocks, largest " << biggest << "\n";
    emit(c, j, text.str());
    return kOk;
}

int run_gen(const std::string& family, int n, int m, int a, int b, int d,
            unsigned seed, const std::string& out_path) {
    auto need = [](bool ok, const char* what) {
        if (!ok) throw std::invalid_argument(std::string(what) + " is required");
    };
    std::mt19937 rng(seed);
    Graph g(1);
    if (family == "complete-bipartite") {
        need(a >= 1 && b >= 1, "--a and --b");
        g = complete_bipartite_graph(a, b);
    } else if (family == "hypercube") {
        need(d >= 1, "--d");
        g = hypercube_graph(d);
    } else {
        need(n >= 1, "--n");
        if (family == "path") g = path_graph(n);
        else if (family == "cycle") g = cycle_graph(n);
        else if (family == "star") g = star_graph(n);
        else if (family == "complete") g = complete_graph(n);
        else if (family == "random-tree") g = random_tree(n, rng);
        else g = random_connected_graph(n, m, rng);
    }

    if (out_path.empty() || out_path == "-") {
        write_graph(std::cout, g);
    } else {
        write_graph_file(out_path, g);
        std::cout << "wrote " << g.n() << " vertices, " << g.m() << " edges to "
                  << out_path << "\n";
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pebble routing via matchings: oracles, routers, reductions"};
    app.require_subcommand(1);

    int exit_code = kOk;

    // verify
    Common verify_c;
    std::string verify_graph, verify_perm, verify_sched;
    auto* verify_cmd = app.add_subcommand("verify", "check a schedule against a permutation");
    verify_cmd->add_option("--graph", verify_graph)->required();
    verify_cmd->add_option("--perm", verify_perm)->required();
    verify_cmd->add_option("--schedule", verify_sched)->required();
    add_common(verify_cmd, verify_c);
    verify_cmd->callback(
        [&] { exit_code = run_verify(verify_c, verify_graph, verify_perm, verify_sched); });

    // rt-exact
    Common rt_c;
    std::string rt_graph, rt_perm;
    BudgetOpts rt_b;
    auto* rt_cmd = app.add_subcommand("rt-exact", "exact routing time by exhaustive search");
    rt_cmd->add_option("--graph", rt_graph)->required();
    rt_cmd->add_option("--perm", rt_perm)->required();
    add_budget(rt_cmd, rt_b, /*with_depth=*/true);
    add_common(rt_cmd, rt_c);
    rt_cmd->callback([&] { exit_code = run_rt_exact(rt_c, rt_graph, rt_perm, rt_b); });

    // routing-number
    Common rn_c;
    std::string rn_graph;
    BudgetOpts rn_b;
    auto* rn_cmd =
        app.add_subcommand("routing-number", "max routing time over all permutations");
    rn_cmd->add_option("--graph", rn_graph)->required();
    add_budget(rn_cmd, rn_b);
    add_common(rn_cmd, rn_c);
    rn_cmd->callback([&] { exit_code = run_routing_number(rn_c, rn_graph, rn_b); });

    // rt2
    Common rt2_c;
    std::string rt2_graph, rt2_perm;
    auto* rt2_cmd = app.add_subcommand("rt2", "decide routability in at most two steps");
    rt2_cmd->add_option("--graph", rt2_graph)->required();
    rt2_cmd->add_option("--perm", rt2_perm)->required();
    add_common(rt2_cmd, rt2_c);
    rt2_cmd->callback([&] { exit_code = run_rt2(rt2_c, rt2_graph, rt2_perm); });

    // route-tree
    Common tree_c;
    std::string tree_graph, tree_perm;
    int tree_root = 0;
    auto* tree_cmd = app.add_subcommand("route-tree", "route a permutation on a tree");
    tree_cmd->add_option("--graph", tree_graph)->required();
    tree_cmd->add_option("--perm", tree_perm)->required();
    tree_cmd->add_option("--root", tree_root);
    add_common(tree_cmd, tree_c);
    tree_cmd->callback(
        [&] { exit_code = run_route_tree(tree_c, tree_graph, tree_perm, tree_root); });

    // route-hconn
    Common hc_c;
    std::string hc_graph, hc_perm, hc_partition;
    int hc_h = 0;
    bool hc_pipelined = false;
    BudgetOpts hc_b;
    auto* hc_cmd = app.add_subcommand(
        "route-hconn", "route through connected blocks wired by a ports subgraph");
    hc_cmd->set_help_flag("--help", "print help");  // frees -h for the block count
    hc_cmd->add_option("--graph", hc_graph)->required();
    hc_cmd->add_option("--perm", hc_perm)->required();
    hc_cmd->add_option("--partition", hc_partition,
                       "file with one block per line: port then members");
    hc_cmd->add_option("-h,--h", hc_h, "find a partition with this many blocks");
    hc_cmd->add_flag("--pipelined", hc_pipelined, "pack steps after routing");
    add_budget(hc_cmd, hc_b);
    add_common(hc_cmd, hc_c);
    hc_cmd->callback([&] {
        exit_code = run_route_hconn(hc_c, hc_graph, hc_perm, hc_partition, hc_h,
                                    hc_pipelined, hc_b);
    });

    // route-kappa
    Common kap_c;
    std::string kap_graph, kap_perm;
    std::vector<int> kap_clique;
    auto* kap_cmd =
        app.add_subcommand("route-kappa", "route by contracting a clique to one vertex");
    kap_cmd->add_option("--graph", kap_graph)->required();
    kap_cmd->add_option("--perm", kap_perm)->required();
    kap_cmd->add_option("--clique", kap_clique, "clique vertices (default: found exactly)")
        ->delimiter(',');
    add_common(kap_cmd, kap_c);
    kap_cmd->callback(
        [&] { exit_code = run_route_kappa(kap_c, kap_graph, kap_perm, kap_clique); });

    // maxroute
    Common mr_c;
    std::string mr_graph, mr_perm, mr_mode = "exact";
    int mr_k = 1;
    unsigned mr_seed = 1;
    BudgetOpts mr_b;
    auto* mr_cmd = app.add_subcommand(
        "maxroute", "most pebbles a schedule of length <= k can land");
    mr_cmd->add_option("--graph", mr_graph)->required();
    mr_cmd->add_option("--perm", mr_perm)->required();
    mr_cmd->add_option("--k", mr_k)->required()->check(CLI::NonNegativeNumber);
    mr_cmd->add_option("--mode", mr_mode)->check(CLI::IsMember({"exact", "greedy"}));
    mr_cmd->add_option("--seed", mr_seed);
    add_budget(mr_cmd, mr_b);
    add_common(mr_cmd, mr_c);
    mr_cmd->callback([&] {
        exit_code = run_maxroute(mr_c, mr_graph, mr_perm, mr_k, mr_mode, mr_seed, mr_b);
    });

    // max-agree
    Common ma_c;
    std::string ma_graph, ma_perm;
    int ma_k = 1;
    BudgetOpts ma_b;
    auto* ma_cmd = app.add_subcommand(
        "max-agree", "exhaustive max pebbles landed within k steps");
    ma_cmd->add_option("--graph", ma_graph)->required();
    ma_cmd->add_option("--perm", ma_perm)->required();
    ma_cmd->add_option("--k", ma_k)->required()->check(CLI::NonNegativeNumber);
    add_budget(ma_cmd, ma_b);
    add_common(ma_cmd, ma_c);
    ma_cmd->callback(
        [&] { exit_code = run_max_agree(ma_c, ma_graph, ma_perm, ma_k, ma_b); });

    // reduce-sat
    Common rs_c;
    std::string rs_cnf, rs_graph_out, rs_perm_out, rs_prov_out;
    int rs_chain_len = 1;
    auto* rs_cmd = app.add_subcommand(
        "reduce-sat", "3-CNF to a routing instance solvable in 3 steps iff satisfiable");
    rs_cmd->add_option("--cnf", rs_cnf)->required();
    rs_cmd->add_option("--chain-len", rs_chain_len)->check(CLI::PositiveNumber);
    rs_cmd->add_option("--graph-out", rs_graph_out)->required();
    rs_cmd->add_option("--perm-out", rs_perm_out)->required();
    rs_cmd->add_option("--provenance-out", rs_prov_out, "vertex role map as JSON");
    add_common(rs_cmd, rs_c);
    rs_cmd->callback([&] {
        exit_code = run_reduce_sat(rs_c, rs_cnf, rs_chain_len, rs_graph_out, rs_perm_out,
                                   rs_prov_out);
    });

    // reduce-ccpp
    Common rc_c;
    std::string rc_cnf, rc_graph_out, rc_colors_out;
    auto* rc_cmd = app.add_subcommand(
        "reduce-ccpp", "3-CNF to a colored-partition instance with threshold 4");
    rc_cmd->add_option("--cnf", rc_cnf)->required();
    rc_cmd->add_option("--graph-out", rc_graph_out)->required();
    rc_cmd->add_option("--colors-out", rc_colors_out)->required();
    add_common(rc_cmd, rc_c);
    rc_cmd->callback(
        [&] { exit_code = run_reduce_ccpp(rc_c, rc_cnf, rc_graph_out, rc_colors_out); });

    // ccpp-solve
    Common cs_c;
    std::string cs_graph, cs_colors;
    int cs_t = 1;
    BudgetOpts cs_b;
    auto* cs_cmd = app.add_subcommand(
        "ccpp-solve", "find a colored connected partition with blocks <= t");
    cs_cmd->add_option("--graph", cs_graph)->required();
    cs_cmd->add_option("--colors", cs_colors)->required();
    cs_cmd->add_option("--t", cs_t)->required()->check(CLI::PositiveNumber);
    add_budget(cs_cmd, cs_b);
    add_common(cs_cmd, cs_c);
    cs_cmd->callback(
        [&] { exit_code = run_ccpp_solve(cs_c, cs_graph, cs_colors, cs_t, cs_b); });

    // gen
    std::string gen_family, gen_out;
    int gen_n = 0, gen_m = 0, gen_a = 0, gen_b2 = 0, gen_d = 0;
    unsigned gen_seed = 1;
    auto* gen_cmd = app.add_subcommand("gen", "write a generated graph");
    gen_cmd->add_option("--family", gen_family)
        ->required()
        ->check(CLI::IsMember({"path", "cycle", "star", "complete",
                               "complete-bipartite", "hypercube", "random-tree",
                               "random-connected"}));
    gen_cmd->add_option("--n", gen_n);
    gen_cmd->add_option("--m", gen_m);
    gen_cmd->add_option("--a", gen_a);
    gen_cmd->add_option("--b", gen_b2);
    gen_cmd->add_option("--d", gen_d);
    gen_cmd->add_option("--seed", gen_seed);
    gen_cmd->add_option("--out", gen_out, "output path (default stdout)");
    gen_cmd->callback([&] {
        exit_code = run_gen(gen_family, gen_n, gen_m, gen_a, gen_b2, gen_d, gen_seed,
                            gen_out);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kInputError;
    } catch (const ParseError& e) {
        std::cerr << "parse error on line " << e.line() << ": " << e.what() << "\n";
        return kInputError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    }
    return exit_code;
}
