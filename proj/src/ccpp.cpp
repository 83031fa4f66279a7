#include "rvm/ccpp.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <map>
#include <stdexcept>
#include <utility>

namespace rvm {

bool verify_ccpp_partition(const Graph& g, const std::vector<int>& coloring,
                           const ColoredPartition& part, int t) {
    int n = g.n();
    if (static_cast<int>(coloring.size()) != n) return false;
    std::vector<int> block_of(n, -1);
    for (int bi = 0; bi < static_cast<int>(part.blocks.size()); ++bi) {
        const auto& block = part.blocks[bi];
        if (block.empty() || static_cast<int>(block.size()) > t) return false;
        for (int v : block) {
            if (v < 0 || v >= n || block_of[v] != -1) return false;
            block_of[v] = bi;
        }
        // BFS inside the block; it must reach every member.
        std::vector<int> stack{block[0]};
        std::vector<char> seen(n, 0);
        seen[block[0]] = 1;
        size_t reached = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int u : g.neighbors(v))
                if (block_of[u] == bi && !seen[u]) {
                    seen[u] = 1;
                    ++reached;
                    stack.push_back(u);
                }
        }
        if (reached != block.size()) return false;
    }
    for (int v = 0; v < n; ++v)
        if (block_of[v] == -1) return false;
    std::map<int, int> class_block;
    for (int v = 0; v < n; ++v) {
        auto [it, inserted] = class_block.emplace(coloring[v], block_of[v]);
        if (!inserted && it->second != block_of[v]) return false;
    }
    return true;
}

namespace {

struct CcppSearch {
    const Graph& g;
    int t;
    std::vector<std::vector<int>> classes;  // multi-vertex classes only
    std::vector<int> class_of;              // index into classes, -1 for singletons
    std::vector<int> block_of;              // -1 = free
    std::vector<char> placed;
    std::vector<std::vector<int>> chosen;
    long long nodes = 0;
    long long node_cap;
    double time_limit;
    std::chrono::steady_clock::time_point start;
    bool out_of_budget = false;

    CcppSearch(const Graph& graph, int max_block, const SearchBudget& budget)
        : g(graph),
          t(max_block),
          class_of(graph.n(), -1),
          block_of(graph.n(), -1),
          node_cap(budget.max_states),
          time_limit(budget.time_limit_seconds),
          start(std::chrono::steady_clock::now()) {}

    bool budget_ok() {
        if (out_of_budget) return false;
        ++nodes;
        if (nodes > node_cap ||
            (nodes % 4096 == 0 &&
             std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() >
                 time_limit))
            out_of_budget = true;
        return !out_of_budget;
    }

    // Vertices the anchor class still needs beyond the current block, plus
    // the closure debt of every other class the block already cut into.
    int deficit(const std::vector<int>& block, int want_class) const {
        std::vector<char> in(g.n(), 0);
        for (int v : block) in[v] = 1;
        int missing = 0;
        std::vector<char> counted(classes.size(), 0);
        counted[want_class] = 1;
        for (int v : classes[want_class])
            if (!in[v]) ++missing;
        for (int v : block) {
            int ci = class_of[v];
            if (ci == -1 || counted[ci]) continue;
            counted[ci] = 1;
            for (int u : classes[ci])
                if (!in[u]) ++missing;
        }
        return missing;
    }

    // Enumerates every connected superset of `block` (within free vertices,
    // avoiding `banned`) up to size t, each exactly once: extension
    // candidates are tried in ascending order and banned for later branches.
    bool grow(std::vector<int>& block, std::vector<char>& banned, int want_class) {
        if (!budget_ok()) return false;
        int owed = deficit(block, want_class);
        if (owed == 0 && commit(block)) return true;
        if (static_cast<int>(block.size()) + owed > t) return false;
        if (static_cast<int>(block.size()) == t) return false;
        std::vector<int> frontier;
        std::vector<char> in(g.n(), 0);
        for (int v : block) in[v] = 1;
        for (int v : block)
            for (int u : g.neighbors(v))
                if (!in[u] && block_of[u] == -1 && !banned[u]) {
                    in[u] = 1;  // dedupe frontier
                    frontier.push_back(u);
                }
        std::sort(frontier.begin(), frontier.end());
        std::vector<int> newly_banned;
        bool done = false;
        for (int v : frontier) {
            block.push_back(v);
            if (grow(block, banned, want_class)) {
                done = true;
                block.pop_back();
                break;
            }
            block.pop_back();
            if (out_of_budget) break;
            banned[v] = 1;
            newly_banned.push_back(v);
        }
        for (int v : newly_banned) banned[v] = 0;
        return done;
    }

    bool commit(const std::vector<int>& block) {
        int bi = static_cast<int>(chosen.size());
        std::vector<int> touched;
        for (int v : block) {
            block_of[v] = bi;
            int ci = class_of[v];
            if (ci != -1 && !placed[ci]) {
                placed[ci] = 1;
                touched.push_back(ci);
            }
        }
        std::vector<int> sorted = block;
        std::sort(sorted.begin(), sorted.end());
        chosen.push_back(std::move(sorted));
        bool done = solve();
        if (!done) {
            chosen.pop_back();
            for (int ci : touched) placed[ci] = 0;
            for (int v : block) block_of[v] = -1;
        }
        return done;
    }

    bool solve() {
        if (!budget_ok()) return false;
        int next = -1;
        for (int ci = 0; ci < static_cast<int>(classes.size()); ++ci)
            if (!placed[ci]) {
                next = ci;
                break;
            }
        if (next == -1) return true;
        if (static_cast<int>(classes[next].size()) > t) return false;
        std::vector<int> block{classes[next][0]};
        std::vector<char> banned(g.n(), 0);
        return grow(block, banned, next);
    }
};

}  // namespace

CcppSolveResult ccpp_solve_exact(const Graph& g, const std::vector<int>& coloring, int t,
                                 const SearchBudget& budget) {
    if (static_cast<int>(coloring.size()) != g.n())
        throw std::invalid_argument("coloring size mismatch");
    CcppSolveResult result;
    auto start = std::chrono::steady_clock::now();
    auto finish = [&](bool found) {
        result.found = found;
        result.elapsed_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        return result;
    };
    if (t < 1) return finish(g.n() == 0);

    CcppSearch search(g, t, budget);
    std::map<int, std::vector<int>> by_color;
    for (int v = 0; v < g.n(); ++v) by_color[coloring[v]].push_back(v);
    for (auto& [color, members] : by_color) {
        if (members.size() < 2) continue;
        for (int v : members) search.class_of[v] = static_cast<int>(search.classes.size());
        search.classes.push_back(members);
    }
    search.placed.assign(search.classes.size(), 0);

    bool found = search.solve();
    result.states_visited = search.nodes;
    if (search.out_of_budget) {
        result.exhausted = true;
        return finish(false);
    }
    if (!found) return finish(false);

    ColoredPartition part;
    part.blocks = search.chosen;
    for (int v = 0; v < g.n(); ++v)
        if (search.block_of[v] == -1) part.blocks.push_back({v});
    result.partition = std::move(part);
    return finish(true);
}

CcppInstance build_ccpp_instance(const CnfFormula& f) {
    validate_formula(f);
    CcppInstance inst;
    inst.formula = f;

    std::vector<CcppVertexInfo> prov;
    std::vector<int> color;
    std::vector<std::pair<int, int>> edges;
    int next_color = 0;

    // fresh_color = -1 allocates a new color for the vertex
    auto add_vertex = [&](GadgetRole role, int variable, int hexagon, int fixed_color) {
        prov.push_back({role, variable, hexagon, -1, -1});
        color.push_back(fixed_color == -1 ? next_color++ : fixed_color);
        return static_cast<int>(prov.size()) - 1;
    };

    struct Occurrence {
        int clause = 0;
        int slot = 0;
        bool positive = false;
    };
    std::vector<std::vector<Occurrence>> occ(f.num_vars + 1);
    for (int c = 0; c < static_cast<int>(f.clauses.size()); ++c)
        for (int s = 0; s < 3; ++s) {
            int lit = f.clauses[c][s];
            occ[std::abs(lit)].push_back({c, s, lit > 0});
        }

    std::vector<int> gadget_of(f.num_vars + 1, -1);
    for (int v = 1; v <= f.num_vars; ++v) {
        int m = static_cast<int>(occ[v].size());
        if (m == 0) continue;
        CcppVariableGadget vg;
        vg.variable = v;
        int h = 2 * m;  // two hexagons per occurrence, closed into a necklace
        for (int j = 1; j <= h; ++j)
            vg.corners.push_back(add_vertex(GadgetRole::kHexagonCorner, v, j, -1));
        for (int i = 1; i <= h; ++i) {
            HexagonGadget hx;
            int pair_color = next_color++;
            hx.a = add_vertex(GadgetRole::kHexagonA, v, i, pair_color);
            hx.b = add_vertex(GadgetRole::kHexagonB, v, i, pair_color);
            hx.pos = add_vertex(GadgetRole::kHexagonPositive, v, i, -1);
            hx.neg = add_vertex(GadgetRole::kHexagonNegative, v, i, -1);
            int left = vg.corners[i - 1], right = vg.corners[i % h];
            edges.emplace_back(hx.a, hx.pos);
            edges.emplace_back(hx.pos, left);
            edges.emplace_back(left, hx.b);
            edges.emplace_back(hx.b, hx.neg);
            edges.emplace_back(hx.neg, right);
            edges.emplace_back(right, hx.a);
            vg.hexagons.push_back(hx);
        }
        gadget_of[v] = static_cast<int>(inst.variables.size());
        inst.variables.push_back(std::move(vg));
    }

    std::vector<int> used_occurrences(f.num_vars + 1, 0);
    for (int c = 0; c < static_cast<int>(f.clauses.size()); ++c) {
        CcppClauseGadget cg;
        int pair_color = next_color++;
        cg.a = add_vertex(GadgetRole::kClauseA, -1, -1, pair_color);
        cg.b = add_vertex(GadgetRole::kClauseB, -1, -1, pair_color);
        prov[cg.a].clause = c;
        prov[cg.b].clause = c;
        for (int s = 0; s < 3; ++s) {
            int lit = f.clauses[c][s];
            int v = std::abs(lit);
            const CcppVariableGadget& vg = inst.variables[gadget_of[v]];
            int k = used_occurrences[v]++;
            const HexagonGadget& first = vg.hexagons[2 * k];
            const HexagonGadget& second = vg.hexagons[2 * k + 1];
            int f1 = lit > 0 ? first.pos : first.neg;
            int f2 = lit > 0 ? second.pos : second.neg;
            prov[f1].clause = c;
            prov[f1].slot = s;
            prov[f2].clause = c;
            prov[f2].slot = s;
            edges.emplace_back(cg.a, f1);
            edges.emplace_back(f1, f2);
            edges.emplace_back(f2, cg.b);
            cg.line[s] = {f1, f2};
        }
        inst.clause_gadgets.push_back(cg);
    }

    inst.graph = Graph(static_cast<int>(prov.size()), edges);
    inst.coloring = std::move(color);
    inst.num_colors = next_color;
    inst.provenance = std::move(prov);
    return inst;
}

}  // namespace rvm
