#include "rvm/sat_reduction.hpp"

#include <cstdlib>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace rvm {

void validate_formula(const CnfFormula& f) {
    if (f.num_vars < 1) throw std::invalid_argument("formula needs at least one variable");
    if (f.clauses.empty()) throw std::invalid_argument("formula needs at least one clause");
    for (const auto& clause : f.clauses) {
        for (int lit : clause) {
            if (lit == 0) throw std::invalid_argument("literal 0 is the clause terminator");
            if (std::abs(lit) > f.num_vars)
                throw std::invalid_argument("literal names a variable out of range");
        }
    }
}

bool formula_satisfied(const CnfFormula& f, const std::vector<bool>& assign) {
    if (static_cast<int>(assign.size()) != f.num_vars)
        throw std::invalid_argument("assignment size mismatch");
    for (const auto& clause : f.clauses) {
        bool sat = false;
        for (int lit : clause) sat = sat || assign[std::abs(lit) - 1] == (lit > 0);
        if (!sat) return false;
    }
    return true;
}

CnfFormula read_dimacs_cnf(std::istream& in) {
    auto skip_comment = [&](std::string& tok) {
        // "c" opens a comment running to the end of the line
        while (tok == "c") {
            std::string rest;
            std::getline(in, rest);
            if (!(in >> tok)) return false;
        }
        return true;
    };

    std::string tok;
    if (!(in >> tok) || !skip_comment(tok) || tok != "p")
        throw std::invalid_argument("missing DIMACS header");
    std::string fmt;
    int num_vars = 0, num_clauses = 0;
    if (!(in >> fmt >> num_vars >> num_clauses) || fmt != "cnf")
        throw std::invalid_argument("malformed DIMACS header");

    CnfFormula f;
    f.num_vars = num_vars;
    std::vector<int> lits;
    while (static_cast<int>(f.clauses.size()) < num_clauses && in >> tok) {
        if (!skip_comment(tok)) break;
        int lit = 0;
        try {
            size_t used = 0;
            lit = std::stoi(tok, &used);
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw std::invalid_argument("stray token in DIMACS body: " + tok);
        }
        if (lit == 0) {
            if (lits.size() != 3)
                throw std::invalid_argument("every clause needs exactly 3 literals");
            f.clauses.push_back({lits[0], lits[1], lits[2]});
            lits.clear();
        } else {
            lits.push_back(lit);
        }
    }
    if (!lits.empty()) throw std::invalid_argument("unterminated clause");
    if (static_cast<int>(f.clauses.size()) != num_clauses)
        throw std::invalid_argument("clause count does not match the header");
    validate_formula(f);
    return f;
}

CnfFormula read_dimacs_cnf_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    return read_dimacs_cnf(in);
}

void write_dimacs_cnf(std::ostream& out, const CnfFormula& f) {
    out << "p cnf " << f.num_vars << ' ' << f.clauses.size() << '\n';
    for (const auto& clause : f.clauses)
        out << clause[0] << ' ' << clause[1] << ' ' << clause[2] << " 0\n";
}

const char* gadget_role_name(GadgetRole role) {
    switch (role) {
        case GadgetRole::kClauseA: return "clause_a";
        case GadgetRole::kClauseB: return "clause_b";
        case GadgetRole::kClauseLiteral: return "clause_literal";
        case GadgetRole::kHexagonA: return "hex_a";
        case GadgetRole::kHexagonB: return "hex_b";
        case GadgetRole::kHexagonPositive: return "hex_pos";
        case GadgetRole::kHexagonNegative: return "hex_neg";
        case GadgetRole::kHexagonCorner: return "hex_corner";
        case GadgetRole::kDiamondTop: return "diamond_top";
        case GadgetRole::kDiamondBottom: return "diamond_bottom";
        case GadgetRole::kDiamondCorner: return "diamond_corner";
    }
    return "unknown";
}

namespace {

struct Occurrence {
    int clause = 0;
    int slot = 0;
    bool positive = false;
};

}  // namespace

RoutingReductionInstance build_sat_instance(const CnfFormula& f, int chain_len) {
    validate_formula(f);
    if (chain_len < 1) throw std::invalid_argument("chain length must be at least 1");

    RoutingReductionInstance inst;
    inst.formula = f;
    inst.chain_len = chain_len;

    std::vector<VertexProvenance> prov;
    std::vector<std::pair<int, int>> edges;
    std::vector<std::pair<int, int>> two_cycles;

    auto add_vertex = [&](GadgetRole role, int variable, int clause, int index, int chain) {
        prov.push_back({role, variable, clause, index, chain});
        return static_cast<int>(prov.size()) - 1;
    };

    auto add_chain = [&](int from, int to) {
        int id = static_cast<int>(inst.chains.size());
        DiamondChain chain;
        chain.corners.push_back(from);
        for (int j = 1; j < chain_len; ++j)
            chain.corners.push_back(add_vertex(GadgetRole::kDiamondCorner, -1, -1, j, id));
        chain.corners.push_back(to);
        for (int j = 0; j < chain_len; ++j) {
            int top = add_vertex(GadgetRole::kDiamondTop, -1, -1, j + 1, id);
            int bottom = add_vertex(GadgetRole::kDiamondBottom, -1, -1, j + 1, id);
            edges.emplace_back(chain.corners[j], top);
            edges.emplace_back(top, chain.corners[j + 1]);
            edges.emplace_back(chain.corners[j + 1], bottom);
            edges.emplace_back(bottom, chain.corners[j]);
            chain.pairs.emplace_back(top, bottom);
            two_cycles.emplace_back(top, bottom);
        }
        inst.chains.push_back(std::move(chain));
        return id;
    };

    // Clause gadgets first so the wiring chains can target their middles.
    for (int c = 0; c < static_cast<int>(f.clauses.size()); ++c) {
        ClauseGadget cg;
        cg.a = add_vertex(GadgetRole::kClauseA, -1, c, -1, -1);
        cg.b = add_vertex(GadgetRole::kClauseB, -1, c, -1, -1);
        for (int s = 0; s < 3; ++s) {
            int lv = add_vertex(GadgetRole::kClauseLiteral, std::abs(f.clauses[c][s]), c, s, -1);
            edges.emplace_back(cg.a, lv);
            edges.emplace_back(lv, cg.b);
            cg.literal_vertex[s] = lv;
        }
        two_cycles.emplace_back(cg.a, cg.b);
        inst.clause_gadgets.push_back(cg);
    }

    std::vector<std::vector<Occurrence>> occ(f.num_vars + 1);
    for (int c = 0; c < static_cast<int>(f.clauses.size()); ++c)
        for (int s = 0; s < 3; ++s) {
            int lit = f.clauses[c][s];
            occ[std::abs(lit)].push_back({c, s, lit > 0});
        }

    for (int v = 1; v <= f.num_vars; ++v) {
        int m = static_cast<int>(occ[v].size());
        if (m == 0) continue;
        VariableGadget vg;
        vg.variable = v;
        for (int j = 1; j <= m + 1; ++j)
            vg.corners.push_back(add_vertex(GadgetRole::kHexagonCorner, v, -1, j, -1));
        for (int i = 1; i <= m; ++i) {
            HexagonGadget hx;
            hx.a = add_vertex(GadgetRole::kHexagonA, v, -1, i, -1);
            hx.b = add_vertex(GadgetRole::kHexagonB, v, -1, i, -1);
            hx.pos = add_vertex(GadgetRole::kHexagonPositive, v, -1, i, -1);
            hx.neg = add_vertex(GadgetRole::kHexagonNegative, v, -1, i, -1);
            int left = vg.corners[i - 1], right = vg.corners[i];
            edges.emplace_back(hx.a, hx.pos);
            edges.emplace_back(hx.pos, left);
            edges.emplace_back(left, hx.b);
            edges.emplace_back(hx.b, hx.neg);
            edges.emplace_back(hx.neg, right);
            edges.emplace_back(right, hx.a);
            two_cycles.emplace_back(hx.a, hx.b);
            vg.hexagons.push_back(hx);
        }
        vg.internal_chain = add_chain(vg.corners.front(), vg.corners.back());
        for (int i = 0; i < m; ++i) {
            const Occurrence& o = occ[v][i];
            int w = o.positive ? vg.hexagons[i].pos : vg.hexagons[i].neg;
            int target = inst.clause_gadgets[o.clause].literal_vertex[o.slot];
            int id = add_chain(w, target);
            vg.wiring_chain.push_back(id);
            inst.clause_gadgets[o.clause].slot_chain[o.slot] = id;
            prov[w].chain = id;
            prov[target].chain = id;
        }
        inst.variables.push_back(std::move(vg));
    }

    int n = static_cast<int>(prov.size());
    inst.graph = Graph(n, edges);
    std::vector<int> image(n);
    std::iota(image.begin(), image.end(), 0);
    for (auto [u, w] : two_cycles) {
        image[u] = w;
        image[w] = u;
    }
    inst.pi = Permutation(std::move(image));
    inst.provenance = std::move(prov);
    return inst;
}

namespace {

// The three-step swap routines. Every routine engages its whole vertex set in
// each step, and distinct routines in one schedule touch disjoint sets, so
// the per-step unions stay matchings.
struct StepSink {
    std::array<MatchingStep, 3> steps;

    // x - mid - y: the middle vertex carries both crossings.
    void swap3(int x, int mid, int y) {
        steps[0].pairs.emplace_back(x, mid);
        steps[1].pairs.emplace_back(mid, y);
        steps[2].pairs.emplace_back(x, mid);
    }

    // x - m1 - m2 - y: both ends step inward, the middles trade, both ends
    // swap back out.
    void swap4(int x, int m1, int m2, int y) {
        steps[0].pairs.emplace_back(x, m1);
        steps[0].pairs.emplace_back(m2, y);
        steps[1].pairs.emplace_back(m1, m2);
        steps[2].pairs.emplace_back(x, m1);
        steps[2].pairs.emplace_back(m2, y);
    }

    // Every diamond swaps across the corner away from the chain's busy end:
    // toward_front consumes corners[0..L-1] and spares the back terminal.
    void lean_chain(const DiamondChain& chain, bool toward_front) {
        for (size_t j = 0; j < chain.pairs.size(); ++j) {
            int corner = toward_front ? chain.corners[j] : chain.corners[j + 1];
            swap3(chain.pairs[j].first, corner, chain.pairs[j].second);
        }
    }
};

}  // namespace

std::optional<Schedule> assignment_to_schedule(const RoutingReductionInstance& inst,
                                               const std::vector<bool>& assign) {
    const CnfFormula& f = inst.formula;
    if (static_cast<int>(assign.size()) != f.num_vars)
        throw std::invalid_argument("assignment size mismatch");
    if (!formula_satisfied(f, assign)) return std::nullopt;

    StepSink sink;
    for (const VariableGadget& vg : inst.variables) {
        bool value = assign[vg.variable - 1];
        for (size_t i = 0; i < vg.hexagons.size(); ++i) {
            const HexagonGadget& hx = vg.hexagons[i];
            if (value)
                sink.swap4(hx.a, vg.corners[i + 1], hx.neg, hx.b);
            else
                sink.swap4(hx.a, hx.pos, vg.corners[i], hx.b);
            const DiamondChain& wire = inst.chains[vg.wiring_chain[i]];
            // A true literal's hexagon spares its literal vertex, so the wire
            // leans onto it, keeping the clause middle free; a false one
            // forces the wire onto the clause middle.
            bool literal_true = wire.corners.front() == hx.pos ? value : !value;
            sink.lean_chain(wire, literal_true);
        }
        // Bottom routing (value true) occupies corners u_2..u_{m+1}, top
        // routing u_1..u_m; the internal chain leans onto the spared end.
        sink.lean_chain(inst.chains[vg.internal_chain], value);
    }

    for (int c = 0; c < static_cast<int>(f.clauses.size()); ++c) {
        const ClauseGadget& cg = inst.clause_gadgets[c];
        int slot = -1;
        for (int s = 0; s < 3 && slot == -1; ++s) {
            int lit = f.clauses[c][s];
            if (assign[std::abs(lit) - 1] == (lit > 0)) slot = s;
        }
        sink.swap3(cg.a, cg.literal_vertex[slot], cg.b);
    }

    Schedule out;
    for (auto& step : sink.steps) {
        step.normalize();
        out.append(step);
    }
    auto report = verify_schedule(inst.graph, inst.pi, out);
    if (!report.valid)
        throw std::logic_error("constructed schedule failed verification: " + report.reason);
    return out;
}

std::vector<bool> extract_assignment(const RoutingReductionInstance& inst, const Schedule& s) {
    if (s.length() != 3) throw std::invalid_argument("schedule must have exactly 3 steps");
    auto report = verify_schedule(inst.graph, inst.pi, s);
    if (!report.valid)
        throw std::invalid_argument("schedule does not route the instance: " + report.reason);

    std::vector<bool> assign(inst.formula.num_vars, false);
    for (const VariableGadget& vg : inst.variables) {
        int direction = -1;  // 0 = top path, 1 = bottom path
        for (size_t i = 0; i < vg.hexagons.size(); ++i) {
            const HexagonGadget& hx = vg.hexagons[i];
            // The a-pebble sits at distance 3 from its target, so a valid
            // three-step schedule must walk it along one of the two paths.
            std::vector<int> trail{hx.a};
            for (const MatchingStep& step : s.steps) {
                int pos = trail.back();
                for (auto [u, w] : step.pairs) {
                    if (u == pos) {
                        pos = w;
                        break;
                    }
                    if (w == pos) {
                        pos = u;
                        break;
                    }
                }
                trail.push_back(pos);
            }
            std::vector<int> top{hx.a, hx.pos, vg.corners[i], hx.b};
            std::vector<int> bottom{hx.a, vg.corners[i + 1], hx.neg, hx.b};
            int dir = trail == top ? 0 : trail == bottom ? 1 : -1;
            if (dir == -1) throw std::runtime_error("hexagon pair strays off its gadget paths");
            if (direction == -1) direction = dir;
            if (direction != dir)
                throw std::runtime_error("mixed hexagon routing inside one variable gadget");
        }
        assign[vg.variable - 1] = direction == 1;
    }
    if (!formula_satisfied(inst.formula, assign))
        throw std::runtime_error("extracted assignment does not satisfy the formula");
    return assign;
}

}  // namespace rvm
