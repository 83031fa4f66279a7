#include "rvm/twostep.hpp"

#include <algorithm>
#include <stdexcept>

#include "rvm/matching.hpp"

namespace rvm {

namespace {

// Reflection t -> s - t (mod a) as matching pairs over the cycle's vertices.
// Present iff all required pairs are edges; callers precheck via votes.
MatchingStep reflection_pairs(const std::vector<int>& cycle, int s) {
    int a = static_cast<int>(cycle.size());
    MatchingStep step;
    for (int t = 0; t < a; ++t) {
        int u = ((s - t) % a + a) % a;
        if (t < u) step.pairs.emplace_back(cycle[t], cycle[u]);
    }
    step.normalize();
    return step;
}

// Pairs a reflection needs: every index not fixed by t -> s-t, in pairs.
int reflection_pairs_needed(int a, int s) {
    int fixed;
    if (a % 2 == 1)
        fixed = 1;
    else
        fixed = s % 2 == 0 ? 2 : 0;
    return (a - fixed) / 2;
}

std::optional<TwoStepScheme> self_scheme(const Graph& g, const std::vector<int>& cycle) {
    int a = static_cast<int>(cycle.size());
    if (a < 2) throw std::invalid_argument("cycle too short");
    // position of each cycle vertex, -1 elsewhere
    std::vector<int> pos(g.n(), -1);
    for (int t = 0; t < a; ++t) pos[cycle[t]] = t;
    // Each inside edge {c_t, c_u} can serve exactly the reflection s = t+u.
    std::vector<int> votes(a, 0);
    for (int t = 0; t < a; ++t)
        for (int w : g.neighbors(cycle[t])) {
            int u = pos[w];
            if (u > t) ++votes[(t + u) % a];
        }
    auto available = [&](int s) { return votes[s] == reflection_pairs_needed(a, s); };
    for (int s = 0; s < a; ++s)
        if (available(s) && available((s + 1) % a))
            return TwoStepScheme{reflection_pairs(cycle, s),
                                 reflection_pairs(cycle, (s + 1) % a)};
    return std::nullopt;
}

// Crossing pattern {x_p, y_{(c-p) mod a}} for all p.
MatchingStep crossing_pairs(const std::vector<int>& xs, const std::vector<int>& ys, int c) {
    int a = static_cast<int>(xs.size());
    MatchingStep step;
    for (int p = 0; p < a; ++p) step.pairs.emplace_back(xs[p], ys[((c - p) % a + a) % a]);
    step.normalize();
    return step;
}

std::optional<TwoStepScheme> mutual_scheme(const Graph& g, const std::vector<int>& ci,
                                           const std::vector<int>& cj) {
    if (ci.size() != cj.size()) return std::nullopt;
    int a = static_cast<int>(ci.size());
    std::vector<int> pos_j(g.n(), -1);
    for (int q = 0; q < a; ++q) pos_j[cj[q]] = q;
    // Cross edge {x_p, y_q} serves exactly the pattern c = p+q.
    std::vector<int> votes(a, 0);
    for (int p = 0; p < a; ++p)
        for (int w : g.neighbors(ci[p])) {
            int q = pos_j[w];
            if (q >= 0) ++votes[(p + q) % a];
        }
    for (int c = 0; c < a; ++c)
        if (votes[c] == a && votes[(c + 1) % a] == a)
            return TwoStepScheme{crossing_pairs(ci, cj, c), crossing_pairs(ci, cj, c + 1)};
    return std::nullopt;
}

Schedule scheme_to_schedule(const TwoStepScheme& scheme) {
    Schedule schedule;
    if (!scheme.first.empty()) schedule.append(scheme.first);
    if (!scheme.second.empty()) schedule.append(scheme.second);
    return schedule;
}

}  // namespace

std::optional<Schedule> self_routable(const Graph& g, const std::vector<int>& cycle) {
    auto scheme = self_scheme(g, cycle);
    if (!scheme) return std::nullopt;
    return scheme_to_schedule(*scheme);
}

std::optional<Schedule> mutually_routable(const Graph& g, const std::vector<int>& cycle_i,
                                          const std::vector<int>& cycle_j) {
    auto scheme = mutual_scheme(g, cycle_i, cycle_j);
    if (!scheme) return std::nullopt;
    return scheme_to_schedule(*scheme);
}

CycleGraph build_cycle_graph(const Graph& g, const Permutation& pi) {
    CycleGraph cg;
    cg.nodes = cycle_decompose(pi).cycles;
    int k = static_cast<int>(cg.nodes.size());
    cg.loops.assign(k, 0);
    cg.loop_schemes.assign(k, {});
    for (int i = 0; i < k; ++i) {
        if (cg.nodes[i].size() == 1) {
            cg.loops[i] = 1;  // a fixed point routes itself by doing nothing
            continue;
        }
        if (auto scheme = self_scheme(g, cg.nodes[i])) {
            cg.loops[i] = 1;
            cg.loop_schemes[i] = *scheme;
        }
    }
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) {
            if (cg.nodes[i].size() != cg.nodes[j].size()) continue;
            if (auto scheme = mutual_scheme(g, cg.nodes[i], cg.nodes[j])) {
                cg.edges.emplace_back(i, j);
                cg.edge_schemes.push_back(*scheme);
            }
        }
    return cg;
}

std::optional<Schedule> route_in_two(const Graph& g, const Permutation& pi) {
    if (pi.n() != g.n()) throw std::invalid_argument("permutation size mismatch");
    if (pi.is_identity()) return Schedule{};

    // rt = 1: an involution whose swapped pairs are disjoint edges.
    bool involution_on_edges = true;
    MatchingStep one_step;
    for (int i = 0; i < pi.n() && involution_on_edges; ++i) {
        if (pi(i) == i) continue;
        if (pi(pi(i)) != i || !g.has_edge(i, pi(i)))
            involution_on_edges = false;
        else if (i < pi(i))
            one_step.pairs.emplace_back(i, pi(i));
    }
    if (involution_on_edges) {
        one_step.normalize();
        Schedule schedule;
        schedule.append(one_step);
        return schedule;
    }

    CycleGraph cg = build_cycle_graph(g, pi);
    int k = static_cast<int>(cg.nodes.size());

    // Perfect matching where loops may cover their own node, solved as plain
    // perfect matching: give every looped node a pendant clone (its "stay
    // single" option), join the clones into a clique so unused clones can
    // absorb each other, and add one parity vertex adjacent to all clones if
    // the total count is odd. A perfect matching exists in the gadget iff the
    // loops-allowed matching exists on the cycle graph.
    std::vector<int> clone_of(k, -1);
    int total = k;
    for (int i = 0; i < k; ++i)
        if (cg.loops[i]) clone_of[i] = total++;
    int first_clone = k;
    int clones = total - k;
    bool parity = (total % 2) != 0;
    int z = parity ? total++ : -1;

    Graph gadget(total);
    for (auto [i, j] : cg.edges) gadget.add_edge(i, j);
    for (int i = 0; i < k; ++i)
        if (clone_of[i] != -1) gadget.add_edge(i, clone_of[i]);
    for (int a = 0; a < clones; ++a)
        for (int b = a + 1; b < clones; ++b)
            gadget.add_edge(first_clone + a, first_clone + b);
    if (z != -1)
        for (int a = 0; a < clones; ++a) gadget.add_edge(first_clone + a, z);

    auto mate = max_matching(gadget);
    for (int v = 0; v < total; ++v)
        if (mate[v] == -1) return std::nullopt;  // no perfect matching

    // Merge sub-schedules; distinct cycle-graph nodes touch disjoint vertices.
    MatchingStep step1, step2;
    auto add_scheme = [&](const TwoStepScheme& scheme) {
        for (auto p : scheme.first.pairs) step1.pairs.push_back(p);
        for (auto p : scheme.second.pairs) step2.pairs.push_back(p);
    };
    for (int i = 0; i < k; ++i) {
        int m = mate[i];
        if (m == clone_of[i]) {
            if (cg.nodes[i].size() >= 2) add_scheme(cg.loop_schemes[i]);
        } else if (m > i) {
            // matched pair of cycles: find the stored scheme
            for (size_t e = 0; e < cg.edges.size(); ++e)
                if (cg.edges[e] == std::make_pair(i, m)) {
                    add_scheme(cg.edge_schemes[e]);
                    break;
                }
        }
    }
    step1.normalize();
    step2.normalize();
    Schedule schedule;
    if (!step1.empty()) schedule.append(step1);
    if (!step2.empty()) schedule.append(step2);
    return schedule;
}

}  // namespace rvm
