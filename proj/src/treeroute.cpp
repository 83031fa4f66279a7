#include "rvm/treeroute.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>

namespace rvm {

RootedTree RootedTree::build(const Graph& g, int root) {
    if (!g.is_tree()) throw std::invalid_argument("graph is not a tree");
    if (root < 0 || root >= g.n()) throw std::invalid_argument("root out of range");
    RootedTree t;
    t.graph = g;
    t.root = root;
    t.parent.assign(g.n(), -1);
    t.level.assign(g.n(), -1);
    t.level[root] = 0;
    std::vector<int> queue{root};
    for (size_t head = 0; head < queue.size(); ++head) {
        int v = queue[head];
        for (int w : g.neighbors(v))
            if (t.level[w] == -1) {
                t.level[w] = t.level[v] + 1;
                t.parent[w] = v;
                queue.push_back(w);
            }
    }
    return t;
}

namespace {

// Recursive centroid router. Tracks the live configuration globally; each
// call only touches its own vertex set, so sibling schedules merge step-wise.
struct TreeRouter {
    const Graph& g;
    std::vector<int> at;   // at[v] = pebble on v
    std::vector<int> pos;  // pos[p] = vertex of pebble p
    std::vector<int> dest;  // dest[p] = target vertex of pebble p

    explicit TreeRouter(const Graph& graph, const Permutation& pi)
        : g(graph), at(graph.n()), pos(graph.n()), dest(graph.n()) {
        for (int v = 0; v < g.n(); ++v) at[v] = pos[v] = v;
        for (int p = 0; p < g.n(); ++p) dest[p] = pi(p);
    }

    void apply_swap(int u, int v) {
        std::swap(at[u], at[v]);
        pos[at[u]] = u;
        pos[at[v]] = v;
    }

    void apply_step(const MatchingStep& step) {
        for (auto [u, v] : step.pairs) apply_swap(u, v);
    }

    bool all_done(const std::vector<int>& verts) const {
        for (int v : verts)
            if (dest[at[v]] != v) return false;
        return true;
    }

    std::vector<int> neighbors_in(const std::vector<char>& inside, int v) const {
        std::vector<int> out;
        for (int w : g.neighbors(v))
            if (inside[w]) out.push_back(w);
        return out;
    }

    std::vector<MatchingStep> route(const std::vector<int>& verts) {
        if (verts.size() <= 1 || all_done(verts)) return {};
        std::vector<char> inside(g.n(), 0);
        for (int v : verts) inside[v] = 1;
        bool path = true;
        for (int v : verts)
            if (neighbors_in(inside, v).size() > 2) {
                path = false;
                break;
            }
        if (path) return route_path(verts, inside);
        return route_centroid(verts, inside);
    }

    // Odd-even transposition sort along the path; at most |path| rounds.
    // Both starting parities are tried on a scratch copy, shorter one wins.
    std::vector<MatchingStep> route_path(const std::vector<int>& verts,
                                         const std::vector<char>& inside) {
        int m = static_cast<int>(verts.size());
        std::vector<int> order;
        for (int v : verts)
            if (neighbors_in(inside, v).size() <= 1) order.push_back(v);
        // order[0] is the smaller endpoint; walk to the other end
        order.resize(1);
        int prev = -1;
        while (static_cast<int>(order.size()) < m) {
            for (int w : neighbors_in(inside, order.back()))
                if (w != prev) {
                    prev = order.back();
                    order.push_back(w);
                    break;
                }
        }
        std::vector<int> index(g.n(), -1);
        for (int i = 0; i < m; ++i) index[order[i]] = i;

        auto simulate = [&](int first_parity, bool apply) {
            std::vector<int> key(m);
            for (int i = 0; i < m; ++i) key[i] = index[dest[at[order[i]]]];
            std::vector<MatchingStep> steps;
            int parity = first_parity;
            for (int round = 0; round < 2 * m + 4; ++round) {
                if (std::is_sorted(key.begin(), key.end())) break;
                MatchingStep step;
                for (int i = parity; i + 1 < m; i += 2)
                    if (key[i] > key[i + 1]) {
                        std::swap(key[i], key[i + 1]);
                        step.pairs.emplace_back(std::min(order[i], order[i + 1]),
                                                std::max(order[i], order[i + 1]));
                    }
                if (!step.empty()) {
                    step.normalize();
                    steps.push_back(step);
                    if (apply) apply_step(step);
                }
                parity ^= 1;
            }
            if (!std::is_sorted(key.begin(), key.end()))
                throw std::logic_error("odd-even sort did not converge");
            return steps;
        };
        int len0 = static_cast<int>(simulate(0, false).size());
        int len1 = static_cast<int>(simulate(1, false).size());
        return simulate(len1 < len0 ? 1 : 0, true);
    }

    int centroid_of(const std::vector<int>& verts, const std::vector<char>& inside) {
        int total = static_cast<int>(verts.size());
        std::vector<int> size(g.n(), 0), par(g.n(), -2), order;
        order.reserve(total);
        order.push_back(verts[0]);
        par[verts[0]] = -1;
        for (size_t head = 0; head < order.size(); ++head) {
            int v = order[head];
            for (int w : neighbors_in(inside, v))
                if (par[w] == -2) {
                    par[w] = v;
                    order.push_back(w);
                }
        }
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            size[*it] += 1;
            if (par[*it] >= 0) size[par[*it]] += size[*it];
        }
        int best = -1, best_weight = total + 1;
        for (int v : verts) {
            int weight = total - size[v];
            for (int w : neighbors_in(inside, v))
                if (par[w] == v) weight = std::max(weight, size[w]);
            if (weight < best_weight) {
                best_weight = weight;
                best = v;
            }
        }
        return best;
    }

    struct Event {
        int gate;      // branch gate vertex the centroid swaps with
        int branch;    // branch id
        int outbound;  // pebble that must sit at the gate
        int inbound;   // pebble arriving from the centroid
    };

    std::vector<MatchingStep> route_centroid(const std::vector<int>& verts,
                                             const std::vector<char>& inside) {
        int c = centroid_of(verts, inside);

        // Branch labeling: part 0 is {c}, parts 1.. are the components of
        // the subtree minus c, each entered through its gate neighbor.
        std::vector<int> part(g.n(), -1);
        part[c] = 0;
        std::vector<int> gates{-1};
        std::vector<std::vector<int>> branch_verts{{}};
        std::vector<int> toward_gate(g.n(), -1);
        for (int nb : neighbors_in(inside, c)) {
            if (part[nb] != -1) continue;
            int b = static_cast<int>(gates.size());
            gates.push_back(nb);
            branch_verts.push_back({});
            std::vector<int> queue{nb};
            part[nb] = b;
            for (size_t head = 0; head < queue.size(); ++head) {
                int v = queue[head];
                branch_verts[b].push_back(v);
                for (int w : neighbors_in(inside, v))
                    if (part[w] == -1 && w != c) {
                        part[w] = b;
                        toward_gate[w] = v;
                        queue.push_back(w);
                    }
            }
        }
        int parts = static_cast<int>(gates.size());

        // Demand arcs between parts, one per pebble that must change part.
        std::map<std::pair<int, int>, std::deque<int>> bucket;
        std::vector<std::vector<std::pair<int, int>>> out(parts);  // (to, arc id)
        int arc_count = 0;
        for (int v : verts) {
            int p = at[v];
            int from = part[v], to = part[dest[p]];
            if (from != to) {
                bucket[{from, to}].push_back(p);
                out[from].emplace_back(to, arc_count++);
            }
        }

        // Closed-trail decomposition (Hierholzer); the component through the
        // centroid part goes first so its trail needs no parking.
        std::vector<size_t> next_arc(parts, 0);
        std::vector<char> arc_used(arc_count, 0);
        auto circuit_from = [&](int start) {
            // iterative Hierholzer producing the arc walk from `start`
            std::vector<std::pair<int, int>> walk;  // (from, to)
            std::vector<int> stack{start};
            std::vector<std::pair<int, int>> trail;
            while (!stack.empty()) {
                int v = stack.back();
                while (next_arc[v] < out[v].size() && arc_used[out[v][next_arc[v]].second])
                    ++next_arc[v];
                if (next_arc[v] == out[v].size()) {
                    stack.pop_back();
                    if (!stack.empty()) trail.emplace_back(stack.back(), v);
                } else {
                    auto [to, id] = out[v][next_arc[v]];
                    arc_used[id] = 1;
                    stack.push_back(to);
                }
            }
            std::reverse(trail.begin(), trail.end());
            return trail;  // sequence of arcs (from, to)
        };

        std::vector<Event> events;
        int occupant = at[c];
        auto emit_circuit = [&](const std::vector<std::pair<int, int>>& arcs, bool parked) {
            if (arcs.empty()) return;
            std::vector<int> pebbles;
            pebbles.reserve(arcs.size());
            for (auto [from, to] : arcs) {
                auto& q = bucket[{from, to}];
                pebbles.push_back(q.front());
                q.pop_front();
            }
            int m = static_cast<int>(arcs.size());
            if (!parked) {
                // starts and ends at the centroid part
                for (int i = 0; i + 1 < m; ++i)
                    events.push_back(
                        {gates[arcs[i].second], arcs[i].second, pebbles[i + 1], pebbles[i]});
                occupant = pebbles[m - 1];
            } else {
                int r = occupant;
                events.push_back({gates[arcs[0].first], arcs[0].first, pebbles[0], r});
                for (int i = 0; i + 1 < m; ++i)
                    events.push_back(
                        {gates[arcs[i].second], arcs[i].second, pebbles[i + 1], pebbles[i]});
                events.push_back({gates[arcs[m - 1].second], arcs[m - 1].second, r,
                                  pebbles[m - 1]});
            }
        };

        emit_circuit(circuit_from(0), false);
        for (int s = 1; s < parts; ++s) {
            while (true) {
                auto arcs = circuit_from(s);
                if (arcs.empty()) break;
                emit_circuit(arcs, true);
            }
        }

        // Per-branch exit queues in event order.
        std::vector<std::deque<int>> convoy(parts);
        for (const Event& e : events) convoy[e.branch].push_back(e.outbound);

        // Execute: at most one centroid exchange per step, while every
        // branch rolls its exit queue toward the gate in queue order.
        std::vector<MatchingStep> steps;
        std::vector<size_t> settled(parts, 0);  // step after a branch's last event
        size_t eptr = 0;
        std::vector<char> used(g.n(), 0);
        int guard = 0;
        while (eptr < events.size()) {
            if (++guard > 100 * g.n() + 1000)
                throw std::logic_error("centroid exchange failed to make progress");
            std::fill(used.begin(), used.end(), 0);
            MatchingStep step;
            const Event& e = events[eptr];
            if (at[e.gate] == e.outbound) {
                step.pairs.emplace_back(std::min(e.gate, c), std::max(e.gate, c));
                used[e.gate] = used[c] = 1;
                convoy[e.branch].pop_front();
                settled[e.branch] = steps.size() + 1;
                ++eptr;
            }
            for (int b = 1; b < parts; ++b)
                for (int q : convoy[b]) {
                    int v = pos[q];
                    if (part[v] != b) continue;  // not delivered into b yet
                    int w = v == gates[b] ? -1 : toward_gate[v];
                    if (w == -1 || used[v] || used[w]) continue;
                    step.pairs.emplace_back(std::min(v, w), std::max(v, w));
                    used[v] = used[w] = 1;
                }
            if (step.empty()) throw std::logic_error("centroid exchange stalled");
            step.normalize();
            apply_step(step);
            steps.push_back(std::move(step));
        }

        // Every pebble now sits in the part that owns its destination. A
        // branch goes quiet right after its last exchange, so its recursive
        // cleanup overlaps the remaining exchanges of the other branches.
        for (int b = 1; b < parts; ++b) {
            std::vector<MatchingStep> sub = route(branch_verts[b]);
            for (size_t i = 0; i < sub.size(); ++i) {
                size_t slot = settled[b] + i;
                if (slot == steps.size()) steps.emplace_back();
                MatchingStep& into = steps[slot];
                into.pairs.insert(into.pairs.end(), sub[i].pairs.begin(),
                                  sub[i].pairs.end());
                into.normalize();
            }
        }
        return steps;
    }
};

}  // namespace

Schedule route_tree(const RootedTree& t, const Permutation& pi) {
    if (pi.n() != t.n()) throw std::invalid_argument("permutation size mismatch");
    TreeRouter router(t.graph, pi);
    std::vector<int> all(t.n());
    for (int v = 0; v < t.n(); ++v) all[v] = v;
    Schedule schedule;
    schedule.steps = router.route(all);
    return schedule;
}

namespace {

// Tree path from u to v, endpoints included.
std::vector<int> tree_path(const RootedTree& t, int u, int v) {
    std::vector<int> up, down;
    int a = u, b = v;
    while (t.level[a] > t.level[b]) {
        up.push_back(a);
        a = t.parent[a];
    }
    while (t.level[b] > t.level[a]) {
        down.push_back(b);
        b = t.parent[b];
    }
    while (a != b) {
        up.push_back(a);
        down.push_back(b);
        a = t.parent[a];
        b = t.parent[b];
    }
    up.push_back(a);
    up.insert(up.end(), down.rbegin(), down.rend());
    return up;
}

}  // namespace

int subset_task_span(const RootedTree& t, const SubsetTask& task) {
    int l = 0;
    for (auto [src, dst] : task.pebbles)
        l = std::max(l, static_cast<int>(tree_path(t, src, dst).size()) - 1);
    return l;
}

Schedule route_subset_tree(const RootedTree& t, const SubsetTask& task) {
    int n = t.n();
    std::vector<char> src_seen(n, 0), dst_seen(n, 0);
    for (auto [src, dst] : task.pebbles) {
        if (src < 0 || src >= n || dst < 0 || dst >= n)
            throw std::invalid_argument("task vertex out of range");
        if (src_seen[src]) throw std::invalid_argument("duplicate task source");
        if (dst_seen[dst]) throw std::invalid_argument("duplicate task destination");
        src_seen[src] = dst_seen[dst] = 1;
    }

    int p = task.p();
    std::vector<int> at(n, -1);  // task index on a vertex, -1 for bystanders
    std::vector<int> pos(p), dst(p);
    std::vector<char> active(p, 1);
    for (int i = 0; i < p; ++i) {
        pos[i] = task.pebbles[i].first;
        dst[i] = task.pebbles[i].second;
        at[pos[i]] = i;
    }

    // All pebbles walk their tree paths at once, one edge per round. Rules,
    // in strict priority order:
    //   - two active pebbles that each want the other's vertex cross with
    //     one swap; this is what unwinds rotation cycles;
    //   - a walker steps onto an empty vertex, or displaces a pebble parked
    //     on its own target, reactivating it one edge away; it never moves
    //     an active pebble aside, it queues behind it instead.
    // Every round makes progress: follow any blocked walker's want chain;
    // positions are distinct and tree walks cannot close without reversing
    // an edge, so the chain ends in a free grant or a mutual pair. Each
    // move advances a walker one edge, a pebble reactivates at most once
    // per pebble passing its target, and parking is free, which bounds the
    // total number of rounds and makes the final guard unreachable.
    Schedule out;
    int span = subset_task_span(t, task);
    long long guard = 0;
    long long guard_limit =
        static_cast<long long>(p) * span +
        2ll * p * std::min(span, p) + p + 64;
    std::vector<int> want(p), d(p);
    std::vector<char> used(n), moved(p);
    while (true) {
        std::vector<int> walkers;
        for (int i = 0; i < p; ++i) {
            if (!active[i]) continue;
            auto path = tree_path(t, pos[i], dst[i]);
            d[i] = static_cast<int>(path.size()) - 1;
            if (d[i] == 0) {
                active[i] = 0;  // parked; through-traffic may bump it later
                continue;
            }
            want[i] = path[1];
            walkers.push_back(i);
        }
        if (walkers.empty()) break;
        if (++guard > guard_limit)
            throw std::logic_error("subset routing exceeded its step budget");

        std::sort(walkers.begin(), walkers.end(), [&](int a, int b) {
            return d[a] != d[b] ? d[a] > d[b] : a < b;
        });

        MatchingStep step;
        std::fill(used.begin(), used.end(), 0);
        std::fill(moved.begin(), moved.end(), 0);
        auto grant = [&](int u, int v) {
            step.pairs.emplace_back(std::min(u, v), std::max(u, v));
            used[u] = used[v] = 1;
            std::swap(at[u], at[v]);
        };
        for (int i : walkers) {  // crossings first
            if (moved[i]) continue;
            int u = pos[i], v = want[i];
            if (used[u] || used[v]) continue;
            int j = at[v];
            if (j == -1 || !active[j] || moved[j] || want[j] != u) continue;
            grant(u, v);
            pos[i] = v;
            pos[j] = u;
            moved[i] = moved[j] = 1;
        }
        for (int i : walkers) {
            if (moved[i]) continue;
            int u = pos[i], v = want[i];
            if (used[u] || used[v]) continue;
            int j = at[v];
            if (j != -1 && active[j]) continue;  // queue behind a walker
            grant(u, v);
            pos[i] = v;
            moved[i] = 1;
            if (j != -1) {  // bumped a parked pebble off its target
                pos[j] = u;
                active[j] = 1;
                moved[j] = 1;
            }
        }
        if (step.empty()) throw std::logic_error("subset routing stalled");
        step.normalize();
        out.steps.push_back(std::move(step));
    }
    return compact_schedule(n, out);
}

int PipelineSchedule::replace_count() const {
    int count = 0;
    for (const auto& e : events) count += e.kind == PipelineEvent::kReplace;
    return count;
}

std::vector<int> reverse_level_order(const RootedTree& t) {
    std::vector<int> order(t.n());
    for (int v = 0; v < t.n(); ++v) order[v] = v;
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return t.level[a] > t.level[b]; });
    return order;
}

PipelineSchedule pipeline_fill(const RootedTree& t,
                               const std::vector<PipelineIncoming>& incoming) {
    int k = t.n();
    if (static_cast<int>(incoming.size()) != k)
        throw std::invalid_argument("pipeline needs exactly one pebble per vertex");
    std::vector<char> dst_seen(k, 0);
    for (const auto& in : incoming) {
        if (in.dest < 0 || in.dest >= k) throw std::invalid_argument("dest out of range");
        if (dst_seen[in.dest]) throw std::invalid_argument("duplicate destination");
        dst_seen[in.dest] = 1;
    }
    for (int i = 0; i + 1 < k; ++i)
        if (t.level[incoming[i].dest] < t.level[incoming[i + 1].dest])
            throw std::invalid_argument("destinations not in reverse level order");

    // Root-to-destination paths; every delivered pebble only travels down.
    std::vector<std::vector<int>> path(k);
    for (int i = 0; i < k; ++i) {
        for (int v = incoming[i].dest; v != -1; v = t.parent[v]) path[i].push_back(v);
        std::reverse(path[i].begin(), path[i].end());
    }

    constexpr int kJunk = -1;
    std::vector<int> at(k, kJunk);   // delivered pebble index or junk
    std::vector<int> where(k, -1);   // path position of delivered pebble i
    PipelineSchedule out;

    auto down_move_step = [&](int parity) {
        MatchingStep step;
        std::vector<int> movers;
        for (int i = 0; i < k; ++i) {
            if (where[i] < 0) continue;
            if (where[i] + 1 == static_cast<int>(path[i].size())) continue;  // parked
            int v = path[i][where[i]];
            if (t.level[v] % 2 != parity) continue;
            int w = path[i][where[i] + 1];
            if (at[w] != kJunk) throw std::logic_error("pipeline lane not clear");
            step.pairs.emplace_back(std::min(v, w), std::max(v, w));
            movers.push_back(i);
        }
        step.normalize();
        for (int i : movers) {
            std::swap(at[path[i][where[i]]], at[path[i][where[i] + 1]]);
            ++where[i];
        }
        return step;
    };

    for (int r = 0; r < k; ++r) {
        if (at[t.root] != kJunk) throw std::logic_error("replace would evict a delivery");
        at[t.root] = r;
        where[r] = 0;
        PipelineEvent ev;
        ev.kind = PipelineEvent::kReplace;
        ev.replace = {t.root, incoming[r].pebble};
        out.events.push_back(ev);
        for (int parity : {0, 1}) {
            MatchingStep step = down_move_step(parity);
            if (!step.empty()) {
                PipelineEvent me;
                me.kind = PipelineEvent::kMatch;
                me.match = step;
                out.events.push_back(me);
            }
        }
    }
    for (int i = 0; i < k; ++i)
        if (where[i] + 1 != static_cast<int>(path[i].size()))
            throw std::logic_error("pipeline failed to park every pebble");
    return out;
}

bool verify_pipeline_fill(const RootedTree& t,
                          const std::vector<PipelineIncoming>& incoming,
                          const PipelineSchedule& schedule, std::string* why) {
    auto fail = [&](const std::string& reason) {
        if (why) *why = reason;
        return false;
    };
    int k = t.n();
    if (static_cast<int>(incoming.size()) != k) return fail("wrong incoming count");
    std::vector<int> at(k, -1);  // delivered index or -1 junk
    std::vector<int> dest(k);
    for (int i = 0; i < k; ++i) dest[i] = incoming[i].dest;
    int delivered = 0;
    int matches_since_replace = 2;  // allow nothing before the first replace

    auto invariant_ok = [&]() {
        for (int v = 0; v < k; ++v) {
            int i = at[v];
            if (i == -1) continue;
            if (v != dest[i] && t.level[v] % 2 != 0) return false;
        }
        return true;
    };

    for (const auto& ev : schedule.events) {
        if (ev.kind == PipelineEvent::kReplace) {
            if (delivered >= k) return fail("too many replace events");
            if (ev.replace.vertex != t.root) return fail("replace away from root");
            if (ev.replace.pebble != incoming[delivered].pebble)
                return fail("replace out of order");
            if (at[t.root] != -1) return fail("replace evicted a delivered pebble");
            if (!invariant_ok()) return fail("even-level invariant violated");
            at[t.root] = delivered++;
            matches_since_replace = 0;
        } else {
            if (++matches_since_replace > 2) return fail("more than two matchings in a round");
            if (ev.match.empty()) return fail("empty matching event");
            std::vector<char> used(k, 0);
            for (auto [u, v] : ev.match.pairs) {
                if (!t.graph.has_edge(u, v)) return fail("match pair is not a tree edge");
                if (used[u] || used[v]) return fail("vertex reused in one match");
                used[u] = used[v] = 1;
                std::swap(at[u], at[v]);
            }
        }
    }
    if (delivered != k) return fail("missing replace events");
    for (int i = 0; i < k; ++i)
        if (at[dest[i]] != i) return fail("a pebble missed its destination");
    return true;
}

}  // namespace rvm
