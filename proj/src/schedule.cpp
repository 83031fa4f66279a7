#include "rvm/schedule.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace rvm {

void MatchingStep::normalize() {
    for (auto& [u, v] : pairs)
        if (u > v) std::swap(u, v);
    std::sort(pairs.begin(), pairs.end());
}

bool MatchingStep::contains_vertex(int v) const {
    for (auto [a, b] : pairs)
        if (a == v || b == v) return true;
    return false;
}

PebbleConfig apply_matching(const Graph& g, const PebbleConfig& config,
                            const MatchingStep& step) {
    if (config.n() != g.n()) throw std::invalid_argument("config size mismatch");
    std::vector<char> touched(g.n(), 0);
    PebbleConfig next = config;
    for (auto [u, v] : step.pairs) {
        if (!g.has_edge(u, v))
            throw std::invalid_argument("pair " + std::to_string(u) + "-" +
                                        std::to_string(v) + " is not an edge");
        if (touched[u] || touched[v])
            throw std::invalid_argument("vertex reused within one step");
        touched[u] = touched[v] = 1;
        std::swap(next.at[u], next.at[v]);
    }
    return next;
}

PebbleConfig apply_schedule(const Graph& g, const Schedule& schedule) {
    PebbleConfig config = PebbleConfig::initial(g.n());
    for (const auto& step : schedule.steps) config = apply_matching(g, config, step);
    return config;
}


Schedule compact_schedule(int n, const Schedule& schedule) {
    Schedule out;
    std::vector<std::vector<char>> used;  // used[s][v]: slot s touches vertex v
    for (const auto& step : schedule.steps) {
        if (step.empty()) continue;
        // earliest slot after the last one sharing a vertex with this step
        int slot = static_cast<int>(out.steps.size());
        for (int s = slot - 1; s >= 0; --s) {
            bool clash = false;
            for (auto [u, v] : step.pairs)
                if (used[s][u] || used[s][v]) {
                    clash = true;
                    break;
                }
            if (clash) break;
            slot = s;
        }
        if (slot == static_cast<int>(out.steps.size())) {
            out.steps.emplace_back();
            used.emplace_back(n, 0);
        }
        auto& into = out.steps[slot];
        into.pairs.insert(into.pairs.end(), step.pairs.begin(), step.pairs.end());
        into.normalize();
        for (auto [u, v] : step.pairs) used[slot][u] = used[slot][v] = 1;
    }
    return out;
}

VerificationReport verify_schedule(const Graph& g, const Permutation& pi,
                                   const Schedule& schedule) {
    VerificationReport report;
    report.final_config = PebbleConfig::initial(g.n());
    if (pi.n() != g.n()) {
        report.reason = "permutation size does not match graph";
        return report;
    }
    for (int s = 0; s < schedule.length(); ++s) {
        const auto& step = schedule.steps[s];
        if (step.empty()) {
            report.first_bad_step = s;
            report.reason = "step " + std::to_string(s) + " is empty";
            return report;
        }
        try {
            report.final_config = apply_matching(g, report.final_config, step);
        } catch (const std::invalid_argument& e) {
            report.first_bad_step = s;
            report.reason = "step " + std::to_string(s) + ": " + e.what();
            return report;
        }
    }
    if (!report.final_config.satisfies(pi)) {
        report.reason = "final configuration does not realize the permutation";
        return report;
    }
    report.valid = true;
    return report;
}

}  // namespace rvm
