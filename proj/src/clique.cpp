#include "rvm/clique.hpp"

#include <algorithm>

namespace rvm {

namespace {

// Greedy coloring of the induced subgraph on `cand`; the number of colors
// bounds the largest clique inside cand from above.
int color_bound(const Graph& g, const std::vector<int>& cand) {
    int colors = 0;
    std::vector<int> color(cand.size(), -1);
    for (size_t i = 0; i < cand.size(); ++i) {
        std::vector<char> used(colors, 0);
        for (size_t j = 0; j < i; ++j)
            if (g.has_edge(cand[i], cand[j])) used[color[j]] = 1;
        int c = 0;
        while (c < colors && used[c]) ++c;
        if (c == colors) ++colors;
        color[i] = c;
    }
    return colors;
}

struct CliqueSearch {
    const Graph& g;
    std::vector<int> best;
    std::vector<int> current;

    // Candidates stay sorted and the include branch goes first, so cliques
    // are visited in lexicographic order of their sorted vertex lists and the
    // first one of each new size is the lexicographically smallest. Strictly
    // greater updates keep it.
    void run(std::vector<int>& cand) {
        if (current.size() > best.size()) best = current;
        if (cand.empty()) return;
        if (current.size() + color_bound(g, cand) <= best.size()) return;
        int v = cand.front();
        std::vector<int> with_v;
        for (int w : cand)
            if (g.has_edge(v, w)) with_v.push_back(w);
        current.push_back(v);
        run(with_v);
        current.pop_back();
        std::vector<int> without_v(cand.begin() + 1, cand.end());
        run(without_v);
    }
};

}  // namespace

std::vector<int> max_clique_exact(const Graph& g) {
    CliqueSearch search{g, {}, {}};
    std::vector<int> all(g.n());
    for (int v = 0; v < g.n(); ++v) all[v] = v;
    search.run(all);
    return search.best;
}

int clique_number(const Graph& g) {
    return static_cast<int>(max_clique_exact(g).size());
}

}  // namespace rvm
