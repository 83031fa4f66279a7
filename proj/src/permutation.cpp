#include "rvm/permutation.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace rvm {

Permutation::Permutation(int n) : image_(n) {
    if (n < 0) throw std::invalid_argument("permutation size must be nonnegative");
    std::iota(image_.begin(), image_.end(), 0);
}

Permutation::Permutation(std::vector<int> image) : image_(std::move(image)) {
    int n = static_cast<int>(image_.size());
    std::vector<char> seen(n, 0);
    for (int v : image_) {
        if (v < 0 || v >= n || seen[v])
            throw std::invalid_argument("permutation image is not a bijection");
        seen[v] = 1;
    }
}

Permutation Permutation::identity(int n) { return Permutation(n); }

Permutation Permutation::random(int n, std::mt19937& rng) {
    std::vector<int> image(n);
    std::iota(image.begin(), image.end(), 0);
    std::shuffle(image.begin(), image.end(), rng);
    return Permutation(std::move(image));
}

Permutation Permutation::from_cycles(int n, const std::vector<std::vector<int>>& cycles) {
    std::vector<int> image(n);
    std::iota(image.begin(), image.end(), 0);
    std::vector<char> used(n, 0);
    for (const auto& cycle : cycles) {
        for (int v : cycle) {
            if (v < 0 || v >= n) throw std::invalid_argument("cycle vertex out of range");
            if (used[v]) throw std::invalid_argument("vertex repeated across cycles");
            used[v] = 1;
        }
        int a = static_cast<int>(cycle.size());
        for (int i = 0; i < a; ++i) image[cycle[i]] = cycle[(i + 1) % a];
    }
    return Permutation(std::move(image));
}

bool Permutation::is_identity() const {
    for (int i = 0; i < n(); ++i)
        if (image_[i] != i) return false;
    return true;
}

Permutation Permutation::inverse() const {
    std::vector<int> inv(image_.size());
    for (int i = 0; i < n(); ++i) inv[image_[i]] = i;
    return Permutation(std::move(inv));
}

Permutation compose(const Permutation& p, const Permutation& q) {
    if (p.n() != q.n()) throw std::invalid_argument("compose: size mismatch");
    std::vector<int> image(p.n());
    for (int i = 0; i < p.n(); ++i) image[i] = p(q(i));
    return Permutation(std::move(image));
}

CycleDecomposition cycle_decompose(const Permutation& pi) {
    CycleDecomposition dec;
    std::vector<char> seen(pi.n(), 0);
    for (int start = 0; start < pi.n(); ++start) {
        if (seen[start]) continue;
        std::vector<int> cycle;
        for (int v = start; !seen[v]; v = pi(v)) {
            seen[v] = 1;
            cycle.push_back(v);
        }
        dec.cycles.push_back(std::move(cycle));
    }
    return dec;
}

Permutation permutation_from_decomposition(int n, const CycleDecomposition& dec) {
    return Permutation::from_cycles(n, dec.cycles);
}

PebbleConfig PebbleConfig::initial(int n) {
    PebbleConfig c;
    c.at.resize(n);
    std::iota(c.at.begin(), c.at.end(), 0);
    return c;
}

bool PebbleConfig::satisfies(const Permutation& pi) const {
    if (pi.n() != n()) return false;
    for (int i = 0; i < n(); ++i)
        if (at[pi(i)] != i) return false;
    return true;
}

int PebbleConfig::agreements(const Permutation& pi) const {
    int count = 0;
    for (int i = 0; i < n(); ++i)
        if (at[pi(i)] == i) ++count;
    return count;
}

}  // namespace rvm
