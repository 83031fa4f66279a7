#ifndef RVM_PERMUTATION_HPP
#define RVM_PERMUTATION_HPP

#include <random>
#include <vector>

namespace rvm {

// Permutation of {0..n-1}. pi(i) is the vertex that pebble i must reach:
// pebble i starts on vertex i and the routing goal is pebble i on pi(i).
class Permutation {
public:
    explicit Permutation(int n = 0);             // identity
    explicit Permutation(std::vector<int> image);  // throws unless a bijection

    static Permutation identity(int n);
    static Permutation random(int n, std::mt19937& rng);
    // cycles in the orientation used throughout: within a cycle (v1 v2 ... va)
    // the pebble starting on v1 wants v2, the one on v2 wants v3, and so on.
    // Fixed points may be listed or omitted.
    static Permutation from_cycles(int n, const std::vector<std::vector<int>>& cycles);

    int n() const { return static_cast<int>(image_.size()); }
    int operator()(int i) const { return image_[i]; }
    const std::vector<int>& image() const { return image_; }

    bool is_identity() const;
    Permutation inverse() const;

    bool operator==(const Permutation& other) const { return image_ == other.image_; }

private:
    std::vector<int> image_;
};

// (p * q)(i) = p(q(i)).
Permutation compose(const Permutation& p, const Permutation& q);

// Cycles ordered by smallest contained vertex; each cycle starts at its
// smallest vertex. 1-cycles (fixed points) are included.
struct CycleDecomposition {
    std::vector<std::vector<int>> cycles;
};

CycleDecomposition cycle_decompose(const Permutation& pi);
Permutation permutation_from_decomposition(int n, const CycleDecomposition& dec);

// at[v] = index of the pebble currently on vertex v.
struct PebbleConfig {
    std::vector<int> at;

    static PebbleConfig initial(int n);  // at[v] = v

    int n() const { return static_cast<int>(at.size()); }
    // True when every pebble i sits on pi(i).
    bool satisfies(const Permutation& pi) const;
    // #{ i : pebble i sits on pi(i) }.
    int agreements(const Permutation& pi) const;

    bool operator==(const PebbleConfig& other) const { return at == other.at; }
};

}  // namespace rvm

#endif
