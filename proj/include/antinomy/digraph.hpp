// Small directed graphs (no self-loops) on at most a dozen vertices:
// simple-cycle enumeration, the siblings-on-cycles condition, its chordless
// refinement, and canonical forms under vertex relabelling.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace antinomy {

struct Digraph {
    int n = 0;
    // adjacency bitmask per vertex: bit l of adj[k] set iff edge k -> l
    std::vector<std::uint16_t> adj;

    Digraph() = default;
    explicit Digraph(int n_vertices);
    // edges are 0-based (k, l) pairs, k != l; duplicates collapse
    Digraph(int n_vertices, const std::vector<std::pair<int, int>>& edges);

    void add_edge(int k, int l);
    bool has_edge(int k, int l) const { return (adj[k] >> l) & 1; }
    std::vector<std::pair<int, int>> edges() const;  // sorted (k, l)
    std::size_t edge_count() const;
    bool operator==(const Digraph& o) const { return n == o.n && adj == o.adj; }
};

// All simple directed cycles, each reported as its vertex sequence starting
// from its smallest vertex; the list is sorted (deterministic). Length-2
// cycles (mutual edges) count. Refuses n > 12.
std::vector<std::vector<int>> directed_cycles(const Digraph& g);

// True iff every simple directed cycle contains two distinct vertices with a
// common parent in the whole graph. Acyclic graphs pass vacuously. When a
// violating cycle exists and `witness` is non-null, it receives the first
// one in enumeration order.
bool has_siblings_on_cycles(const Digraph& g, std::vector<int>* witness = nullptr);

// Siblings-on-cycles with every cycle induced: the subgraph induced by each
// cycle's vertex set is exactly that cycle (no chords, no extra edges).
bool is_chordless_soc(const Digraph& g);

// Isomorphism class under vertex relabelling; canonical key is the
// lexicographically smallest row-major adjacency bit string over all n!
// permutations. Exhaustive, n <= 8.
struct SignallingClass {
    int n = 0;
    std::uint64_t canon = 0;  // n*n bits, row-major, minimal over permutations
    Digraph representative;   // the graph realizing `canon`

    bool operator==(const SignallingClass& o) const { return n == o.n && canon == o.canon; }
    bool operator<(const SignallingClass& o) const {
        return n != o.n ? n < o.n : canon < o.canon;
    }
};

SignallingClass signalling_class(const Digraph& g);

// Row-major adjacency bits of g as an integer key (n <= 8), no relabelling.
std::uint64_t adjacency_key(const Digraph& g);
Digraph digraph_from_key(int n, std::uint64_t key);

}  // namespace antinomy
