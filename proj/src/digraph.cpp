#include "antinomy/digraph.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace antinomy {

Digraph::Digraph(int n_vertices) : n(n_vertices), adj(static_cast<std::size_t>(n_vertices), 0) {
    if (n_vertices < 0 || n_vertices > 16)
        throw std::invalid_argument("digraph supports 0..16 vertices");
}

Digraph::Digraph(int n_vertices, const std::vector<std::pair<int, int>>& edge_list)
    : Digraph(n_vertices) {
    for (auto [k, l] : edge_list) add_edge(k, l);
}

void Digraph::add_edge(int k, int l) {
    if (k < 0 || k >= n || l < 0 || l >= n) throw std::out_of_range("digraph edge out of range");
    if (k == l) throw std::invalid_argument("digraph forbids self-loops");
    adj[k] |= static_cast<std::uint16_t>(1u << l);
}

std::vector<std::pair<int, int>> Digraph::edges() const {
    std::vector<std::pair<int, int>> e;
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
            if (has_edge(k, l)) e.emplace_back(k, l);
    return e;
}

std::size_t Digraph::edge_count() const {
    std::size_t c = 0;
    for (auto row : adj) c += static_cast<std::size_t>(__builtin_popcount(row));
    return c;
}

// Simple-cycle enumeration: for each start vertex s in increasing order,
// depth-first search through vertices > s only, closing cycles back to s.
// Every simple cycle is found exactly once, anchored at its minimum vertex.
std::vector<std::vector<int>> directed_cycles(const Digraph& g) {
    if (g.n > 12) throw std::invalid_argument("directed_cycles: more than 12 vertices");
    std::vector<std::vector<int>> cycles;
    std::vector<int> path;
    std::uint16_t on_path = 0;

    auto dfs = [&](auto&& self, int start, int u) -> void {
        for (int v = 0; v < g.n; ++v) {
            if (!g.has_edge(u, v)) continue;
            if (v == start) {
                cycles.push_back(path);
            } else if (v > start && !((on_path >> v) & 1)) {
                path.push_back(v);
                on_path |= static_cast<std::uint16_t>(1u << v);
                self(self, start, v);
                on_path &= static_cast<std::uint16_t>(~(1u << v));
                path.pop_back();
            }
        }
    };

    for (int s = 0; s < g.n; ++s) {
        path.assign(1, s);
        on_path = static_cast<std::uint16_t>(1u << s);
        dfs(dfs, s, s);
    }
    std::sort(cycles.begin(), cycles.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    return cycles;
}

bool has_siblings_on_cycles(const Digraph& g, std::vector<int>* witness) {
    const auto cycles = directed_cycles(g);
    for (const auto& cyc : cycles) {
        std::uint16_t members = 0;
        for (int v : cyc) members |= static_cast<std::uint16_t>(1u << v);
        bool ok = false;
        for (int p = 0; p < g.n && !ok; ++p) {
            // two distinct children of p inside the cycle
            const int hits = __builtin_popcount(static_cast<unsigned>(g.adj[p] & members));
            if (hits >= 2) ok = true;
        }
        if (!ok) {
            if (witness) *witness = cyc;
            return false;
        }
    }
    return true;
}

bool is_chordless_soc(const Digraph& g) {
    if (!has_siblings_on_cycles(g)) return false;
    for (const auto& cyc : directed_cycles(g)) {
        std::uint16_t members = 0;
        for (int v : cyc) members |= static_cast<std::uint16_t>(1u << v);
        // the induced subgraph must have exactly the cycle's edges: each
        // member's in-cycle out-neighbourhood is exactly its cycle successor
        for (std::size_t i = 0; i < cyc.size(); ++i) {
            const int u = cyc[i];
            const int succ = cyc[(i + 1) % cyc.size()];
            const std::uint16_t inside = static_cast<std::uint16_t>(g.adj[u] & members);
            if (inside != static_cast<std::uint16_t>(1u << succ)) return false;
        }
    }
    return true;
}

std::uint64_t adjacency_key(const Digraph& g) {
    if (g.n > 8) throw std::invalid_argument("adjacency_key: more than 8 vertices");
    std::uint64_t key = 0;
    for (int k = 0; k < g.n; ++k)
        for (int l = 0; l < g.n; ++l)
            if (g.has_edge(k, l)) key |= 1ull << (k * g.n + l);
    return key;
}

Digraph digraph_from_key(int n, std::uint64_t key) {
    Digraph g(n);
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
            if ((key >> (k * n + l)) & 1) g.add_edge(k, l);
    return g;
}

SignallingClass signalling_class(const Digraph& g) {
    if (g.n > 8) throw std::invalid_argument("signalling_class: more than 8 vertices");
    std::vector<int> perm(static_cast<std::size_t>(g.n));
    std::iota(perm.begin(), perm.end(), 0);
    std::uint64_t best = ~0ull;
    do {
        std::uint64_t key = 0;
        for (int k = 0; k < g.n; ++k)
            for (int l = 0; l < g.n; ++l)
                if (g.has_edge(k, l)) key |= 1ull << (perm[k] * g.n + perm[l]);
        best = std::min(best, key);
    } while (std::next_permutation(perm.begin(), perm.end()));
    SignallingClass c;
    c.n = g.n;
    c.canon = best;
    c.representative = digraph_from_key(g.n, best);
    return c;
}

}  // namespace antinomy
