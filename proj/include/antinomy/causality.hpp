// Causal structure of deterministic strategies: the recursive definition of
// causal function tables (some party's outcome fixed first, independently of
// everyone else's settings), exhaustive vertex censuses keyed by signalling
// class, and LP membership in the causal polytope.
#pragma once

#include "antinomy/digraph.hpp"
#include "antinomy/hull.hpp"
#include "antinomy/scenario.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace antinomy {

// A vertex is causal iff some party k exists whose outcome depends on its
// own setting only, and for every value of a_k the residual (N-1)-party
// table is causal again; single-party tables are always causal.
bool is_causal_vertex(const Vertex& v);

// All causal vertices of a scenario, by increasing vertex code. Refuses
// scenarios with more than `cap` vertices (default 2^25).
std::vector<Vertex> enumerate_causal_vertices(const Scenario& sc,
                                              std::uint64_t cap = (1ull << 25));

// Encoding of a vertex as an integer: sum over setting indices s of
// f(s) * (outcome_tuples ^ s). Fits 64 bits for every scenario the census
// accepts.
std::uint64_t vertex_code(const Vertex& v);
Vertex vertex_from_code(const Scenario& sc, std::uint64_t code);

// Census of all deterministic vertices, keyed by unlabelled signalling
// class, with the per-labelled-graph refinement kept alongside.
struct CensusRow {
    SignallingClass cls;
    std::uint64_t total = 0;
    std::uint64_t causal = 0;
    std::uint64_t noncausal = 0;
    // labelled adjacency key -> (total, causal) within this class
    std::map<std::uint64_t, std::pair<std::uint64_t, std::uint64_t>> by_graph;
};

struct Census {
    Scenario scenario;
    std::vector<CensusRow> rows;  // sorted by class key
    std::uint64_t total() const;
    const CensusRow* find(const SignallingClass& c) const;
};

// Exhaustive sweep over all (prod D)^(prod M) vertices. Refuses scenarios
// beyond `cap` vertices. `jobs` <= 1 runs inline; more splits the code range
// and merges per-range tallies in order (result independent of jobs).
Census classify_scenario(const Scenario& sc, int jobs = 0,
                         std::uint64_t cap = (1ull << 25));

// Evidence returned by causal_membership: a convex decomposition over causal
// vertices, or a separating functional showing non-membership.
struct CausalCertificate {
    bool member = false;
    NumericMode mode = NumericMode::rational;
    // member: weights over causal vertex codes
    std::vector<std::pair<std::uint64_t, Rat>> decompq;
    std::vector<std::pair<std::uint64_t, double>> decompd;
    // non-member: functional y over table cells with y.v <= 0 for every
    // causal vertex v and y.p > 0
    std::vector<Rat> sepq;
    std::vector<double> sepd;
};

CausalCertificate causal_membership(const Correlation& p);

// Membership of p in the hull of an explicit list of vertices (e.g. the
// non-signalling vertices only).
CausalCertificate membership_in_vertices(const Correlation& p,
                                         const std::vector<Vertex>& pool);

}  // namespace antinomy
