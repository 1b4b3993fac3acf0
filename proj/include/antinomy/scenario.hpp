// Multiparty scenarios, correlations (conditional probability tables), and
// deterministic vertices (function tables). Tuple indexing is lexicographic
// with party 1 most significant throughout the library and all file formats.
#pragma once

#include "antinomy/digraph.hpp"
#include "antinomy/numeric.hpp"

#include <cstdint>
#include <vector>

namespace antinomy {

struct Scenario {
    std::vector<int> settings;  // M_k per party, each >= 1
    std::vector<int> outcomes;  // D_k per party, each >= 1

    Scenario() = default;
    Scenario(std::vector<int> m, std::vector<int> d);
    // Uniform scenario: n parties, m settings and d outcomes each.
    static Scenario uniform(int n, int m, int d);

    int parties() const { return static_cast<int>(settings.size()); }
    std::size_t setting_tuples() const;  // prod_k M_k
    std::size_t outcome_tuples() const;  // prod_k D_k

    // tuple <-> flat index, party 1 most significant
    std::size_t setting_index(const std::vector<int>& a) const;
    std::size_t outcome_index(const std::vector<int>& x) const;
    std::vector<int> setting_tuple(std::size_t idx) const;
    std::vector<int> outcome_tuple(std::size_t idx) const;

    bool operator==(const Scenario& o) const {
        return settings == o.settings && outcomes == o.outcomes;
    }
};

// p(x-vector | a-vector): rows = outcome tuples, columns = setting tuples.
// Entries nonnegative, every column sums to one (exactly in rational mode,
// within kEps in double mode). Immutable after construction.
struct Correlation {
    Scenario scenario;
    NumTable table;

    // Validates shape, nonnegativity and column normalization; throws
    // std::invalid_argument on violation.
    Correlation(Scenario sc, NumTable t);

    std::size_t rows() const { return table.rows; }
    std::size_t cols() const { return table.cols; }
};

// Deterministic strategy: one outcome tuple per setting tuple.
struct Vertex {
    Scenario scenario;
    std::vector<std::uint32_t> f;  // f[settingIndex] = outcomeIndex

    Vertex(Scenario sc, std::vector<std::uint32_t> table);

    // Outcome of party k (0-based) at setting tuple index s.
    int outcome_of(int party, std::size_t s) const;
};

Correlation vertex_to_correlation(const Vertex& v, NumericMode mode = NumericMode::rational);

// Directed edge k -> l iff party l's outcome depends nontrivially on party
// k's setting. Vertices of the parties are 1-based in the returned graph's
// external form; internally 0-based.
Digraph signalling_graph(const Vertex& v);

// Convex mixture of correlations over a common scenario. Weights must be
// nonnegative and sum to one (mode-appropriate exactness). Mixed numeric
// modes promote to double.
struct WeightedCorrelation {
    // exactly one of wq/wd is used depending on the promoted mode
    Rat wq;
    double wd = 0.0;
    NumericMode mode = NumericMode::rational;
    const Correlation* p = nullptr;

    WeightedCorrelation(const Rat& w, const Correlation& c)
        : wq(w), wd(to_double(w)), mode(NumericMode::rational), p(&c) {}
    WeightedCorrelation(double w, const Correlation& c)
        : wq(0), wd(w), mode(NumericMode::dbl), p(&c) {}
};

Correlation mix(const std::vector<WeightedCorrelation>& terms);

// p(x_k | a-vector): D_k rows, one column per full setting tuple.
NumTable marginal(const Correlation& p, int party);

}  // namespace antinomy
