// Shared helpers for the test suite: seeded randomness and random instances.
// Everything is deterministic (fixed seeds) so failures reproduce exactly.
#pragma once

#include "antinomy/scenario.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace testutil {

using antinomy::Correlation;
using antinomy::NumericMode;
using antinomy::NumTable;
using antinomy::Rat;
using antinomy::Scenario;
using antinomy::Vertex;

using Rng = std::mt19937_64;

// Random exact correlation: integer weights per column, normalized by the
// column sum.
inline Correlation random_rational_correlation(const Scenario& sc, Rng& rng) {
    NumTable t = NumTable::zeros(NumericMode::rational, sc.outcome_tuples(), sc.setting_tuples());
    std::uniform_int_distribution<int> w(0, 9);
    for (std::size_t c = 0; c < t.cols; ++c) {
        long long sum = 0;
        std::vector<int> col(t.rows);
        for (std::size_t r = 0; r < t.rows; ++r) {
            col[r] = w(rng);
            sum += col[r];
        }
        if (sum == 0) {
            col[0] = 1;
            sum = 1;
        }
        for (std::size_t r = 0; r < t.rows; ++r) t.q(r, c) = Rat(col[r], sum);
    }
    return Correlation(sc, std::move(t));
}

inline Vertex random_vertex(const Scenario& sc, Rng& rng) {
    std::uniform_int_distribution<std::uint32_t> pick(
        0, static_cast<std::uint32_t>(sc.outcome_tuples()) - 1);
    std::vector<std::uint32_t> f(sc.setting_tuples());
    for (auto& v : f) v = pick(rng);
    return Vertex(sc, std::move(f));
}

}  // namespace testutil
