// Linear witnesses over correlations: value = sum_a pi(a) sum_x c(x,a) p(x|a)
// with coefficient tables c in [0,1]. Includes the two-party guess games
// (strict and lazy variants, 16 sign choices each), the three-party cyclic
// guess game, and the majority-conditioned three-party game, together with
// exact maximization over vertex pools and the maximal-violator structure.
#pragma once

#include "antinomy/causality.hpp"
#include "antinomy/numeric.hpp"
#include "antinomy/process.hpp"
#include "antinomy/scenario.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace antinomy {

struct WitnessBounds {
    std::optional<Rat> causal;     // max over causal correlations
    std::optional<Rat> classical;  // max over the classical (consistent) set
    std::optional<Rat> algebraic;  // max over all correlations
};

struct Witness {
    std::string name;
    Scenario scenario;
    NumTable coeff;  // rows = outcome tuples, cols = setting tuples, entries in [0,1]
    NumTable pi;     // 1 x setting tuples, nonnegative, sums to one
    WitnessBounds bounds;

    Witness(std::string name, Scenario sc, NumTable c);             // uniform pi
    Witness(std::string name, Scenario sc, NumTable c, NumTable w);  // explicit pi
};

// value of the witness on a correlation; rational result when both sides are
// rational, double otherwise.
Rat evaluate_exact(const Witness& w, const Correlation& p);   // requires rational inputs
double evaluate(const Witness& w, const Correlation& p);

// Value on a deterministic vertex (always exact).
Rat evaluate_vertex(const Witness& w, const Vertex& v);

// Two-party guess games, settings/outcomes binary, parameterized by sign
// bits (all arithmetic mod 2). Strict variant: win iff
//   x1 + alpha1*a1 + alpha0 = a2  and  x2 + beta1*a2 + beta0 = a1.
// Lazy variant: win iff
//   (a1 + alpha1)(x1 + alpha0 + a2) = 0  and  (a2 + beta1)(x2 + beta0 + a1) = 0.
struct GyniParams {
    int alpha0 = 0, alpha1 = 0, beta0 = 0, beta1 = 0;
    bool operator==(const GyniParams& o) const = default;
};
struct LgyniParams {
    int alpha0 = 0, alpha1 = 0, beta0 = 0, beta1 = 0;
    bool operator==(const LgyniParams& o) const = default;
};

Witness gyni(const GyniParams& prm = {});    // bound attached: causal 1/2
Witness lgyni(const LgyniParams& prm = {});  // bound attached: causal 3/4

// Three parties, binary: win iff (x1,x2,x3) = (a3,a1,a2) or its full
// negation. Bounds attached: causal 1/2, classical 5/8, algebraic 1.
Witness gynin();

// Three parties, binary, majority-conditioned: when maj(a)=0 each party
// must output the previous party's setting, when maj(a)=1 the negation of
// the next party's setting. Bound attached: causal 3/4.
Witness afbw_inequality();

// Exhaustive maximum over a vertex pool; ties break to the lowest vertex
// code. Pool variants: all vertices of the scenario, an explicit list, or
// all process functions of matching dims evaluated under pass-through.
struct MaxResult {
    Rat value;
    std::uint64_t argmax_code = 0;
};
MaxResult max_over_vertices(const Witness& w, std::uint64_t cap = (1ull << 25));
MaxResult max_over(const Witness& w, const std::vector<Vertex>& pool);
MaxResult max_over_causal_vertices(const Witness& w, std::uint64_t cap = (1ull << 25));
MaxResult max_over_process_functions(const Witness& w);

// All vertices attaining the algebraic maximum of the witness. Two-party
// scenarios only (the structure result this feeds is two-party).
std::vector<Vertex> maximal_violators(const Witness& w);

// All lazy-variant parameter tuples whose maximal-violator set contains the
// strict game's unique maximal violator; computed constructively from the
// violator sets. For every strict type exactly four lazy types qualify:
// alpha1' is free and alpha0' = alpha0 + alpha1*(1 + alpha1') (mod 2, beta
// analogous), since the lazy win condition only constrains the guess at
// a1 = 1 + alpha1'.
std::vector<LgyniParams> gyni_lgyni_correspondence(const GyniParams& prm);

}  // namespace antinomy
